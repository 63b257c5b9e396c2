import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from vline_tomo.forward import Sinogram, vline_forward
from vline_tomo.grids import RadialProfile, render_harmonic_phantom, rotate90
from vline_tomo.harmonics import (HarmonicTable, RadialProfileSet, decompose, orders_for, recompose,
                                  synthesize)
from vline_tomo.recon import relative_l2


def test_orders():
    np.testing.assert_array_equal(orders_for(8), [-4, -3, -2, -1, 0, 1, 2, 3])


def test_constant_rows():
    table = decompose(Sinogram(np.full((16, 5), 3.0)))
    np.testing.assert_allclose(table.order(0), 2 * np.pi * 3.0, rtol=1e-14)
    others = np.delete(table.coefficients, 8, axis=0)
    assert np.abs(others).max() < 1e-12


def test_pure_cosine():
    M = 32
    phi = 2 * np.pi * np.arange(M) / M
    table = decompose(Sinogram(np.repeat(np.cos(3 * phi)[:, None], 4, axis=1)))
    np.testing.assert_allclose(table.order(3), np.pi, atol=1e-12)
    np.testing.assert_allclose(table.order(-3), np.pi, atol=1e-12)
    mask = np.ones(M, bool)
    mask[[3 + 16, -3 + 16]] = False
    assert np.abs(table.coefficients[mask]).max() < 1e-12


def test_rejects_non_power_of_two():
    with pytest.raises(ValueError):
        decompose(Sinogram(np.zeros((12, 5))))


@settings(max_examples=30, deadline=None)
@given(values=arrays(np.float64, (16, 6), elements=st.floats(-10, 10)))
def test_parseval_round_trip_and_symmetry(values):
    sino = Sinogram(values)
    table = decompose(sino)
    M = sino.M
    lhs = (2 * np.pi / M) * (values**2).sum(axis=0)
    rhs = (np.abs(table.coefficients) ** 2).sum(axis=0) / (2 * np.pi)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-10)
    np.testing.assert_allclose(recompose(table).real, values, atol=1e-12)
    assert np.abs(recompose(table).imag).max() < 1e-12
    for l in range(1, M // 2):
        np.testing.assert_allclose(table.order(-l), np.conj(table.order(l)), atol=1e-12)


def test_table_metadata():
    t = HarmonicTable(np.zeros((8, 11)), m=1)
    assert (t.M, t.N, t.m) == (8, 10, 1)
    assert t.s[-1] == 1.0
    p = RadialProfileSet(np.zeros((8, 10)))
    assert p.rho[0] == pytest.approx(0.05)


def test_zero_profiles_give_zero_image():
    img = synthesize(RadialProfileSet(np.zeros((8, 20))), 32)
    assert np.all(img.values == 0.0)


def test_order_zero_image_is_rotation_invariant():
    P = np.zeros((8, 30), complex)
    P[4] = np.linspace(1, 0, 30)
    img = synthesize(RadialProfileSet(P), 64)
    np.testing.assert_array_equal(rotate90(img).values, img.values)


def test_synthesize_clears_outside():
    P = np.ones((4, 10), complex)
    img = synthesize(RadialProfileSet(P), 40)
    assert np.all(img.values[img.outside_support()] == 0.0)
    with pytest.raises(ValueError):
        synthesize(RadialProfileSet(P), 8)


def test_synthesize_hermitian_profiles_are_real():
    rng = np.random.default_rng(5)
    M, N = 16, 12
    P = np.zeros((M, N), complex)
    for l in range(1, M // 2):
        P[M // 2 + l] = rng.normal(size=N) + 1j * rng.normal(size=N)
        P[M // 2 - l] = np.conj(P[M // 2 + l])
    P[M // 2] = rng.normal(size=N)
    P[0] = rng.normal(size=N)
    _, imag = synthesize(RadialProfileSet(P), 48, return_imag=True)
    assert np.abs(imag).max() < 1e-10


def test_round_trip_through_analytic_profiles():
    size, M, N = 201, 64, 100
    profile = RadialProfile("bump", 0.6)
    re, _ = render_harmonic_phantom(2, profile, size)
    table = decompose(vline_forward(re, M, N))
    # p(r) cos(2 alpha) has f_(+-2) = pi p(rho), all other orders zero
    P = np.zeros((M, N), complex)
    rho = (np.arange(N) + 0.5) / N
    P[M // 2 + 2] = P[M // 2 - 2] = np.pi * profile(rho)
    img = synthesize(RadialProfileSet(P), size)
    assert relative_l2(img, re) < 0.05
    # data side: only orders +-2 survive the angular transform
    energy = np.abs(table.coefficients) ** 2
    assert energy[[M // 2 + 2, M // 2 - 2]].sum() / energy.sum() > 0.999


def test_interpolation_is_linear_between_midpoints():
    N = 10
    P = np.zeros((2, N), complex)
    P[1] = np.arange(N)
    profiles = RadialProfileSet(P)
    from vline_tomo.harmonics import _synthesize_complex

    r = np.array([0.0, 0.05, 0.1, 0.3, 0.95, 0.999, 1.2])
    vals = _synthesize_complex(profiles, r, np.zeros_like(r)).real * 2 * np.pi
    np.testing.assert_allclose(vals, [0, 0, 0.5, 2.5, 9, 9, 0], atol=1e-12)
