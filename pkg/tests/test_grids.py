import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vline_tomo.grids import (SMILEY, Annulus, Disk, Harmonic, ImageGrid, PhantomSpec, RadialProfile,
                              SupportError, disk_phantom, harmonic_values, pixel_centers,
                              render_harmonic_phantom, render_phantom, rotate90, sample_bilinear,
                              spec_from_dict, spec_to_dict)


def brute_force_smiley(size):
    """Pixel-by-pixel rasterization of the smiley constants, no numpy."""
    def inside(x, y, cx, cy, r):
        return (x - cx) ** 2 + (y - cy) ** 2 < r * r

    values = []
    for q in range(size):
        y = -1 + (2 * q + 1) / size
        for p in range(size):
            x = -1 + (2 * p + 1) / size
            v = 0.0
            if inside(x, y, 0, 0, 0.75):
                v += 1.0
            if inside(x, y, -0.27, 0.25, 0.12):
                v += 1.0
            if inside(x, y, 0.27, 0.25, 0.12):
                v += 1.0
            r2 = x * x + y * y
            theta = math.atan2(y, x) % (2 * math.pi)
            if 0.38**2 <= r2 < 0.5**2 and 1.15 * math.pi <= theta <= 1.85 * math.pi:
                v -= 0.7
            if math.hypot(x, y) >= 0.95:
                v = 0.0
            values.append(v)
    return values


def test_smiley_nonzero_count_matches_brute_force():
    size = 301
    ref = brute_force_smiley(size)
    grid = render_phantom(SMILEY, size)
    assert int(np.count_nonzero(grid.values)) == sum(1 for v in ref if v != 0.0)
    np.testing.assert_allclose(grid.values.ravel(), ref, atol=1e-15)


def test_smiley_is_nonnegative():
    assert render_phantom(SMILEY, 201, supersample=4).values.min() >= 0.0


def test_disk_pixels():
    grid = disk_phantom(0.5, size=301)
    c = pixel_centers(301)
    assert c[150] == 0.0
    assert grid.values[150, 150] == 1.0
    p = int(np.argmin(np.abs(c - 0.9)))
    assert grid.values[150, p] == 0.0


def test_overlap_is_additive():
    spec = PhantomSpec((Disk((0.0, 0.0), 0.3, 1.0), Disk((0.1, 0.0), 0.3, 2.0)))
    assert spec(0.05, 0.0) == 3.0
    assert render_phantom(spec, 101).values[50, 50] == 3.0


def test_pixel_centers():
    np.testing.assert_allclose(pixel_centers(4), [-0.75, -0.25, 0.25, 0.75])


def test_primitive_outside_margin_rejected():
    with pytest.raises(SupportError, match="outside the support"):
        render_phantom(PhantomSpec((Disk((0.5, 0.0), 0.46),)), 64)
    with pytest.raises(SupportError):
        render_harmonic_phantom(2, RadialProfile("bump", 0.96), 64)


def test_unknown_profile_rejected():
    with pytest.raises(ValueError, match="unknown radial profile"):
        render_harmonic_phantom(1, "gaussian", 64)


def test_small_grid_rejected():
    with pytest.raises(ValueError):
        render_phantom(SMILEY, 8)


def test_image_grid_is_read_only():
    grid = disk_phantom(0.3, size=32)
    with pytest.raises(ValueError):
        grid.values[0, 0] = 1.0


def test_check_support_flags_nonzero_corner():
    v = np.zeros((32, 32))
    v[0, 0] = 1.0
    with pytest.raises(SupportError):
        ImageGrid(v).check_support()


@settings(max_examples=40, deadline=None)
@given(cx=st.floats(-0.4, 0.4), cy=st.floats(-0.4, 0.4), r=st.floats(0.05, 0.5),
       amp=st.floats(-3, 3), size=st.integers(16, 80))
def test_render_respects_support(cx, cy, r, amp, size):
    spec = PhantomSpec((Disk((cx, cy), r, amp),))
    if spec.primitives[0].extent() >= 0.95:
        return
    grid = render_phantom(spec, size)
    assert np.abs(grid.values[grid.outside_support()]).max(initial=0.0) == 0.0


def test_sample_bilinear_basics():
    rng = np.random.default_rng(0)
    grid = ImageGrid(rng.normal(size=(20, 20)), margin=0.0)
    c = pixel_centers(20)
    assert sample_bilinear(grid, c[3], c[7]) == grid.values[7, 3]
    assert sample_bilinear(grid, 2.0, 0.0) == 0.0
    mid = sample_bilinear(grid, 0.5 * (c[3] + c[4]), c[7])
    assert mid == pytest.approx(0.5 * (grid.values[7, 3] + grid.values[7, 4]), abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(a=st.floats(-5, 5), b=st.floats(-5, 5), c0=st.floats(-5, 5),
       fx=st.floats(0, 1), fy=st.floats(0, 1), cell=st.integers(0, 14))
def test_sample_bilinear_exact_on_affine(a, b, c0, fx, fy, cell):
    size = 16
    c = pixel_centers(size)
    X, Y = np.meshgrid(c, c)
    grid = ImageGrid(a * X + b * Y + c0, margin=0.0)
    x = c[cell] + fx * (c[cell + 1] - c[cell])
    y = c[cell] + fy * (c[cell + 1] - c[cell])
    assert sample_bilinear(grid, x, y) == pytest.approx(a * x + b * y + c0, abs=1e-12)


def test_harmonic_phantom_order_zero_equals_disk():
    re, im = render_harmonic_phantom(0, RadialProfile("constant", 0.5), 301)
    np.testing.assert_array_equal(re.values, disk_phantom(0.5, size=301).values)
    assert np.all(im.values == 0.0)


def test_harmonic_phantom_order_one_is_odd():
    re, im = render_harmonic_phantom(1, RadialProfile("bump", 0.6), 64)
    np.testing.assert_allclose(re.values, -re.values[::-1, ::-1], atol=1e-15)
    np.testing.assert_allclose(im.values, -im.values[::-1, ::-1], atol=1e-15)


def test_harmonic_phantom_order_zero_rotation_invariant():
    re, _ = render_harmonic_phantom(0, RadialProfile("bump", 0.7), 65)
    np.testing.assert_array_equal(rotate90(re).values, re.values)


def test_ring_spectrum_concentrates_at_order():
    # one ring of the analytic mode, sampled uniformly in angle
    profile = RadialProfile("bump", 0.8)
    alpha = 2 * np.pi * np.arange(64) / 64
    z = harmonic_values(2, profile, 0.4 * np.cos(alpha), 0.4 * np.sin(alpha))
    spec = np.fft.fft(z) / 64
    leak = np.abs(np.delete(spec, 2)).max() / np.abs(spec[2])
    assert leak < 1e-6


def test_bump_profile():
    p = RadialProfile("bump", 0.5)
    assert p(0.0) == 1.0
    assert p(0.5) == 0.0 and p(0.7) == 0.0
    assert 0 < p(0.25) < 1


def test_rotated_spec_matches_rotated_coordinates():
    spec = PhantomSpec((Disk((0.3, 0.1), 0.2), Harmonic(3, RadialProfile("bump", 0.3), 1.0, 0.2, (0.1, -0.4)),
                        Annulus((0.1, 0.0), 0.2, 0.3, 1.0, 0.5, 2.0)))
    angle = 0.7
    rng = np.random.default_rng(3)
    x, y = rng.uniform(-0.9, 0.9, (2, 500))
    c, s = np.cos(angle), np.sin(angle)
    # (f o Q^T)(x) evaluated directly
    want = spec(c * x + s * y, -s * x + c * y)
    got = spec.rotated(angle)(x, y)
    mismatch = np.abs(got - want) > 1e-12
    # only points sitting on a discontinuity may disagree
    assert mismatch.mean() < 0.01


def test_spec_json_round_trip():
    spec = PhantomSpec((Disk((0.1, 0.2), 0.3, 1.5), SMILEY.primitives[3],
                        Harmonic(2, RadialProfile("constant", 0.4), 0.5, 0.1, (0.1, 0.0))), margin=0.1)
    again = spec_from_dict(json.loads(json.dumps(spec_to_dict(spec))))
    assert again == spec


def test_spec_json_unknown_type():
    with pytest.raises(ValueError):
        spec_from_dict({"primitives": [{"type": "square"}]})
