"""Angular Fourier analysis of sinograms and Fourier synthesis of images.

Orders are stored in the FFT-shifted range ``l = -M/2, ..., M/2 - 1``; row
``l + M/2`` of a coefficient array belongs to order ``l``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forward import Sinogram
from .grids import DEFAULT_MARGIN, ImageGrid, pixel_centers


def orders_for(M: int) -> np.ndarray:
    return np.arange(-(M // 2), M - M // 2)


@dataclass(frozen=True)
class HarmonicTable:
    """``coefficients[l + M/2, i] ~ int_0^2pi g(alpha, arcsin s_i) exp(-i l alpha) dalpha``."""

    coefficients: np.ndarray
    m: int = 0

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def M(self) -> int:
        return self.coefficients.shape[0]

    @property
    def N(self) -> int:
        return self.coefficients.shape[1] - 1

    @property
    def orders(self) -> np.ndarray:
        return orders_for(self.M)

    @property
    def s(self) -> np.ndarray:
        return np.arange(self.N + 1) / self.N

    def order(self, l: int) -> np.ndarray:
        return self.coefficients[l + self.M // 2]


@dataclass(frozen=True)
class RadialProfileSet:
    """Radial coefficients ``f_l(rho_j)`` at midpoints ``rho_j = (j + 1/2) / N``."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def M(self) -> int:
        return self.coefficients.shape[0]

    @property
    def N(self) -> int:
        return self.coefficients.shape[1]

    @property
    def orders(self) -> np.ndarray:
        return orders_for(self.M)

    @property
    def rho(self) -> np.ndarray:
        return (np.arange(self.N) + 0.5) / self.N

    def order(self, l: int) -> np.ndarray:
        return self.coefficients[l + self.M // 2]


def decompose(sino: Sinogram) -> HarmonicTable:
    """FFT over the vertex angle, scaled by ``2 pi / M`` to approximate the integral."""
    M = sino.M
    if M & (M - 1):
        raise ValueError("number of vertices must be a power of two")
    coeffs = np.fft.fftshift(np.fft.fft(sino.values, axis=0), axes=0) * (2.0 * np.pi / M)
    return HarmonicTable(coeffs, sino.m)


def recompose(table: HarmonicTable) -> np.ndarray:
    """Inverse of :func:`decompose`: the real-or-complex sinogram rows."""
    c = np.fft.ifftshift(table.coefficients, axes=0)
    return np.fft.ifft(c, axis=0) * (table.M / (2.0 * np.pi))


def _interp_weights(r: np.ndarray, N: int):
    """Index and weight for linear interpolation between midpoint samples.

    Below ``rho_0`` and between ``rho_(N-1)`` and 1 the nearest sample is held;
    radii beyond 1 get weight 0.
    """
    t = np.clip(r * N - 0.5, 0.0, N - 1.0)
    j = np.minimum(t.astype(np.intp), max(N - 2, 0))
    w = t - j
    alive = (r <= 1.0).astype(float)
    return j, w, alive


def _synthesize_complex(profiles: RadialProfileSet, x: np.ndarray, y: np.ndarray,
                        chunk: int = 8192) -> np.ndarray:
    P = profiles.coefficients
    M, N = P.shape
    orders = profiles.orders.astype(float)
    # the unpaired Nyquist order contributes a cosine
    nyquist = M % 2 == 0 and M > 1
    r = np.hypot(x, y)
    alpha = np.arctan2(y, x)
    out = np.empty(r.shape, dtype=complex)
    for start in range(0, r.size, chunk):
        sl = slice(start, start + chunk)
        j, w, alive = _interp_weights(r[sl], N)
        F = (P[:, j] * (1.0 - w) + P[:, np.minimum(j + 1, N - 1)] * w) * alive
        phase = np.exp(1j * orders[:, None] * alpha[sl][None, :])
        if nyquist:
            phase[0] = np.cos(orders[0] * alpha[sl])
        out[sl] = (F * phase).sum(axis=0) / (2.0 * np.pi)
    return out


def synthesize(profiles: RadialProfileSet, size: int, margin: float = DEFAULT_MARGIN,
               return_imag: bool = False):
    """Evaluate ``(1 / 2pi) sum_l f_l(r) exp(i l alpha)`` at pixel centers.

    Pixels at radius ``>= 1 - margin`` are set to zero so the result keeps the
    image support invariant; pass ``margin=0`` to only clear ``r >= 1``.  With
    ``return_imag`` the discarded imaginary part is returned as well, which
    vanishes for Hermitian-symmetric profiles.
    """
    if size < 16:
        raise ValueError("grid size must be at least 16")
    c = pixel_centers(size)
    X, Y = np.meshgrid(c, c)
    z = _synthesize_complex(profiles, X.ravel(), Y.ravel()).reshape(X.shape)
    outside = np.hypot(X, Y) >= 1.0 - margin
    z[outside] = 0.0
    grid = ImageGrid(z.real, margin)
    return (grid, z.imag) if return_imag else grid
