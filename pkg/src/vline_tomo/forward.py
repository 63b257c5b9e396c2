"""Discrete weighted V-line transform with vertices on the unit circle.

For vertex ``z_k = (cos phi_k, sin phi_k)`` and opening parameter
``s_i = sin(psi_i)`` the transform integrates along the two rays
``z_k - r (cos(phi_k - sigma psi_i), sin(phi_k - sigma psi_i))``,
``sigma = +-1``, with weight ``r^m``.  The module also provides 1D
quadratures of the radial identities for a single angular mode in ``n``
dimensions, which serve as oracles for the discrete pipeline.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numba
import numpy as np
from scipy import integrate

from .grids import ImageGrid
from .kernels import KernelSpec, kernel_K
from .special import gegenbauer, sphere_area

RAY_LENGTH = 2.0


@dataclass(frozen=True)
class Sinogram:
    """Samples ``values[k, i]`` of the transform at ``(phi_k, arcsin(i / N))``."""

    values: np.ndarray
    m: int = 0

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 2 or v.shape[1] < 2:
            raise ValueError("sinogram values must have shape (M, N + 1)")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def M(self) -> int:
        return self.values.shape[0]

    @property
    def N(self) -> int:
        return self.values.shape[1] - 1

    @property
    def phi(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.M) / self.M

    @property
    def s(self) -> np.ndarray:
        return np.arange(self.N + 1) / self.N

    @property
    def psi(self) -> np.ndarray:
        return np.arcsin(self.s)


def _is_power_of_two(k: int) -> bool:
    return k > 0 and (k & (k - 1)) == 0


def vline_forward(grid: ImageGrid, M: int, N: int, m: int = 0, step: float | None = None,
                  workers: int = 1) -> Sinogram:
    """Weighted V-line transform by the composite trapezoidal rule.

    Parameters
    ----------
    grid : ImageGrid
        Image, bilinearly interpolated between pixel centers.
    M : int
        Number of vertices, a power of two.
    N : int
        Number of opening-angle intervals; ``s_i = i / N`` for ``i = 0..N``.
    m : int
        Exponent of the distance-to-vertex weight ``r^m``.
    step : float, optional
        Ray quadrature spacing, default ``1 / (2 * width)``.  Rays stop at
        ``r = 2``, the longest chord of the unit disk.
    workers : int
        Threads over vertices.  Each row is summed in a fixed order, so the
        result does not depend on this value.
    """
    if not _is_power_of_two(M):
        raise ValueError(f"number of vertices M={M} must be a power of two")
    if N < 8:
        raise ValueError("need at least 8 opening-angle intervals")
    if step is None:
        step = 1.0 / (2 * grid.width)
    if not step > 0:
        raise ValueError("ray step must be positive")
    grid.check_support()

    n_steps = int(np.ceil(RAY_LENGTH / step - 1e-9))
    h = RAY_LENGTH / n_steps
    r = h * np.arange(n_steps + 1)
    weights = np.full(n_steps + 1, h)
    weights[[0, -1]] = 0.5 * h
    if m != 0:
        with np.errstate(divide="ignore"):
            rm = r**m
        # vertices sit outside supp f, so the r = 0 node never contributes
        rm[0] = 0.0 if m < 0 else rm[0]
        weights = weights * rm

    psi = np.arcsin(np.arange(N + 1) / N)
    phi = 2.0 * np.pi * np.arange(M) / M
    values = np.ascontiguousarray(grid.values)
    out = np.empty((M, N + 1))

    def rows(ks):
        _ray_rows(values, phi, psi, r, weights, np.asarray(ks, dtype=np.int64), out)

    if workers > 1:
        chunks = np.array_split(np.arange(M), workers)
        with ThreadPoolExecutor(workers) as pool:
            list(pool.map(rows, chunks))
    else:
        rows(np.arange(M))
    return Sinogram(out, m)


@numba.njit(cache=True, nogil=True)
def _ray_rows(values, phi, psi, r, weights, ks, out):
    ny, nx = values.shape
    for k in ks:
        zx = np.cos(phi[k])
        zy = np.sin(phi[k])
        for i in range(psi.shape[0]):
            acc = 0.0
            for sigma in (1.0, -1.0):
                ang = phi[k] - sigma * psi[i]
                cx = np.cos(ang)
                cy = np.sin(ang)
                ray = 0.0
                for j in range(r.shape[0]):
                    # continuous pixel index, center p at u = p
                    u = (zx - r[j] * cx + 1.0) * (0.5 * nx) - 0.5
                    v = (zy - r[j] * cy + 1.0) * (0.5 * ny) - 0.5
                    if u < 0.0 or v < 0.0 or u > nx - 1 or v > ny - 1:
                        continue
                    i0 = min(int(u), nx - 2)
                    j0 = min(int(v), ny - 2)
                    fu = u - i0
                    fv = v - j0
                    top = values[j0, i0] * (1.0 - fu) + values[j0, i0 + 1] * fu
                    bottom = values[j0 + 1, i0] * (1.0 - fu) + values[j0 + 1, i0 + 1] * fu
                    ray += weights[j] * (top * (1.0 - fv) + bottom * fv)
                acc += ray
            out[k, i] = acc


# -- single-mode radial identities ---------------------------------------------------


def _support_of(f_radial) -> float:
    return float(getattr(f_radial, "support", 1.0))


def _breaks_of(f_radial) -> tuple:
    return tuple(getattr(f_radial, "breakpoints", ()))


def _quad(func, a, b, points, tol):
    pts = sorted(p for p in set(points) if a < p < b)
    val, err, info, *msg = integrate.quad(func, a, b, points=pts or None, epsabs=tol,
                                          epsrel=tol, limit=500, full_output=1)
    if msg:
        raise ArithmeticError(f"quadrature did not converge: {msg[0]}")
    return float(val)


def glk_alpha_integral(f_radial, n: int, m: int, l: int, psi: float, tol: float = 1e-10) -> float:
    """Mode-``l`` transform coefficient as an integral over the cone angle.

    ``|S^(n-2)| int_0^(pi - psi) f(sin psi / sin(a + psi))
    sin(psi)^(n-1) sin(a)^(m+n-2) / sin(a + psi)^(m+n) C_l(cos a) da``.
    Only the stretch of ``a`` where the argument of ``f`` lies inside the
    support of ``f_radial`` is integrated.
    """
    if not 0.0 < psi < np.pi / 2:
        raise ValueError("psi must lie in (0, pi/2)")
    s = np.sin(psi)
    b = _support_of(f_radial)
    if s >= b:
        return 0.0
    mu = (n - 2) / 2.0
    q = m + n - 2

    def integrand(a):
        den = np.sin(a + psi)
        rho = s / den
        return (float(f_radial(rho)) * s ** (n - 1) * np.sin(a) ** q / den ** (m + n)
                * gegenbauer(l, mu, np.cos(a)))

    lo = np.arcsin(s / b) - psi
    hi = np.pi - np.arcsin(s / b) - psi
    pts = [np.pi / 2 - psi]
    for c in _breaks_of(f_radial):
        if s < c < b:
            pts += [np.arcsin(s / c) - psi, np.pi - np.arcsin(s / c) - psi]
    return sphere_area(n - 2) * _quad(integrand, lo, hi, pts, tol)


def glk2_rho_integral(f_radial, n: int, m: int, l: int, psi: float, tol: float = 1e-10) -> float:
    """Mode-``l`` transform coefficient as a generalized Abel integral in ``rho``.

    ``|S^(n-2)| sin(psi)^(-m) int_(sin psi)^1 f(rho) rho K_l(psi, rho) /
    sqrt(rho^2 - sin^2 psi) drho``, evaluated after ``rho = sqrt(sin^2 psi + u^2)``,
    which turns ``rho drho / sqrt(rho^2 - sin^2 psi)`` into ``du``.
    """
    if not 0.0 < psi < np.pi / 2:
        raise ValueError("psi must lie in (0, pi/2)")
    s = np.sin(psi)
    b = _support_of(f_radial)
    if s >= b:
        return 0.0
    spec = KernelSpec(n, m, abs(l))

    def integrand(u):
        rho = np.sqrt(s * s + u * u)
        return float(f_radial(rho)) * kernel_K(spec, psi, rho)

    pts = [np.sqrt(c * c - s * s) for c in _breaks_of(f_radial) if s < c < b]
    return sphere_area(n - 2) * s ** (-m) * _quad(integrand, 0.0, np.sqrt(b * b - s * s), pts, tol)


# -- noise and norms -----------------------------------------------------------


def add_noise(sino: Sinogram, rel_level: float, seed: int) -> Sinogram:
    """Add white Gaussian noise scaled to ``||z|| = rel_level * ||g||`` exactly."""
    if rel_level < 0:
        raise ValueError("noise level must be nonnegative")
    if rel_level == 0:
        return sino
    g = sino.values
    norm_g = np.linalg.norm(g)
    if norm_g == 0.0:
        raise ValueError("cannot scale relative noise for an all-zero sinogram")
    z = np.random.default_rng(seed).standard_normal(g.shape)
    z *= rel_level * norm_g / np.linalg.norm(z)
    return Sinogram(g + z, sino.m)


def psi_weights(N: int) -> np.ndarray:
    """Trapezoidal weights on the nonuniform nodes ``psi_i = arcsin(i / N)``."""
    psi = np.arcsin(np.arange(N + 1) / N)
    d = np.diff(psi)
    w = np.zeros(N + 1)
    w[:-1] += 0.5 * d
    w[1:] += 0.5 * d
    return w


@dataclass
class NormReport:
    L1_image: float
    L2_image: float
    L1_sino: float
    L2_sino: float
    ratio_L1: float
    vertex_ratio_L1: float

    def as_dict(self):
        return dict(self.__dict__)


def norm_report(grid: ImageGrid, sino: Sinogram) -> NormReport:
    """Riemann-sum norms of an image and its transform.

    The sinogram measure is ``(2 pi / M) dpsi`` with trapezoidal weights in
    ``psi``.  ``vertex_ratio_L1`` is the largest per-vertex ``L1`` norm over
    ``psi`` divided by the image ``L1`` norm.
    """
    area = grid.pixel_size**2
    L1_image = float(np.abs(grid.values).sum() * area)
    L2_image = float(np.sqrt((grid.values**2).sum() * area))
    w = psi_weights(sino.N)
    per_vertex = np.abs(sino.values) @ w
    dphi = 2.0 * np.pi / sino.M
    L1_sino = float(per_vertex.sum() * dphi)
    L2_sino = float(np.sqrt(((sino.values**2) @ w).sum() * dphi))
    if L1_image == 0.0:
        ratio = vertex_ratio = 0.0 if L1_sino == 0.0 else float("inf")
    else:
        ratio = L1_sino / L1_image
        vertex_ratio = float(per_vertex.max()) / L1_image
    return NormReport(L1_image, L2_image, L1_sino, L2_sino, ratio, vertex_ratio)


def oracle_table(f_radial, dims=(2, 3), weights=(0, 1), orders=range(7), n_angles: int = 20):
    """Rows ``(n, m, l, psi, alpha_form, rho_form, abs_diff)`` comparing the two
    radial identities on ``n_angles`` opening angles spread over the support."""
    b = _support_of(f_radial)
    psis = np.arcsin(np.linspace(0.02, 0.98, n_angles) * min(b, 1.0))
    rows = []
    for n in dims:
        for m in weights:
            for l in orders:
                for psi in psis:
                    a = glk_alpha_integral(f_radial, n, m, l, psi)
                    r = glk2_rho_integral(f_radial, n, m, l, psi)
                    rows.append((n, m, l, float(psi), a, r, abs(a - r)))
    return rows
