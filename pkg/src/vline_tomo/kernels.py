"""Kernels of the generalized Abel equations and checks of their diagonal zeros.

Two equivalent kernels describe the radial equations for the order ``l``
coefficients:

* ``kernel_K(spec, psi, rho)`` in opening angle / radius variables,
* ``kernel_F(spec, t, s)`` after ``t = cos^2 psi`` and ``s = 1 - rho^2``,

related by ``K(psi, rho) = sin(psi)^q * F(1 - sin^2 psi, 1 - rho^2)`` with
``q = m + n - 2``.  On the diagonal ``F(s, s) = 2 s^(q/2) C(sqrt(1 - s))``,
which vanishes at the Gegenbauer roots.  ``diagonal_zeros`` locates those
roots and ``check_uniqueness_condition`` measures the gradient of ``F`` there
by finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .special import gegenbauer, gegenbauer_deriv

DEFAULT_ZERO_SEARCH_START = 0.05


@dataclass(frozen=True)
class KernelSpec:
    """Dimension ``n``, radial weight exponent ``m`` and angular order ``l``."""

    n: int = 2
    m: int = 0
    l: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("dimension n must be at least 2")
        if self.l < 0:
            raise ValueError("order l must be nonnegative; kernels depend on |l| only")

    @property
    def q(self) -> int:
        return self.m + self.n - 2

    @property
    def mu(self) -> float:
        return (self.n - 2) / 2.0

    @property
    def uniqueness_regime(self) -> bool:
        return self.m > -(self.n + 1) / 2.0

    def for_order(self, l: int) -> "KernelSpec":
        return KernelSpec(self.n, self.m, abs(int(l)))


def _power(base, q):
    # 0 ** 0 == 1 is what the kernels need
    return np.power(base, q) if q != 0 else np.ones_like(base)


def kernel_K(spec: KernelSpec, psi, rho):
    """Kernel ``K_l(psi, rho)`` for ``0 < psi < pi/2`` and ``sin(psi) <= rho``.

    ``rho^q * sum_sigma sigma^l sin(beta_sigma)^q C(cos(beta_sigma))`` with
    ``beta_sigma = arcsin(sin(psi) / rho) - sigma * psi``.  For ``n = 2`` the
    Gegenbauer factor is ``cos(l * beta_sigma)``.
    """
    psi = np.asarray(psi, dtype=float)
    rho = np.asarray(rho, dtype=float)
    s = np.sin(psi)
    if np.any(rho < s * (1.0 - 1e-14) - 1e-300):
        raise ValueError("kernel_K requires rho >= sin(psi)")
    base = np.arcsin(np.minimum(s / rho, 1.0))
    q = spec.q
    out = 0.0
    for sigma in (1, -1):
        beta = base - sigma * psi
        if spec.n == 2:
            ang = np.cos(spec.l * beta)
        else:
            ang = gegenbauer(spec.l, spec.mu, np.clip(np.cos(beta), -1.0, 1.0))
        out = out + sigma**spec.l * _power(np.sin(beta), q) * ang
    out = _power(rho, q) * out
    return out if np.ndim(out) else float(out)


def kernel_K_2d(l, s, rho):
    """Cosine form of the ``n = 2, m = 0`` kernel written in ``s = sin(psi)``."""
    s = np.asarray(s, dtype=float)
    base = np.arcsin(np.minimum(s / np.asarray(rho, dtype=float), 1.0))
    a = np.arcsin(s)
    return np.cos(l * (base - a)) + (-1) ** l * np.cos(l * (base + a))


def kernel_F(spec: KernelSpec, t, s):
    """Kernel ``F_l(t, s)`` on ``0 <= s <= t <= 1``, ``s < 1``."""
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    if np.any(s > t) or np.any(s >= 1.0):
        raise ValueError("kernel_F requires s <= t and s < 1")
    rt = np.sqrt(t)
    h = np.sqrt(t - s)
    scale = np.sqrt(1.0 - s)
    q = spec.q
    out = 0.0
    for sigma in (1, -1):
        arg = np.clip((rt * h + sigma * (1.0 - t)) / scale, -1.0, 1.0)
        out = out + sigma**spec.l * _power(rt - sigma * h, q) * gegenbauer(spec.l, spec.mu, arg)
    return out if np.ndim(out) else float(out)


def kernel_F_diagonal(spec: KernelSpec, s):
    """Closed form ``v(s) = F(s, s) = 2 s^(q/2) C(sqrt(1 - s))``."""
    s = np.asarray(s, dtype=float)
    out = 2.0 * _power(np.sqrt(s), spec.q) * gegenbauer(spec.l, spec.mu, np.sqrt(1.0 - s))
    return out if np.ndim(out) else float(out)


def kernel_F_diagonal_deriv(spec: KernelSpec, s):
    """Derivative ``v'(s)`` of the diagonal, product rule plus chain rule."""
    s = float(s)
    x = np.sqrt(1.0 - s)
    q = spec.q
    c = gegenbauer(spec.l, spec.mu, x)
    dc = gegenbauer_deriv(spec.l, spec.mu, x, 1)
    first = q * s ** (q / 2.0 - 1.0) * c if q != 0 else 0.0
    return first - s ** (q / 2.0) * dc / x


def diagonal_zeros(spec: KernelSpec, a: float = DEFAULT_ZERO_SEARCH_START,
                   samples: int = 20001) -> list:
    """Roots of ``s -> F(s, s)`` in ``[a, 1)``, sorted ascending.

    The sign of ``C(sqrt(1 - s))`` is scanned on a uniform grid, each sign
    change is refined to ``1e-12``, and every root is checked to be simple.
    """
    if not 0.0 < a < 1.0:
        raise ValueError("search start a must lie in (0, 1)")
    if spec.l == 0:
        return []

    def c_of(s):
        return gegenbauer(spec.l, spec.mu, np.sqrt(1.0 - np.asarray(s)))

    # stop short of s = 1, where odd orders have a root that is excluded
    hi = 1.0 - 1e-9
    grid = np.linspace(a, hi, samples)
    vals = c_of(grid)
    roots = [float(grid[i]) for i in np.flatnonzero(vals == 0.0)]
    brackets = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
    for i in brackets:
        roots.append(optimize.brentq(lambda s: float(c_of(s)), grid[i], grid[i + 1], xtol=1e-12, rtol=4 * np.finfo(float).eps))
    roots = sorted(roots)
    for r in roots:
        h = 1e-6
        slope = (kernel_F_diagonal(spec, r + h) - kernel_F_diagonal(spec, r - h)) / (2 * h)
        if slope == 0.0:
            raise ArithmeticError(f"diagonal root {r} is not simple")
    return roots


@dataclass
class ZeroReport:
    s0: float
    beta1: float
    beta2: float
    value: float
    value_volterra_form: float
    expected: float
    v_prime: float
    v_prime_rel_error: float
    passed: bool

    def as_dict(self):
        return dict(self.__dict__)


def _one_sided(f, x0, h, direction):
    """Second-order one-sided derivative with one Richardson step."""

    def d(hh):
        step = direction * hh
        return direction * (-3.0 * f(x0) + 4.0 * f(x0 + step) - f(x0 + 2.0 * step)) / (2.0 * hh)

    return (4.0 * d(h / 2.0) - d(h)) / 3.0


def kernel_gradient(spec: KernelSpec, s0: float, h: float = 1e-5):
    """``(d/dt F, d/ds F)`` at ``(s0, s0)`` from inside ``s <= t``."""
    beta1 = _one_sided(lambda t: kernel_F(spec, t, s0), s0, h, +1)
    beta2 = _one_sided(lambda s: kernel_F(spec, s0, s), s0, h, -1)
    return float(beta1), float(beta2)


def check_uniqueness_condition(spec: KernelSpec, a: float = DEFAULT_ZERO_SEARCH_START,
                               h: float = 1e-5, tol: float = 1e-4) -> list:
    """Evaluate ``1 + beta1 / (2 (beta1 + beta2))`` at every diagonal zero.

    ``passed`` means the value is positive and matches ``m + (n + 1) / 2`` to
    ``tol``.  A vanishing ``beta1 + beta2`` is reported with ``value = nan``.
    """
    expected = spec.m + (spec.n + 1) / 2.0
    reports = []
    for s0 in diagonal_zeros(spec, a):
        beta1, beta2 = kernel_gradient(spec, s0, h)
        total = beta1 + beta2
        v_prime = kernel_F_diagonal_deriv(spec, s0)
        if total == 0.0:
            value = volterra_value = float("nan")
        else:
            value = 1.0 + beta1 / (2.0 * total)
            # same quantity through alpha1 = pi/2 beta1, alpha1 + alpha2 = pi (beta1 + beta2)
            volterra_value = 1.0 + (0.5 * np.pi * beta1) / (np.pi * total)
        rel = abs(total - v_prime) / abs(v_prime) if v_prime != 0.0 else float("inf")
        passed = bool(value > 0 and abs(value - expected) < tol)
        reports.append(ZeroReport(s0, beta1, beta2, value, volterra_value, expected, v_prime, rel, passed))
    return reports


def volterra_kernel_V(spec: KernelSpec, u: float, s: float, tol: float = 1e-12) -> float:
    """Kernel ``V(u, s) = int_0^1 F(s + (u - s) r, s) / sqrt(r (1 - r)) dr``.

    With ``r = sin^2 theta`` both endpoint singularities cancel and the
    integrand becomes ``2 F(s + (u - s) sin^2 theta, s)`` on ``[0, pi/2]``.
    """
    if s > u:
        raise ValueError("volterra_kernel_V requires s <= u")
    def integrand(theta):
        return 2.0 * kernel_F(spec, s + (u - s) * np.sin(theta) ** 2, s)

    val, err, info, *msg = integrate.quad(integrand, 0.0, np.pi / 2, epsabs=tol, epsrel=tol,
                                          limit=200, full_output=1)
    if msg:
        raise ArithmeticError(f"quadrature for V({u}, {s}) did not converge: {msg[0]}")
    return float(val)


def volterra_gradient(spec: KernelSpec, s0: float, h: float = 1e-5):
    """``(d/du V, d/ds V)`` at ``(s0, s0)`` by one-sided differences."""
    alpha1 = _one_sided(lambda u: volterra_kernel_V(spec, u, s0), s0, h, +1)
    alpha2 = _one_sided(lambda s: volterra_kernel_V(spec, s0, s), s0, h, -1)
    return float(alpha1), float(alpha2)


def verify_kernels(n: int, m: int, max_order: int, a: float = DEFAULT_ZERO_SEARCH_START) -> dict:
    """Zero lists and condition values for ``l = 0..max_order`` (JSON-ready)."""
    out = {"n": n, "m": m, "a": a, "expected": m + (n + 1) / 2.0, "orders": []}
    ok = True
    for l in range(max_order + 1):
        spec = KernelSpec(n, m, l)
        reports = check_uniqueness_condition(spec, a)
        entries = []
        for rep in reports:
            alpha1, alpha2 = volterra_gradient(spec, rep.s0)
            entry = rep.as_dict()
            entry.update(alpha1=alpha1, alpha2=alpha2,
                         alpha1_rel_error=abs(alpha1 - 0.5 * np.pi * rep.beta1) / abs(0.5 * np.pi * rep.beta1),
                         volterra_value=1.0 + alpha1 / (alpha1 + alpha2))
            entries.append(entry)
            ok &= rep.passed
        out["orders"].append({"l": l, "uniqueness_regime": spec.uniqueness_regime,
                              "zeros": [r.s0 for r in reports], "checks": entries})
    out["passed"] = bool(ok)
    return out
