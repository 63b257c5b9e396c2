"""Product-integration discretization of the radial Abel equations.

For nodes ``s_i = i / N`` and midpoints ``rho_j = (j + 1/2) / N`` the
singular factor ``rho / sqrt(rho^2 - s_i^2)`` is integrated exactly over
``[s_j, s_(j+1)]`` while ``f_l * K_l`` is frozen at the midpoint, giving the
upper triangular system

    A[i, j] = |S^(n-2)| w[i, j] K_l(arcsin s_i, rho_j),   j >= i,
    w[i, j] = (sqrt((j+1)^2 - i^2) - sqrt(j^2 - i^2)) / N,

with data ``b_i = s_i^m g_l(s_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from .kernels import KernelSpec, kernel_K
from .special import sphere_area

METHODS = ("triangular", "tikhonov", "tsvd")
# relative pivot size below which substitution is refused
PIVOT_TOLERANCE = 1e-12


class IllConditionedError(ArithmeticError):
    """Raised when back substitution meets a (near) zero diagonal entry."""

    def __init__(self, index, value, order=None):
        self.index = index
        self.value = value
        self.order = order
        where = f" for order {order}" if order is not None else ""
        super().__init__(
            f"ill-conditioned diagonal{where}: |A[{index},{index}]| = {abs(value):.3e}; "
            "use the tikhonov or tsvd method"
        )


@dataclass(frozen=True)
class SolveConfig:
    method: str = "tikhonov"
    lam: float = 0.015
    svd_threshold: float = 1e-3
    lam_per_order: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.lam < 0 or any(v < 0 for v in self.lam_per_order.values()):
            raise ValueError("regularization parameter must be nonnegative")
        if not 0.0 <= self.svd_threshold < 1.0:
            raise ValueError("svd threshold must lie in [0, 1)")

    def lam_for(self, l: int) -> float:
        return float(self.lam_per_order.get(abs(l), self.lam))


@dataclass(frozen=True)
class AbelSystem:
    spec: KernelSpec
    N: int
    matrix: np.ndarray
    weights: np.ndarray

    @property
    def l(self) -> int:
        return self.spec.l

    @property
    def s(self) -> np.ndarray:
        return np.arange(self.N) / self.N

    @property
    def rho(self) -> np.ndarray:
        return (np.arange(self.N) + 0.5) / self.N


def product_weights(N: int) -> np.ndarray:
    """``w[i, j] = int_(s_j)^(s_(j+1)) rho / sqrt(rho^2 - s_i^2) drho`` for ``j >= i``."""
    i = np.arange(N)[:, None]
    j = np.arange(N)[None, :]
    upper = j >= i
    hi = np.sqrt(np.where(upper, (j + 1.0) ** 2 - i**2, 0.0))
    lo = np.sqrt(np.where(upper, j**2.0 - i**2, 0.0))
    return np.where(upper, (hi - lo) / N, 0.0)


def assemble(spec: KernelSpec, N: int) -> AbelSystem:
    """Assemble the mid-point product-integration matrix for order ``spec.l``."""
    if N < 4:
        raise ValueError("need N >= 4")
    if spec.q < 0:
        raise ValueError("discretization needs m + n - 2 >= 0 (kernel singular at psi = 0)")
    W = product_weights(N)
    s = np.arange(N) / N
    rho = (np.arange(N) + 0.5) / N
    ii, jj = np.triu_indices(N)
    K = np.zeros((N, N))
    K[ii, jj] = kernel_K(spec, np.arcsin(s[ii]), rho[jj])
    A = sphere_area(spec.n - 2) * W * K
    A.setflags(write=False)
    return AbelSystem(spec, N, A, W)


def rhs(system: AbelSystem, g: np.ndarray) -> np.ndarray:
    """Right-hand side ``s_i^m g(s_i)`` from data on ``s_i = i / N``.

    ``g`` may hold ``N`` or ``N + 1`` samples; the one at ``s = 1`` is dropped.
    """
    g = np.asarray(g)
    if g.shape[0] not in (system.N, system.N + 1):
        raise ValueError(f"expected {system.N} or {system.N + 1} data samples, got {g.shape[0]}")
    m = system.spec.m
    weight = system.s**m if m else 1.0
    return weight * g[: system.N]


def _stack(b):
    b = np.asarray(b)
    return np.column_stack([b.real, b.imag]) if np.iscomplexobj(b) else b[:, None].astype(float)


def _unstack(x, complex_input):
    return x[:, 0] + 1j * x[:, 1] if complex_input else x[:, 0]


def solve(system: AbelSystem, b, cfg: SolveConfig = SolveConfig()) -> np.ndarray:
    """Solve ``A f = b`` for one order.

    ``triangular`` runs back substitution and raises
    :class:`IllConditionedError` if a pivot is below ``1e-12 * max|A|``.
    ``tikhonov`` solves ``(A^T A + lam I) f = A^T b`` by Cholesky.  ``tsvd``
    drops singular values below ``svd_threshold * sigma_max``.  Real and
    imaginary parts of complex data are solved as two right-hand sides.
    """
    A = system.matrix
    if not np.all(np.isfinite(b)):
        raise ValueError("data must be finite")
    complex_input = np.iscomplexobj(b)
    B = _stack(b)
    if cfg.method == "triangular":
        diag = np.abs(np.diag(A))
        bad = np.flatnonzero(diag < PIVOT_TOLERANCE * np.abs(A).max())
        if bad.size:
            raise IllConditionedError(int(bad[-1]), A[bad[-1], bad[-1]], system.l)
        x = linalg.solve_triangular(A, B, lower=False)
    elif cfg.method == "tikhonov":
        lam = cfg.lam_for(system.l)
        normal = A.T @ A + lam * np.eye(system.N)
        x = linalg.cho_solve(linalg.cho_factor(normal), A.T @ B)
    else:
        U, sig, Vt = linalg.svd(A)
        keep = sig >= cfg.svd_threshold * sig[0]
        x = Vt[keep].T @ ((U[:, keep].T @ B) / sig[keep, None])
    return _unstack(x, complex_input)


@dataclass
class ConditionReport:
    l: int
    min_abs_diagonal: float
    max_abs_diagonal: float
    sigma_min: float
    sigma_max: float
    condition_number: float

    def as_dict(self):
        return dict(self.__dict__)


def condition_report(system: AbelSystem) -> ConditionReport:
    diag = np.abs(np.diag(system.matrix))
    sig = linalg.svdvals(system.matrix)
    cond = sig[0] / sig[-1] if sig[-1] > 0 else float("inf")
    return ConditionReport(system.l, float(diag.min()), float(diag.max()), float(sig[-1]),
                           float(sig[0]), float(cond))
