# %% [markdown]
# # Solving one radial equation
#
# Product integration with the mid-point rule turns each order into an
# upper-triangular system `A f = b` with
# `A[i, j] = 2 w[i, j] K_l(arcsin s_i, rho_j)`.  The weights `w` integrate the
# singular factor `rho / sqrt(rho^2 - s^2)` exactly over each cell.

# %%
import numpy as np

from vline_tomo import KernelSpec, SolveConfig, assemble, condition_report, rhs, solve

# %% [markdown]
# Convergence on a smooth pair.  For `f(rho) = (1 - rho^2)^2` and `l = 0` the
# data are `g(s) = (32/15) (1 - s^2)^(5/2)`.

# %%
for N in (100, 200, 400, 800):
    system = assemble(KernelSpec(), N)
    g = (32 / 15) * (1 - (np.arange(N + 1) / N) ** 2) ** 2.5
    f = solve(system, rhs(system, g), SolveConfig("triangular"))
    print(N, f"max error {np.abs(f - (1 - system.rho**2) ** 2).max():.2e}")

# %% [markdown]
# Higher orders get worse fast.  For `l = 2` the kernel's diagonal zero at
# `s = 1/sqrt(2)` leaves one tiny diagonal entry, and the condition number
# explodes with `l`.  Plain substitution is then refused and the pipeline uses
# Tikhonov regularization `(A^T A + lam I) f = A^T b`.

# %%
for l in (0, 2, 4, 8):
    rep = condition_report(assemble(KernelSpec(2, 0, l), 300))
    print(f"l={l}: diag ratio {rep.min_abs_diagonal / rep.max_abs_diagonal:.2e}, "
          f"condition {rep.condition_number:.2e}")
