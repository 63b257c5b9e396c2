# %% [markdown]
# # Abel kernels and their diagonal zeros
#
# After an angular Fourier transform each order `l` obeys a generalized Abel
# equation.  In the variables `t = cos^2 psi`, `s = 1 - rho^2` its kernel
# `F_l(t, s)` has the diagonal
#
#     F_l(s, s) = 2 s^(q/2) C_l(sqrt(1 - s)),   q = m + n - 2,
#
# so it vanishes wherever the Gegenbauer polynomial `C_l` has a root.  Classical
# theory needs a nonvanishing diagonal.  Uniqueness survives if, at each
# zero, the gradient `(b1, b2)` of `F` satisfies `1 + b1 / (2 (b1 + b2)) > 0`.
# For these kernels the value is always `m + (n + 1) / 2`.

# %%
import numpy as np

from vline_tomo import KernelSpec, check_uniqueness_condition, diagonal_zeros, kernel_F
from vline_tomo.kernels import volterra_gradient

# %% [markdown]
# The `l = 2` kernel in two dimensions vanishes where `T_2(x) = 2x^2 - 1 = 0`,
# i.e. at `s = 1/2`.

# %%
spec = KernelSpec(n=2, m=0, l=2)
print("zeros:", diagonal_zeros(spec, a=0.1))
for s in (0.3, 0.5, 0.7):
    print(f"F({s}, {s}) = {kernel_F(spec, s, s):+.3e}")

# %% [markdown]
# Finite-difference gradients at every zero for `l <= 8`, in two and three
# dimensions.

# %%
for n, m in [(2, 0), (3, 0), (3, 1)]:
    values = [rep.value for l in range(9) for rep in check_uniqueness_condition(KernelSpec(n, m, l))]
    print(f"n={n} m={m}: {len(values)} zeros, value range "
          f"[{min(values):.8f}, {max(values):.8f}], expected {m + (n + 1) / 2}")

# %% [markdown]
# Integrating the Abel equation once more gives a first-kind Volterra equation
# with kernel `V(u, s)`.  At a zero its gradient `(a1, a2)` satisfies `a1 = (pi/2) b1`,
# and the Volterra form of the condition, `1 + a1 / (a1 + a2)`, gives the same number.

# %%
spec = KernelSpec(3, 1, 4)
for rep in check_uniqueness_condition(spec):
    a1, a2 = volterra_gradient(spec, rep.s0)
    print(f"s0={rep.s0:.6f}  a1/(pi/2 b1)={a1 / (np.pi / 2 * rep.beta1):.8f}  "
          f"1 + a1/(a1+a2)={1 + a1 / (a1 + a2):.6f}")
