"""Weighted V-line (conical Radon) transform with vertices on the unit circle and
its series-expansion inversion through generalized Abel equations."""

from .forward import (NormReport, Sinogram, add_noise, glk2_rho_integral, glk_alpha_integral,
                      norm_report, oracle_table, vline_forward)
from .grids import (BUILTIN_PHANTOMS, SMILEY, Annulus, Disk, Harmonic, ImageGrid, PhantomSpec,
                    RadialProfile, SupportError, disk_phantom, render_harmonic_phantom,
                    render_phantom, sample_bilinear, smiley)
from .harmonics import HarmonicTable, RadialProfileSet, decompose, recompose, synthesize
from .kernels import (KernelSpec, check_uniqueness_condition, diagonal_zeros, kernel_F,
                      kernel_F_diagonal, kernel_K, verify_kernels, volterra_kernel_V)
from .recon import ReconConfig, ReconResult, correlation, reconstruct, relative_l2
from .solver import (AbelSystem, IllConditionedError, SolveConfig, assemble, condition_report,
                     rhs, solve)
from .special import gegenbauer, gegenbauer_deriv, sphere_area

__version__ = "0.1.0"

__all__ = [
    "NormReport", "Sinogram", "add_noise", "glk2_rho_integral", "glk_alpha_integral",
    "norm_report", "oracle_table", "vline_forward", "BUILTIN_PHANTOMS", "SMILEY", "Annulus",
    "Disk", "Harmonic", "ImageGrid", "PhantomSpec", "RadialProfile", "SupportError",
    "disk_phantom", "render_harmonic_phantom", "render_phantom", "sample_bilinear", "smiley",
    "HarmonicTable", "RadialProfileSet", "decompose", "recompose", "synthesize", "KernelSpec",
    "check_uniqueness_condition", "diagonal_zeros", "kernel_F", "kernel_F_diagonal", "kernel_K",
    "verify_kernels", "volterra_kernel_V", "ReconConfig", "ReconResult", "correlation",
    "reconstruct", "relative_l2", "AbelSystem", "IllConditionedError", "SolveConfig", "assemble",
    "condition_report", "rhs", "solve", "gegenbauer", "gegenbauer_deriv", "sphere_area",
    "__version__",
]
