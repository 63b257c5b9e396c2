# %% [markdown]
# # Phantoms and the V-line transform
#
# Vertices sit on the unit circle at angles `phi_k = 2 pi k / M`.  From each
# vertex two rays leave into the disk, symmetric about the inward normal with
# half opening angle `psi`.  The transform integrates the image along both rays
# with weight `r^m`, `r` the distance to the vertex.

# %%
from pathlib import Path

import numpy as np

from vline_tomo import SMILEY, disk_phantom, render_phantom, vline_forward
from vline_tomo.fileio import write_pgm

out = Path("demo_output")
out.mkdir(exist_ok=True)

# %% [markdown]
# The built-in smiley: a face disk, two brighter eyes and a darker mouth arc.
# Everything at radius 0.95 or more is zero, so the vertices never touch the
# support.

# %%
face = render_phantom(SMILEY, 301, supersample=4)
print("pixels:", face.values.size, "nonzero:", np.count_nonzero(face.values))
print("value range:", face.values.min(), face.values.max())
write_pgm(out / "smiley.pgm", face.values[::-1])

# %% [markdown]
# A centered disk of radius `R` has a closed-form transform: both rays pass at
# distance `sin(psi)` from the origin, so each crosses a chord of length
# `2 sqrt(R^2 - sin^2 psi)`.

# %%
disk = disk_phantom(0.5, size=301, supersample=8)
sino = vline_forward(disk, M=256, N=300)
s = sino.s
inside = s <= 0.45
chord = 4 * np.sqrt(0.25 - s[inside] ** 2)
rel = np.abs(sino.values[:, inside] / chord - 1)
print(f"largest relative error over all vertices: {rel.max():.3%}")
print(f"spread across vertices at s = 0.3: {np.ptp(sino.values[:, 90]):.2e}")

# %% [markdown]
# The smiley's sinogram.  Rows are vertices, columns are `s = sin(psi)`.

# %%
sino_face = vline_forward(face, M=256, N=300)
write_pgm(out / "smiley_sinogram.pgm", sino_face.values.T[::-1])
print("sinogram shape:", sino_face.values.shape)
