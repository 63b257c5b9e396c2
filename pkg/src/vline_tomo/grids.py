"""Square image grids on [-1, 1]^2, test phantoms and bilinear sampling.

Pixel values live at pixel centers ``x_p = -1 + (2p + 1) / width``.  Row
index runs along ``y`` and column index along ``x``, so ``values[q, p]`` is
the sample at ``(x_p, y_q)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Sequence, Union

import numpy as np

DEFAULT_MARGIN = 0.05


class SupportError(ValueError):
    """Raised when an image or primitive reaches outside the support disk."""


def pixel_centers(size: int) -> np.ndarray:
    """``x_p = -1 + (2p + 1) / size``, written so that ``x_(size-1-p) == -x_p`` exactly."""
    return (2.0 * np.arange(size) + 1.0 - size) / size


@dataclass(frozen=True)
class ImageGrid:
    """Square sampling of a function on [-1, 1]^2.

    Values with pixel-center radius ``>= 1 - margin`` must be exactly zero.
    """

    values: np.ndarray
    margin: float = DEFAULT_MARGIN

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 2:
            raise ValueError("image values must be a 2D array")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def pixel_size(self) -> float:
        return 2.0 / self.width

    def coordinates(self):
        """Return ``(X, Y)`` arrays of pixel-center coordinates."""
        return np.meshgrid(pixel_centers(self.width), pixel_centers(self.height))

    def outside_support(self) -> np.ndarray:
        X, Y = self.coordinates()
        return np.hypot(X, Y) >= 1.0 - self.margin

    def check_support(self):
        bad = self.outside_support() & (self.values != 0.0)
        if bad.any():
            worst = np.abs(self.values[bad]).max()
            raise SupportError(
                f"{int(bad.sum())} pixels outside radius {1 - self.margin:g} are "
                f"nonzero (max |value| {worst:.3g})"
            )

    def __add__(self, other: "ImageGrid") -> "ImageGrid":
        return ImageGrid(self.values + other.values, self.margin)

    def scaled(self, factor: float) -> "ImageGrid":
        return ImageGrid(factor * self.values, self.margin)


# -- radial profiles -------------------------------------------------------


@dataclass(frozen=True)
class RadialProfile:
    """Built-in radial function on ``[0, radius]``.

    ``kind`` is ``"constant"`` (indicator of ``[0, radius)``) or ``"bump"``
    (the C-infinity bump ``exp(1 - 1 / (1 - (r / radius)^2))``, equal to 1 at
    the origin).
    """

    kind: str
    radius: float = 0.5

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ValueError(f"unknown radial profile {self.kind!r}; expected one of {sorted(PROFILE_KINDS)}")
        if not 0.0 < self.radius:
            raise ValueError("profile radius must be positive")

    @property
    def support(self) -> float:
        return self.radius

    @property
    def breakpoints(self) -> tuple:
        """Radii where the profile is not smooth."""
        return (self.radius,) if self.kind == "constant" else ()

    def __call__(self, r):
        r = np.abs(np.asarray(r, dtype=float))
        return PROFILE_KINDS[self.kind](r / self.radius)


def _constant(x):
    return np.where(x < 1.0, 1.0, 0.0)


def _bump(x):
    out = np.zeros_like(x)
    inside = x < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - x[inside] ** 2))
    return out


PROFILE_KINDS: dict[str, Callable] = {"constant": _constant, "bump": _bump}


def get_profile(profile: Union[str, RadialProfile], radius: float = 0.5) -> RadialProfile:
    if isinstance(profile, RadialProfile):
        return profile
    return RadialProfile(profile, radius)


# -- phantom primitives ----------------------------------------------------


@dataclass(frozen=True)
class Disk:
    center: tuple = (0.0, 0.0)
    radius: float = 0.5
    amplitude: float = 1.0

    def extent(self) -> float:
        return float(np.hypot(*self.center)) + self.radius

    def __call__(self, x, y):
        r2 = (x - self.center[0]) ** 2 + (y - self.center[1]) ** 2
        return np.where(r2 < self.radius**2, self.amplitude, 0.0)


@dataclass(frozen=True)
class Annulus:
    """Ring ``r_inner <= r < r_outer``, optionally restricted to an angular
    sector ``[theta_min, theta_max]`` (radians, measured at the center)."""

    center: tuple = (0.0, 0.0)
    r_inner: float = 0.3
    r_outer: float = 0.4
    amplitude: float = 1.0
    theta_min: float | None = None
    theta_max: float | None = None

    def extent(self) -> float:
        return float(np.hypot(*self.center)) + self.r_outer

    def __call__(self, x, y):
        dx = x - self.center[0]
        dy = y - self.center[1]
        r2 = dx**2 + dy**2
        mask = (r2 >= self.r_inner**2) & (r2 < self.r_outer**2)
        if self.theta_min is not None and self.theta_max is not None:
            theta = np.mod(np.arctan2(dy, dx) - self.theta_min, 2 * np.pi)
            mask &= theta <= self.theta_max - self.theta_min
        return np.where(mask, self.amplitude, 0.0)


@dataclass(frozen=True)
class Harmonic:
    """Angular mode ``amplitude * p(r) * cos(order * alpha - phase)`` in polar
    coordinates ``(r, alpha)`` about ``center``.

    With ``order = 0`` and an off-origin center this is a smooth blob.
    """

    order: int
    profile: RadialProfile = field(default_factory=lambda: RadialProfile("bump"))
    amplitude: float = 1.0
    phase: float = 0.0
    center: tuple = (0.0, 0.0)

    def extent(self) -> float:
        return float(np.hypot(*self.center)) + self.profile.support

    def __call__(self, x, y):
        dx = x - self.center[0]
        dy = y - self.center[1]
        r = np.hypot(dx, dy)
        alpha = np.arctan2(dy, dx)
        return self.amplitude * self.profile(r) * np.cos(self.order * alpha - self.phase)


Primitive = Union[Disk, Annulus, Harmonic]


@dataclass(frozen=True)
class PhantomSpec:
    primitives: tuple
    margin: float = DEFAULT_MARGIN

    def __post_init__(self):
        object.__setattr__(self, "primitives", tuple(self.primitives))

    def validate(self):
        limit = 1.0 - self.margin
        for prim in self.primitives:
            if prim.extent() >= limit:
                raise SupportError(
                    f"{prim!r} reaches radius {prim.extent():.4g}, outside the support "
                    f"disk of radius {limit:g}"
                )

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for prim in self.primitives:
            out = out + prim(x, y)
        return out

    def rotated(self, angle: float) -> "PhantomSpec":
        """Spec of ``f o Q^T`` where ``Q`` rotates by ``angle`` counterclockwise."""
        c, s = np.cos(angle), np.sin(angle)
        out = []
        for prim in self.primitives:
            cx, cy = prim.center
            center = (c * cx - s * cy, s * cx + c * cy)
            if isinstance(prim, Harmonic):
                out.append(replace(prim, center=center, phase=prim.phase + prim.order * angle))
            elif isinstance(prim, Annulus) and prim.theta_min is not None:
                out.append(replace(prim, center=center, theta_min=prim.theta_min + angle,
                                   theta_max=prim.theta_max + angle))
            else:
                out.append(replace(prim, center=center))
        return PhantomSpec(tuple(out), self.margin)


# Artifact-defined smiley: face disk, two brighter eyes, darker mouth arc.
SMILEY = PhantomSpec(
    (
        Disk((0.0, 0.0), 0.75, 1.0),
        Disk((-0.27, 0.25), 0.12, 1.0),
        Disk((0.27, 0.25), 0.12, 1.0),
        Annulus((0.0, 0.0), 0.38, 0.5, -0.7, theta_min=1.15 * np.pi, theta_max=1.85 * np.pi),
    )
)


def render_phantom(spec: PhantomSpec, size: int, supersample: int = 1) -> ImageGrid:
    """Sample ``spec`` on a ``size x size`` grid.

    With the default ``supersample=1`` each pixel holds the value at its
    center.  Larger values average ``supersample^2`` evenly spaced points
    inside the pixel, an area-weighted rendering that removes most of the
    staircase error of sharp edges.
    """
    if size < 16:
        raise ValueError("grid size must be at least 16")
    if supersample < 1:
        raise ValueError("supersample must be a positive integer")
    spec.validate()
    c = pixel_centers(size)
    X, Y = np.meshgrid(c, c)
    h = 2.0 / size
    offsets = ((np.arange(supersample) + 0.5) / supersample - 0.5) * h
    values = np.zeros_like(X)
    for oy in offsets:
        for ox in offsets:
            values += spec(X + ox, Y + oy)
    values /= supersample**2
    values[np.hypot(X, Y) >= 1.0 - spec.margin] = 0.0
    return ImageGrid(values, spec.margin)


def render_harmonic_phantom(order: int, profile: Union[str, RadialProfile], size: int,
                            margin: float = DEFAULT_MARGIN):
    """Real and imaginary parts of ``p(r) exp(i * order * alpha)`` on a grid."""
    profile = get_profile(profile)
    if profile.support >= 1.0 - margin:
        raise SupportError(f"profile support {profile.support:g} exceeds {1 - margin:g}")
    if size < 16:
        raise ValueError("grid size must be at least 16")
    c = pixel_centers(size)
    X, Y = np.meshgrid(c, c)
    z = harmonic_values(order, profile, X, Y)
    return ImageGrid(z.real, margin), ImageGrid(z.imag, margin)


def harmonic_values(order: int, profile: RadialProfile, x, y) -> np.ndarray:
    r = np.hypot(x, y)
    return profile(r) * np.exp(1j * order * np.arctan2(y, x))


def sample_bilinear(grid: ImageGrid, x, y):
    """Bilinear interpolation between pixel centers.

    Works on scalars or arrays; points outside the hull of pixel centers map
    to zero.
    """
    scalar = np.isscalar(x) and np.isscalar(y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = _bilinear(grid.values, x.ravel(), y.ravel()).reshape(np.broadcast(x, y).shape)
    return float(out) if scalar else out


def _bilinear(values: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    ny, nx = values.shape
    # continuous pixel index: center p sits at u = p
    u = (x + 1.0) * (0.5 * nx) - 0.5
    v = (y + 1.0) * (0.5 * ny) - 0.5
    inside = (u >= 0.0) & (u <= nx - 1) & (v >= 0.0) & (v <= ny - 1)
    u = np.where(inside, u, 0.0)
    v = np.where(inside, v, 0.0)
    i0 = np.minimum(u.astype(np.intp), nx - 2)
    j0 = np.minimum(v.astype(np.intp), ny - 2)
    fu = u - i0
    fv = v - j0
    flat = values.ravel()
    k = j0 * nx + i0
    top = flat[k] * (1.0 - fu) + flat[k + 1] * fu
    bottom = flat[k + nx] * (1.0 - fu) + flat[k + nx + 1] * fu
    out = top * (1.0 - fv) + bottom * fv
    out[~inside] = 0.0
    return out


def rotate90(grid: ImageGrid) -> ImageGrid:
    """Exact counterclockwise quarter turn of a square grid."""
    return ImageGrid(np.rot90(grid.values), grid.margin)


def smiley(size: int = 301, supersample: int = 1) -> ImageGrid:
    return render_phantom(SMILEY, size, supersample)


def disk_spec(radius: float = 0.5, amplitude: float = 1.0,
              center: Sequence[float] = (0.0, 0.0)) -> PhantomSpec:
    return PhantomSpec((Disk(tuple(center), radius, amplitude),))


def disk_phantom(radius: float = 0.5, size: int = 301, amplitude: float = 1.0,
                 center: Sequence[float] = (0.0, 0.0), supersample: int = 1) -> ImageGrid:
    return render_phantom(disk_spec(radius, amplitude, center), size, supersample)


BUILTIN_PHANTOMS = {"smiley": SMILEY, "disk": disk_spec()}


# -- JSON round trip for phantom specs --------------------------------------------


def primitive_to_dict(prim) -> dict:
    if isinstance(prim, Disk):
        return {"type": "disk", "center": list(prim.center), "radius": prim.radius,
                "amplitude": prim.amplitude}
    if isinstance(prim, Annulus):
        d = {"type": "annulus", "center": list(prim.center), "r_inner": prim.r_inner,
             "r_outer": prim.r_outer, "amplitude": prim.amplitude}
        if prim.theta_min is not None:
            d.update(theta_min=prim.theta_min, theta_max=prim.theta_max)
        return d
    return {"type": "harmonic", "order": prim.order, "profile": prim.profile.kind,
            "profile_radius": prim.profile.radius, "amplitude": prim.amplitude, "phase": prim.phase,
            "center": list(prim.center)}


def primitive_from_dict(d: dict):
    d = dict(d)
    kind = d.pop("type", None)
    if kind == "disk":
        return Disk(tuple(d.get("center", (0.0, 0.0))), float(d["radius"]), float(d.get("amplitude", 1.0)))
    if kind == "annulus":
        return Annulus(tuple(d.get("center", (0.0, 0.0))), float(d["r_inner"]), float(d["r_outer"]),
                       float(d.get("amplitude", 1.0)), d.get("theta_min"), d.get("theta_max"))
    if kind == "harmonic":
        profile = RadialProfile(d.get("profile", "bump"), float(d.get("profile_radius", 0.5)))
        return Harmonic(int(d["order"]), profile, float(d.get("amplitude", 1.0)), float(d.get("phase", 0.0)),
                        tuple(d.get("center", (0.0, 0.0))))
    raise ValueError(f"unknown primitive type {kind!r}")


def spec_to_dict(spec: PhantomSpec) -> dict:
    return {"margin": spec.margin, "primitives": [primitive_to_dict(p) for p in spec.primitives]}


def spec_from_dict(d: dict) -> PhantomSpec:
    return PhantomSpec(tuple(primitive_from_dict(p) for p in d["primitives"]),
                       float(d.get("margin", DEFAULT_MARGIN)))
