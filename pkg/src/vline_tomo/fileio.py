"""Raw little-endian float64 arrays with JSON sidecars, plus CSV and PGM exports.

A dataset stored at ``path`` keeps its samples in ``path`` (row-major,
``<f8``; complex arrays interleave real and imaginary parts) and its
metadata in ``path + ".json"``.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .forward import Sinogram
from .grids import ImageGrid
from .harmonics import HarmonicTable, RadialProfileSet


def sidecar(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def _write(path, array, meta):
    path = Path(path)
    array = np.ascontiguousarray(array)
    if np.iscomplexobj(array):
        array = array.astype(np.complex128).view(np.float64)
    array.astype("<f8").tofile(path)
    sidecar(path).write_text(json.dumps(meta, indent=2) + "\n")


def _read(path, expected_type):
    path = Path(path)
    meta = json.loads(sidecar(path).read_text())
    if meta.get("type") != expected_type:
        raise ValueError(f"{path}: expected a {expected_type!r} dataset, found {meta.get('type')!r}")
    return np.fromfile(path, dtype="<f8"), meta


def read_meta(path) -> dict:
    return json.loads(sidecar(path).read_text())


def save_image(path, grid: ImageGrid):
    _write(path, grid.values, {"type": "image", "width": grid.width, "height": grid.height,
                               "margin": grid.margin})


def load_image(path) -> ImageGrid:
    data, meta = _read(path, "image")
    return ImageGrid(data.reshape(meta["height"], meta["width"]), meta.get("margin", 0.05))


def save_sinogram(path, sino: Sinogram):
    _write(path, sino.values, {"type": "sinogram", "M": sino.M, "N": sino.N, "m": sino.m})


def load_sinogram(path) -> Sinogram:
    data, meta = _read(path, "sinogram")
    return Sinogram(data.reshape(meta["M"], meta["N"] + 1), meta.get("m", 0))


def save_harmonics(path, table: HarmonicTable):
    _write(path, table.coefficients, {"type": "harmonics", "M": table.M, "N": table.N, "m": table.m})


def load_harmonics(path) -> HarmonicTable:
    data, meta = _read(path, "harmonics")
    c = data.view(np.complex128).reshape(meta["M"], meta["N"] + 1)
    return HarmonicTable(c, meta.get("m", 0))


def save_profiles(path, profiles: RadialProfileSet):
    _write(path, profiles.coefficients, {"type": "profiles", "M": profiles.M, "N": profiles.N})


def load_profiles(path) -> RadialProfileSet:
    data, meta = _read(path, "profiles")
    return RadialProfileSet(data.view(np.complex128).reshape(meta["M"], meta["N"]))


def write_pgm(path, values):
    """8-bit ASCII PGM (P2), min-max normalized; a constant image maps to 0."""
    a = np.asarray(values, dtype=float)
    lo, hi = a.min(), a.max()
    scaled = np.zeros(a.shape, dtype=int) if hi == lo else np.rint(255 * (a - lo) / (hi - lo)).astype(int)
    with open(path, "w") as fh:
        fh.write(f"P2\n{a.shape[1]} {a.shape[0]}\n255\n")
        for row in scaled:
            fh.write(" ".join(map(str, row)) + "\n")


def read_pgm(path) -> np.ndarray:
    tokens = Path(path).read_text().split()
    if tokens[0] != "P2":
        raise ValueError("not an ASCII PGM file")
    w, h = int(tokens[1]), int(tokens[2])
    return np.array(tokens[4:4 + w * h], dtype=int).reshape(h, w)


def write_sinogram_csv(path, sino: Sinogram):
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["k", "i", "phi", "s", "value"])
        phi, s = sino.phi, sino.s
        for k in range(sino.M):
            for i in range(sino.N + 1):
                out.writerow([k, i, repr(float(phi[k])), repr(float(s[i])), repr(float(sino.values[k, i]))])
