import json

import numpy as np
import pytest

from vline_tomo import fileio
from vline_tomo.forward import Sinogram
from vline_tomo.grids import disk_phantom
from vline_tomo.harmonics import HarmonicTable, RadialProfileSet


def test_image_round_trip(tmp_path):
    grid = disk_phantom(0.3, size=40)
    path = tmp_path / "img.raw"
    fileio.save_image(path, grid)
    meta = json.loads((tmp_path / "img.raw.json").read_text())
    assert meta == {"type": "image", "width": 40, "height": 40, "margin": 0.05}
    assert path.stat().st_size == 40 * 40 * 8
    back = fileio.load_image(path)
    assert np.array_equal(back.values, grid.values)
    # raw layout is little-endian float64, row-major
    assert np.array_equal(np.fromfile(path, "<f8").reshape(40, 40), grid.values)


def test_sinogram_round_trip(tmp_path):
    sino = Sinogram(np.random.default_rng(0).normal(size=(8, 11)), m=1)
    fileio.save_sinogram(tmp_path / "s", sino)
    assert fileio.read_meta(tmp_path / "s") == {"type": "sinogram", "M": 8, "N": 10, "m": 1}
    back = fileio.load_sinogram(tmp_path / "s")
    assert np.array_equal(back.values, sino.values) and back.m == 1


def test_complex_round_trips(tmp_path):
    rng = np.random.default_rng(1)
    c = rng.normal(size=(8, 6)) + 1j * rng.normal(size=(8, 6))
    fileio.save_harmonics(tmp_path / "h", HarmonicTable(c, m=2))
    raw = np.fromfile(tmp_path / "h", "<f8")
    assert raw[0] == c[0, 0].real and raw[1] == c[0, 0].imag
    back = fileio.load_harmonics(tmp_path / "h")
    assert np.array_equal(back.coefficients, c) and back.m == 2
    fileio.save_profiles(tmp_path / "p", RadialProfileSet(c))
    assert np.array_equal(fileio.load_profiles(tmp_path / "p").coefficients, c)
    assert fileio.read_meta(tmp_path / "p")["type"] == "profiles"


def test_wrong_type_rejected(tmp_path):
    fileio.save_image(tmp_path / "img", disk_phantom(0.3, size=20))
    with pytest.raises(ValueError, match="expected a 'sinogram'"):
        fileio.load_sinogram(tmp_path / "img")


def test_pgm(tmp_path):
    a = np.array([[0.0, 1.0], [2.0, 4.0]])
    fileio.write_pgm(tmp_path / "a.pgm", a)
    assert (tmp_path / "a.pgm").read_text().startswith("P2\n2 2\n255\n")
    np.testing.assert_array_equal(fileio.read_pgm(tmp_path / "a.pgm"), [[0, 64], [128, 255]])
    fileio.write_pgm(tmp_path / "c.pgm", np.ones((3, 3)))
    assert fileio.read_pgm(tmp_path / "c.pgm").max() == 0


def test_sinogram_csv(tmp_path):
    sino = Sinogram(np.arange(12.0).reshape(4, 3))
    fileio.write_sinogram_csv(tmp_path / "s.csv", sino)
    lines = (tmp_path / "s.csv").read_text().splitlines()
    assert lines[0] == "k,i,phi,s,value"
    assert len(lines) == 13
    k, i, phi, s, v = lines[5].split(",")
    assert (int(k), int(i), float(s), float(v)) == (1, 1, 0.5, 4.0)
    assert float(phi) == pytest.approx(np.pi / 2)
