"""Command line interface: ``vline-tomo <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import fileio
from .forward import add_noise, oracle_table, vline_forward
from .grids import BUILTIN_PHANTOMS, RadialProfile, render_phantom, spec_from_dict
from .harmonics import decompose, synthesize
from .kernels import KernelSpec, verify_kernels
from .recon import ReconConfig, reconstruct, solve_orders
from .solver import SolveConfig, assemble, condition_report

log = logging.getLogger("vline_tomo")

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2

# config-file keys and the flags that override them
CONFIG_KEYS = {
    "grid": 301, "vertices": 256, "angles": 300, "weight": 0, "lambda": 0.015,
    "method": "tikhonov", "svd_threshold": 1e-3, "noise": 0.0, "seed": 0, "supersample": 1,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p, *names):
    flags = {
        "grid": dict(type=int, help="image size in pixels (square)"),
        "vertices": dict(type=int, help="number of vertices M (power of two)"),
        "angles": dict(type=int, help="number of opening-angle intervals N"),
        "weight": dict(type=int, help="radial weight exponent m"),
        "lambda": dict(type=float, dest="lam", help="Tikhonov parameter"),
        "method": dict(choices=["triangular", "tikhonov", "tsvd"]),
        "svd-threshold": dict(type=float, dest="svd_threshold", help="relative singular value cutoff"),
        "noise": dict(type=float, help="relative l2 noise level"),
        "seed": dict(type=int, help="noise seed"),
        "supersample": dict(type=int, help="subpixel samples per axis when rendering"),
    }
    for name in names:
        p.add_argument(f"--{name}", default=None, **flags[name])


def _settings(args) -> dict:
    """Defaults, then the JSON config file, then explicit flags."""
    out = dict(CONFIG_KEYS)
    config = getattr(args, "config", None)
    if config:
        data = json.loads(Path(config).read_text())
        unknown = set(data) - set(CONFIG_KEYS) - {"phantom", "sinogram"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        out.update(data)
    for key in CONFIG_KEYS:
        attr = "lam" if key == "lambda" else key
        val = getattr(args, attr, None)
        if val is not None:
            out[key] = val
    return out


def _solver_config(st) -> SolveConfig:
    return SolveConfig(st["method"], float(st["lambda"]), float(st["svd_threshold"]))


def _load_phantom(name_or_path):
    if name_or_path in BUILTIN_PHANTOMS:
        return BUILTIN_PHANTOMS[name_or_path]
    path = Path(name_or_path)
    if not path.exists():
        raise UsageError(f"unknown phantom {name_or_path!r} (built-ins: {sorted(BUILTIN_PHANTOMS)})")
    return spec_from_dict(json.loads(path.read_text()))


def _emit_json(obj, path):
    text = json.dumps(obj, indent=2, default=float)
    if path:
        Path(path).write_text(text + "\n")
    else:
        print(text)


# -- subcommands ----------------------------------------------------------------


def cmd_phantom(args):
    st = _settings(args)
    grid = render_phantom(_load_phantom(args.phantom), st["grid"], st["supersample"])
    fileio.save_image(args.output, grid)
    if args.pgm:
        fileio.write_pgm(args.pgm, grid.values[::-1])


def cmd_forward(args):
    st = _settings(args)
    grid = fileio.load_image(args.image)
    sino = vline_forward(grid, st["vertices"], st["angles"], st["weight"], args.step)
    fileio.save_sinogram(args.output, sino)
    if args.csv:
        fileio.write_sinogram_csv(args.csv, sino)
    if args.pgm:
        fileio.write_pgm(args.pgm, sino.values.T[::-1])


def cmd_noise(args):
    st = _settings(args)
    sino = add_noise(fileio.load_sinogram(args.sinogram), st["noise"], st["seed"])
    fileio.save_sinogram(args.output, sino)


def cmd_decompose(args):
    fileio.save_harmonics(args.output, decompose(fileio.load_sinogram(args.sinogram)))


def cmd_solve(args):
    st = _settings(args)
    table = fileio.load_harmonics(args.harmonics)
    profiles, residuals = solve_orders(table, _solver_config(st))
    fileio.save_profiles(args.output, profiles)
    if args.report:
        reports = [dict(condition_report(assemble(KernelSpec(2, table.m, l), table.N)).as_dict(),
                        residual=residuals[l]) for l in sorted(residuals)]
        _emit_json(reports, args.report)


def cmd_synthesize(args):
    st = _settings(args)
    image = synthesize(fileio.load_profiles(args.profiles), st["grid"])
    fileio.save_image(args.output, image)
    if args.pgm:
        fileio.write_pgm(args.pgm, image.values[::-1])


def cmd_reconstruct(args):
    st = _settings(args)
    phantom = args.phantom
    sino_path = args.sinogram
    if args.config:
        data = json.loads(Path(args.config).read_text())
        phantom = phantom or data.get("phantom")
        sino_path = sino_path or data.get("sinogram")
    if (phantom is None) == (sino_path is None):
        raise UsageError("give exactly one of --phantom or --sinogram")
    outputs = [p for p in (args.output, args.metrics, args.pgm, sino_path) if p]
    if len({str(Path(p).resolve()) for p in outputs}) != len(outputs):
        raise UsageError("input and output paths must be distinct")
    cfg = ReconConfig(size=st["grid"], M=st["vertices"], N=st["angles"], m=st["weight"],
                      solver=_solver_config(st), noise=float(st["noise"]), seed=int(st["seed"]),
                      supersample=int(st["supersample"]))
    if phantom is not None:
        result = reconstruct(cfg, phantom=_load_phantom(phantom))
    else:
        result = reconstruct(cfg, sinogram=fileio.load_sinogram(sino_path))
    fileio.save_image(args.output, result.image)
    if args.pgm:
        fileio.write_pgm(args.pgm, result.image.values[::-1])
    metrics = {k: v for k, v in result.metrics.items() if k != "residuals"}
    metrics["residuals"] = {str(k): v for k, v in result.metrics["residuals"].items()}
    if args.metrics:
        _emit_json(metrics, args.metrics)
    else:
        summary = {k: metrics[k] for k in ("relative_l2", "correlation") if k in metrics}
        summary["seconds"] = metrics["timings"]["total"]
        print(json.dumps(summary))


def cmd_verify(args):
    report = {"kernels": [verify_kernels(n, m, args.max_order, args.a)
                          for n in args.dims for m in args.weights]}
    report["passed"] = all(k["passed"] for k in report["kernels"])
    _emit_json(report, args.output)
    return EXIT_OK if report["passed"] else EXIT_NUMERICAL


def cmd_oracle(args):
    profile = RadialProfile(args.profile, args.radius)
    rows = oracle_table(profile, args.dims, args.weights, range(args.max_order + 1), args.psi_count)
    fh = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        out = csv.writer(fh)
        out.writerow(["n", "m", "l", "psi", "alpha_form", "rho_form", "abs_diff"])
        for row in rows:
            out.writerow([row[0], row[1], row[2]] + [repr(float(v)) for v in row[3:]])
    finally:
        if fh is not sys.stdout:
            fh.close()
    worst = max(r[-1] for r in rows)
    log.info("largest difference %.3e", worst)
    return EXIT_OK if worst < args.tol else EXIT_NUMERICAL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vline-tomo", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("phantom", help="render a phantom to an image file")
    p.add_argument("phantom", help="built-in name (smiley, disk) or JSON spec file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--pgm")
    p.add_argument("--config")
    _add_common(p, "grid", "supersample")
    p.set_defaults(func=cmd_phantom)

    p = sub.add_parser("forward", help="V-line transform of an image")
    p.add_argument("image")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--step", type=float, help="ray quadrature step")
    p.add_argument("--csv")
    p.add_argument("--pgm")
    p.add_argument("--config")
    _add_common(p, "vertices", "angles", "weight")
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("noise", help="add scaled Gaussian noise to a sinogram")
    p.add_argument("sinogram")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--config")
    _add_common(p, "noise", "seed")
    p.set_defaults(func=cmd_noise)

    p = sub.add_parser("decompose", help="angular Fourier coefficients of a sinogram")
    p.add_argument("sinogram")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("solve", help="per-order Abel solves: harmonics -> radial profiles")
    p.add_argument("harmonics")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--report", help="write per-order condition JSON here")
    p.add_argument("--config")
    _add_common(p, "method", "lambda", "svd-threshold")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("synthesize", help="image from radial profiles")
    p.add_argument("profiles")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--pgm")
    p.add_argument("--config")
    _add_common(p, "grid")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("reconstruct", help="end-to-end simulation and inversion")
    p.add_argument("--phantom", help="built-in name or JSON spec (simulate, then invert)")
    p.add_argument("--sinogram", help="stored sinogram to invert")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--metrics", help="write metrics JSON here")
    p.add_argument("--pgm")
    p.add_argument("--config", help="JSON config; flags override its values")
    _add_common(p, "grid", "vertices", "angles", "weight", "lambda", "method", "svd-threshold",
                "noise", "seed", "supersample")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify", help="diagonal zeros, uniqueness condition and Volterra checks")
    p.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    p.add_argument("--weights", type=int, nargs="+", default=[0, 1])
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--a", type=float, default=0.05, help="start of the zero search interval")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="table comparing the two radial integral forms")
    p.add_argument("--profile", choices=["bump", "constant"], default="bump")
    p.add_argument("--radius", type=float, default=0.8)
    p.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    p.add_argument("--weights", type=int, nargs="+", default=[0, 1])
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--psi-count", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        code = args.func(args)
    except (UsageError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"vline-tomo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"vline-tomo: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
