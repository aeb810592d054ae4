"""Command-line entry point: ``weylbenedicks <command> [options]``.

Exit codes: 0 success, 1 a verification check failed, 2 configuration or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io as wio
from .benedicks import default_v_sample, run_pipeline
from .heisenberg import GridSpec
from .periodization import fw_coeffs, periodize
from .suites import SUITES, ConfigError, run_suite
from .weyl import alpha_full, heatmap_triples, weyl_transform
from .zak import zak_forward, zak_inverse

DEFAULT_GRID = "8,4,2"


class InputError(Exception):
    pass


def _resolve(args, config: dict, key: str, default=None):
    val = getattr(args, key, None)
    if val is not None:
        return val
    return config.get(key, default)


def _grid(args, config, file_grid: GridSpec | None = None) -> GridSpec:
    g = args.grid if args.grid is not None else config.get("grid")
    if g is None:
        return file_grid if file_grid is not None else GridSpec.parse(DEFAULT_GRID)
    if isinstance(g, dict):
        return GridSpec(int(g["M"]), int(g["L"]), int(g["a"]))
    return GridSpec.parse(str(g))


def _input(args, config) -> Path:
    p = _resolve(args, config, "in_path") or config.get("in")
    if p is None:
        raise InputError("missing --in PATH")
    p = Path(p)
    if not p.exists():
        raise InputError(f"input file not found: {p}")
    return p


def _output(args, config) -> Path | None:
    p = _resolve(args, config, "out_path") or config.get("out")
    return Path(p) if p else None


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _is_factor_file(path: Path) -> bool:
    if path.suffix != ".json":
        return False
    try:
        return "factors" in json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError:
        return False


def _load_operator(path: Path, args, config):
    if _is_factor_file(path):
        X = wio.read_factors(path)
        return X.grid, X.matrix()
    file_grid, A = wio.read_matrix(path, shape=None)
    grid = _grid(args, config, file_grid)
    if A.shape != (grid.d, grid.d):
        raise wio.FormatError(f"{path}: operator shape {A.shape} does not match d={grid.d}")
    return grid, A


def cmd_zak(args, config) -> int:
    path = _input(args, config)
    out = _output(args, config)
    fmt = _resolve(args, config, "format")
    if args.inverse:
        file_grid, F = wio.read_matrix(path)
        grid = _grid(args, config, file_grid)
        if F.shape != (grid.L, grid.M):
            raise wio.FormatError(f"{path}: Zak array shape {F.shape} does not match {(grid.L, grid.M)}")
        phi = zak_inverse(grid, F)
        if out:
            wio.write_signal(out, grid, phi, fmt)
        _emit({"command": "zak", "inverse": True, "grid": grid.as_dict(), "samples": grid.d})
        return 0
    file_grid, phi = wio.read_signal(path)
    grid = _grid(args, config, file_grid)
    if phi.shape != (grid.d,):
        raise wio.FormatError(f"{path}: signal has {phi.size} samples, grid needs {grid.d}")
    Z = zak_forward(grid, phi)
    if out:
        wio.write_matrix(out, grid, Z, fmt)
    summary = {"command": "zak", "grid": grid.as_dict(), "shape": [grid.L, grid.M]}
    if args.roundtrip:
        summary["round_trip_residual"] = float(np.abs(zak_inverse(grid, Z) - phi).max())
    _emit(summary)
    return 0


def cmd_weyl(args, config) -> int:
    path = _input(args, config)
    file_grid, f = wio.read_matrix(path)
    grid = _grid(args, config, file_grid)
    if f.shape != (grid.d, grid.d):
        raise wio.FormatError(f"{path}: phase function shape {f.shape} does not match d={grid.d}")
    W = weyl_transform(grid, f)
    out = _output(args, config)
    if out:
        wio.write_matrix(out, grid, W, _resolve(args, config, "format"), header=True)
    _emit({"command": "weyl", "grid": grid.as_dict(), "trace": [W.trace().real, W.trace().imag]})
    return 0


def cmd_alpha(args, config) -> int:
    grid, X = _load_operator(_input(args, config), args, config)
    A = alpha_full(grid, X)
    out = _output(args, config)
    if out:
        wio.write_matrix(out, grid, A, _resolve(args, config, "format"), header=True)
    if args.heatmap:
        wio.write_heatmap(args.heatmap, heatmap_triples(grid, A))
    _emit({"command": "alpha", "grid": grid.as_dict(), "max_abs": float(np.abs(A).max())})
    return 0


def cmd_periodize(args, config) -> int:
    path = _input(args, config)
    if not _is_factor_file(path):
        raise InputError(f"{path}: periodize needs a JSON factor file")
    X = wio.read_factors(path)
    Xt = periodize(X)
    out = _output(args, config)
    if out:
        wio.write_matrix(out, X.grid, Xt, _resolve(args, config, "format"), header=True)
    _emit({"command": "periodize", "grid": X.grid.as_dict(), "factors": len(X.factors),
           "norm": float(np.linalg.norm(Xt, 2))})
    return 0


def cmd_coeffs(args, config) -> int:
    path = _input(args, config)
    if _is_factor_file(path):
        X = wio.read_factors(path)
        grid, T = X.grid, periodize(X)
    else:
        grid, T = _load_operator(path, args, config)
    c = fw_coeffs(grid, T)
    out = _output(args, config)
    if out:
        wio.write_coeffs(out, grid, c, _resolve(args, config, "format"))
    _emit({"command": "coeffs", "grid": grid.as_dict(), "window": list(c.shape),
           "sum_abs_squared": float(np.sum(np.abs(c) ** 2))})
    return 0


def cmd_verify(args, config) -> int:
    name = args.suite
    if name not in SUITES:
        raise ConfigError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    grid = _grid(args, config)
    seed = _resolve(args, config, "seed")
    report = run_suite(name, grid, seed=seed, tol=_resolve(args, config, "tol"),
                       rank=_resolve(args, config, "rank"))
    text = json.dumps(report, indent=2) + "\n"
    out = _output(args, config)
    if out:
        out.write_text(text, encoding="utf-8")
    for c in report["checks"]:
        status = "PASS" if c["passed"] else "FAIL"
        print(f"{status} {c['name']}: max_error={wio.fmt(c['max_error'])} tol={wio.fmt(c['tolerance'])}",
              file=sys.stderr)
    if not out:
        sys.stdout.write(text)
    return 0 if report["passed"] else 1


def cmd_benedicks(args, config) -> int:
    path = _input(args, config)
    if not _is_factor_file(path):
        raise InputError(f"{path}: benedicks needs a JSON factor file")
    X = wio.read_factors(path)
    rank = X.rank()
    if X.grid.a <= rank:
        raise ConfigError(f"need a > rank(X): a={X.grid.a}, rank={rank}")
    thresholds = _resolve(args, config, "threshold", "0")
    if isinstance(thresholds, str):
        thresholds = [float(t) for t in thresholds.split(",")]
    elif not isinstance(thresholds, list):
        thresholds = [float(thresholds)]
    vs = default_v_sample(X.grid, int(_resolve(args, config, "vgrid", 8)))
    reports = [run_pipeline(X, t, vs) for t in thresholds]
    doc = {"command": "benedicks", "reports": [r.to_dict() for r in reports]}
    out = _output(args, config)
    if out:
        wio.dump_json(doc, out)
    if args.csv:
        wio.write_report_csv(args.csv, reports)
    _emit({"command": "benedicks",
           "verdicts": [{"threshold": r.threshold, "measure": r.support_measure, "verdict": r.verdict}
                        for r in reports]})
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON run configuration; flags override it")
    common.add_argument("--grid", help="M,L,a (default 8,4,2)")
    common.add_argument("--seed", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--in", dest="in_path")
    common.add_argument("--out", dest="out_path")
    common.add_argument("--format", choices=["csv", "json"])

    parser = argparse.ArgumentParser(prog="weylbenedicks", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zak", parents=[common], help="Zak transform of a signal")
    p.add_argument("--inverse", action="store_true", help="input is a Zak array; write the signal")
    p.add_argument("--roundtrip", action="store_true", help="print the inverse round-trip residual")
    p.set_defaults(func=cmd_zak)

    p = sub.add_parser("weyl", parents=[common], help="Weyl transform of a phase function")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("alpha", parents=[common], help="Fourier-Wigner transform of an operator")
    p.add_argument("--heatmap", type=Path, help="also write (x, y, |alpha|) triples")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("periodize", parents=[common], help="periodization of a factored operator")
    p.set_defaults(func=cmd_periodize)

    p = sub.add_parser("coeffs", parents=[common], help="Fourier-Wigner coefficients on the dual lattice")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--rank", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("benedicks", parents=[common], help="run the shift/periodize/reconstruct pipeline")
    p.add_argument("--threshold", help="support threshold, or a comma-separated sweep")
    p.add_argument("--vgrid", type=int, help="side of the v-sample sub-grid (default 8)")
    p.add_argument("--csv", type=Path, help="summary table path")
    p.set_defaults(func=cmd_benedicks)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = {}
        if args.config is not None:
            if not args.config.exists():
                raise InputError(f"config file not found: {args.config}")
            config = json.loads(args.config.read_text(encoding="utf-8"))
        return args.func(args, config)
    except (InputError, ValueError) as exc:
        # GridError, ConfigError, FormatError and JSONDecodeError are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
