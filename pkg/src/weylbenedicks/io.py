"""Readers and writers for signals, Zak arrays, phase functions, operators,
lattice coefficients, vector fields and factored operators.

CSV floats are written with 17 significant digits; JSON floats use Python's
shortest round-trip repr.  Complex CSV cells look like ``1.5-0.25i``.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .heisenberg import GridSpec
from .weyl import FactoredOperator


class FormatError(ValueError):
    """Malformed input file; the message carries path and line number."""


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def fmt_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_complex(cell: str) -> complex:
    cell = cell.strip()
    if not cell.endswith("i"):
        raise ValueError(f"complex cell must end in 'i': {cell!r}")
    return complex(cell[:-1] + "j")


def _pairs(values) -> list:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex).ravel()]


def _from_pairs(pairs, shape, where: str) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.shape[-1:] != (2,):
        raise FormatError(f"{where}: expected [re, im] pairs")
    out = arr[..., 0] + 1j * arr[..., 1]
    if shape is not None and out.size != int(np.prod(shape)):
        raise FormatError(f"{where}: expected {int(np.prod(shape))} values, got {out.size}")
    return out.reshape(shape) if shape is not None else out


def dump_json(obj, path) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def _load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}: {exc.msg}") from None


def _grid_from(doc: dict, path) -> GridSpec:
    try:
        g = doc["grid"]
        return GridSpec(int(g["M"]), int(g["L"]), int(g["a"]))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: missing or malformed grid header ({exc})") from None


def _fmt_of(path, fmt_: str | None) -> str:
    if fmt_:
        return fmt_
    return "json" if str(path).endswith(".json") else "csv"


# signals

def write_signal(path, grid: GridSpec, phi, format: str | None = None) -> None:
    if _fmt_of(path, format) == "json":
        dump_json({"grid": grid.as_dict(), "values": _pairs(phi)}, path)
        return
    buf = io.StringIO()
    buf.write("re,im\n")
    for z in np.asarray(phi, dtype=complex):
        buf.write(f"{fmt(z.real)},{fmt(z.imag)}\n")
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def read_signal(path, grid: GridSpec | None = None) -> tuple[GridSpec | None, np.ndarray]:
    """Returns (grid from the file header or the given grid, values)."""
    path = Path(path)
    if path.suffix == ".json":
        doc = _load_json(path)
        g = _grid_from(doc, path) if "grid" in doc else grid
        vals = _from_pairs(doc.get("values", []), None, str(path))
    else:
        g = grid
        rows = []
        with path.open(encoding="utf-8", newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or (lineno == 1 and row[0].strip().lower() == "re"):
                    continue
                if len(row) != 2:
                    raise FormatError(f"{path}:{lineno}: expected 2 columns (re, im), got {len(row)}")
                try:
                    rows.append(complex(float(row[0]), float(row[1])))
                except ValueError:
                    raise FormatError(f"{path}:{lineno}: cannot parse {row!r} as numbers") from None
        vals = np.array(rows, dtype=complex)
    if g is not None and vals.shape != (g.d,):
        raise FormatError(f"{path}: signal has {vals.size} samples, grid needs {g.d}")
    return g, vals


# 2-D complex arrays (Zak arrays, Omega functions, phase functions, operators)

def write_matrix(path, grid: GridSpec, A, format: str | None = None, header: bool = False) -> None:
    A = np.asarray(A, dtype=complex)
    if _fmt_of(path, format) == "json":
        dump_json({"grid": grid.as_dict(), "shape": list(A.shape),
                   "values": [_pairs(row) for row in A]}, path)
        return
    buf = io.StringIO()
    if header:
        buf.write(f"M={grid.M},L={grid.L},a={grid.a}\n")
    for row in A:
        buf.write(",".join(fmt_complex(z) for z in row) + "\n")
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def read_matrix(path, grid: GridSpec | None = None, shape=None) -> tuple[GridSpec | None, np.ndarray]:
    path = Path(path)
    if path.suffix == ".json":
        doc = _load_json(path)
        g = _grid_from(doc, path) if "grid" in doc else grid
        A = _from_pairs(doc.get("values", []), tuple(doc.get("shape", ())) or None, str(path))
    else:
        g = grid
        rows = []
        with path.open(encoding="utf-8", newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row:
                    continue
                if lineno == 1 and row[0].startswith("M="):
                    try:
                        kv = dict(c.split("=") for c in row)
                        g = GridSpec(int(kv["M"]), int(kv["L"]), int(kv["a"]))
                    except (ValueError, KeyError):
                        raise FormatError(f"{path}:1: malformed grid header {row!r}") from None
                    continue
                try:
                    rows.append([parse_complex(c) for c in row])
                except ValueError as exc:
                    raise FormatError(f"{path}:{lineno}: {exc}") from None
                if len(rows[-1]) != len(rows[0]):
                    raise FormatError(f"{path}:{lineno}: ragged row ({len(rows[-1])} vs {len(rows[0])} cells)")
        A = np.array(rows, dtype=complex)
    if shape is not None and A.shape != tuple(shape):
        raise FormatError(f"{path}: expected shape {tuple(shape)}, got {A.shape}")
    return g, A


def write_heatmap(path, triples) -> None:
    buf = io.StringIO()
    buf.write("x,y,abs\n")
    for x, y, v in triples:
        buf.write(f"{fmt(x)},{fmt(y)},{fmt(v)}\n")
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


# lattice coefficients

def write_coeffs(path, grid: GridSpec, c, format: str | None = None) -> None:
    c = np.asarray(c, dtype=complex)
    if _fmt_of(path, format) == "json":
        dump_json({"grid": grid.as_dict(), "rows": [[int(k), int(l), float(c[k, l].real), float(c[k, l].imag)]
                                                  for k in range(c.shape[0]) for l in range(c.shape[1])]}, path)
        return
    buf = io.StringIO()
    buf.write("k,l,re,im\n")
    for k in range(c.shape[0]):
        for l in range(c.shape[1]):
            buf.write(f"{k},{l},{fmt(c[k, l].real)},{fmt(c[k, l].imag)}\n")
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def read_coeffs(path, grid: GridSpec) -> np.ndarray:
    K, Lw = grid.a * grid.L, grid.M
    c = np.zeros((K, Lw), dtype=complex)
    with Path(path).open(encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (lineno == 1 and row[0].strip() == "k"):
                continue
            try:
                k, l = int(row[0]), int(row[1])
                c[k, l] = complex(float(row[2]), float(row[3]))
            except (ValueError, IndexError):
                raise FormatError(f"{path}:{lineno}: expected k,l,re,im inside the {K}x{Lw} window") from None
    return c


# vector fields and factored operators

def write_field(path, grid: GridSpec, e) -> None:
    e = np.asarray(e, dtype=complex)
    dump_json({"grid": grid.as_dict(), "shape": list(e.shape), "values": _pairs(e)}, path)


def read_field(path) -> tuple[GridSpec, np.ndarray]:
    doc = _load_json(path)
    return _grid_from(doc, path), _from_pairs(doc["values"], tuple(doc["shape"]), str(path))


def write_factors(path, X: FactoredOperator) -> None:
    dump_json({"grid": X.grid.as_dict(),
               "factors": [{"phi": _pairs(phi), "psi": _pairs(psi)} for phi, psi in X.factors]}, path)


def read_factors(path) -> FactoredOperator:
    doc = _load_json(path)
    grid = _grid_from(doc, path)
    factors = []
    for i, fac in enumerate(doc.get("factors", [])):
        where = f"{path}: factor {i}"
        try:
            factors.append((_from_pairs(fac["phi"], (grid.d,), where),
                            _from_pairs(fac["psi"], (grid.d,), where)))
        except KeyError as exc:
            raise FormatError(f"{where}: missing {exc}") from None
    return FactoredOperator(grid, factors)


# pipeline reports

def write_report_csv(path, reports) -> None:
    buf = io.StringIO()
    buf.write("threshold,measure,v_x,v_y,N_v,norm,sigma_min,residual,verdict\n")
    for rep in reports:
        for r in rep.records:
            buf.write(",".join([fmt(rep.threshold), fmt(rep.support_measure), fmt(r.v_x), fmt(r.v_y),
                                str(r.section_size), fmt(r.norm), fmt(r.sigma_min), fmt(r.residual),
                                rep.verdict]) + "\n")
    Path(path).write_text(buf.getvalue(), encoding="utf-8")
