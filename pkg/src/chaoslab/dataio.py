"""Deterministic data exchange: binary matrix dumps, complex CSV, config
records for maps and ensembles, and run manifests.

All writers are byte-deterministic for fixed inputs: floats are rendered
with repr-faithful %.17g, JSON keys are sorted, and no timestamps enter any
output file.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .maps import CoupledMapParams, MapParams

__all__ = [
    "save_matrix_dump",
    "load_matrix_dump",
    "save_complex_csv",
    "load_complex_csv",
    "write_csv",
    "write_json",
    "map_config_to_dict",
    "map_config_from_dict",
    "write_manifest",
]

MANIFEST_SCHEMA_VERSION = 1


def save_matrix_dump(path, matrix: np.ndarray) -> None:
    """Row-major little-endian float64 (re, im) pairs, no header."""
    m = np.ascontiguousarray(np.asarray(matrix, dtype=complex))
    out = np.empty(m.shape + (2,), dtype="<f8")
    out[..., 0] = m.real
    out[..., 1] = m.imag
    Path(path).write_bytes(out.tobytes())


def load_matrix_dump(path, rows: int, cols: int) -> np.ndarray:
    raw = np.frombuffer(Path(path).read_bytes(), dtype="<f8")
    if raw.size != rows * cols * 2:
        raise ValueError(f"dump holds {raw.size} floats, expected {rows * cols * 2}")
    pairs = raw.reshape(rows, cols, 2)
    return pairs[..., 0] + 1j * pairs[..., 1]


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.17g" % float(x)
    return str(x)


def save_complex_csv(path, matrix: np.ndarray) -> None:
    """Entries in row-major order, two columns (re, im) with a header."""
    m = np.asarray(matrix, dtype=complex).reshape(-1)
    lines = ["re,im"]
    lines += [f"{_fmt(z.real)},{_fmt(z.imag)}" for z in m]
    Path(path).write_text("\n".join(lines) + "\n")


def load_complex_csv(path, shape=None) -> np.ndarray:
    rows = Path(path).read_text().strip().split("\n")[1:]
    vals = np.array([complex(*map(float, r.split(","))) for r in rows])
    return vals if shape is None else vals.reshape(shape)


def write_csv(path, columns: dict) -> None:
    """Column-dict CSV with deterministic float formatting."""
    names = list(columns)
    arrays = [np.atleast_1d(np.asarray(columns[n])) for n in names]
    n = len(arrays[0])
    if any(len(a) != n for a in arrays):
        raise ValueError("columns must have equal length")
    lines = [",".join(names)]
    for i in range(n):
        lines.append(",".join(_fmt(a[i]) for a in arrays))
    Path(path).write_text("\n".join(lines) + "\n")


def _jsonable(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


def write_json(path, payload: dict) -> None:
    Path(path).write_text(
        json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n")


def map_config_to_dict(params) -> dict:
    if isinstance(params, MapParams):
        return {"kind": "standard", **params.to_dict()}
    if isinstance(params, CoupledMapParams):
        return {"kind": "coupled", **params.to_dict()}
    raise TypeError(f"unsupported params type {type(params)!r}")


def map_config_from_dict(d: dict):
    kind = d.get("kind", "standard")
    if kind == "standard":
        return MapParams(N=int(d["N"]), K=float(d["K"]),
                         alpha=float(d.get("alpha", 0.5)),
                         beta=float(d.get("beta", 0.0)))
    if kind == "baker":
        return MapParams(N=int(d["N"]), K=0.0, alpha=0.5, beta=0.5)
    if kind == "coupled":
        return CoupledMapParams(N=int(d["N"]), K1=float(d["K1"]),
                                K2=float(d["K2"]), b=float(d["b"]),
                                alpha=float(d.get("alpha", 0.5)),
                                beta=float(d.get("beta", 0.0)))
    raise ValueError(f"unknown map kind {kind!r}")


def write_manifest(out_dir, command: str, params: dict, seed) -> None:
    """Run manifest: command, parameters, seed, library version, schema."""
    from . import __version__
    write_json(Path(out_dir) / "manifest.json", {
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "command": command,
        "params": params,
        "seed": seed,
        "version": __version__,
    })
