"""CSV + JSON side-file serialization for symbols and kernels.

Symbols are written one row per grid node with header ``v,beta,re,im``;
kernels with ``s,u,re,im``. Floats are written with ``repr`` so that a
write/read round trip reproduces every value bit for bit. The side-file
shares the CSV's stem and carries the grids.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import ContractError
from .numerics import Grid1D
from .quantization import OperatorKernel
from .symbols import BandLimitedSymbol

SYMBOL_HEADER = ("v", "beta", "re", "im")
KERNEL_HEADER = ("s", "u", "re", "im")


def side_file(path) -> Path:
    return Path(path).with_suffix(".json")


def _write_matrix(path: Path, header, ax0, ax1, values) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for i, x in enumerate(ax0):
            rx = repr(float(x))
            row = values[i]
            for j, y in enumerate(ax1):
                z = row[j]
                w.writerow((rx, repr(float(y)), repr(float(z.real)), repr(float(z.imag))))


def _read_matrix(path: Path, header, n0: int, n1: int) -> np.ndarray:
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        got = tuple(next(r))
        if got != tuple(header):
            raise ContractError(f"{path}: expected header {','.join(header)}, got {','.join(got)}")
        flat = np.array([(float(row[2]), float(row[3])) for row in r], dtype=float)
    if flat.shape[0] != n0 * n1:
        raise ContractError(f"{path}: {flat.shape[0]} rows, grids need {n0 * n1}")
    return (flat[:, 0] + 1j * flat[:, 1]).reshape(n0, n1)


def _dump_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_symbol(f: BandLimitedSymbol, path) -> Path:
    path = Path(path)
    _write_matrix(path, SYMBOL_HEADER, f.v, f.beta, np.asarray(f.values))
    _dump_json(side_file(path), {
        "vgrid": f.vgrid.as_dict(),
        "bgrid": f.bgrid.as_dict(),
        "support": [float(f.support[0]), float(f.support[1])],
    })
    return path


def read_symbol(path) -> BandLimitedSymbol:
    path = Path(path)
    meta = json.loads(side_file(path).read_text())
    vg = Grid1D.from_dict(meta["vgrid"])
    bg = Grid1D.from_dict(meta["bgrid"])
    vals = _read_matrix(path, SYMBOL_HEADER, vg.n, bg.n)
    return BandLimitedSymbol(vg, bg, vals, tuple(meta["support"]))


def write_kernel(K: OperatorKernel, path) -> Path:
    path = Path(path)
    _write_matrix(path, KERNEL_HEADER, K.sgrid.points, K.ugrid.points, K.values)
    _dump_json(side_file(path), {
        "sgrid": K.sgrid.as_dict(),
        "ugrid": K.ugrid.as_dict(),
        "sign": K.sign,
        "phi": K.phi,
    })
    return path


def read_kernel(path) -> OperatorKernel:
    path = Path(path)
    meta = json.loads(side_file(path).read_text())
    sg = Grid1D.from_dict(meta["sgrid"])
    ug = Grid1D.from_dict(meta["ugrid"])
    vals = _read_matrix(path, KERNEL_HEADER, sg.n, ug.n)
    return OperatorKernel(sg, ug, vals, meta["sign"], meta["phi"])


__all__ = ["write_symbol", "read_symbol", "write_kernel", "read_kernel", "side_file"]
