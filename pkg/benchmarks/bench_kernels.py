"""Compiled versus numpy kernels on reference-size inputs.

Run from the repository root::

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Both implementations are imported directly (independently of the backend
picked at import time) and must agree to rounding before timings count.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from kappa_star import _kernels_py
from kappa_star.symbols import BGRID_REF, VGRID_REF, test_family
from kappa_star.star import nonzero_rows

try:
    from kappa_star import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def _best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(vgrid, bgrid):
    f, g = test_family(2, vgrid=vgrid, bgrid=bgrid)
    rows_f, rows_g = nonzero_rows(f), nonzero_rows(g)
    factors = np.exp(-f.v)[rows_f]  # one factor per listed row
    conv = (f.values, g.values, rows_f, rows_g, f.v, 1.0, bgrid.lo, bgrid.h, 6)
    dil = (f.values, rows_f, factors, bgrid.lo, bgrid.h, 6)
    return {"twisted_conv": conv, "dilate_rows": dil}


def run(repeat: int = 3, sizes=((VGRID_REF, BGRID_REF), (VGRID_REF.refined(2), BGRID_REF.refined(2)))):
    rows = []
    for vg, bg in sizes:
        for name, args in _cases(vg, bg).items():
            py = getattr(_kernels_py, name)
            ref = py(*args)
            row = {"kernel": name, "nv": vg.n, "nb": bg.n, "numpy_s": _best_of(lambda: py(*args), repeat)}
            if _compiled is not None:
                cy = getattr(_compiled, name)
                got = cy(*args)
                scale = max(float(np.max(np.abs(ref))), 1e-300)
                row["max_rel_diff"] = float(np.max(np.abs(got - ref))) / scale
                row["compiled_s"] = _best_of(lambda: cy(*args), repeat)
                row["speedup"] = row["numpy_s"] / row["compiled_s"]
            rows.append(row)
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="also write the rows as JSON")
    args = ap.parse_args(argv)
    rows = run(args.repeat)
    if _compiled is None:
        print("compiled extension not built; numpy timings only")
    print(f"{'kernel':<14}{'grid':>12}{'numpy [s]':>12}{'compiled [s]':>14}{'speedup':>9}{'rel diff':>11}")
    for r in rows:
        grid = f"{r['nv']}x{r['nb']}"
        cs = f"{r['compiled_s']:.4f}" if "compiled_s" in r else "-"
        sp = f"{r['speedup']:.1f}x" if "speedup" in r else "-"
        dd = f"{r['max_rel_diff']:.1e}" if "max_rel_diff" in r else "-"
        print(f"{r['kernel']:<14}{grid:>12}{r['numpy_s']:>12.4f}{cs:>14}{sp:>9}{dd:>11}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
