"""Suite orchestration: configuration, case registry, reports, file outputs.

A run is driven by one JSON config (see ``schema/config.json``). Every
suite is a list of registered case functions; each returns one or more
case records ``{identity, params, residual, tolerance, passed}`` and may
add convergence slopes. Cases are independent and are dispatched to a
process pool whose size comes from ``KAPPA_STAR_THREADS`` (default: the
CPU count). Results are assembled in registry order, so the report does
not depend on the worker count.

Each case carries a ``criterion`` tag naming the acceptance criterion it
belongs to (``null`` for supporting checks).
"""

from __future__ import annotations

import copy
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import KappaStarError, UsageError

SCHEMA_VERSION = "1.0"

DEFAULT_CONFIG = {
    "grids": {
        "v": {"lo": -4.0, "hi": 4.0, "n": 129},
        "b": {"lo": -12.0, "hi": 12.0, "n": 513},
        "s": {"lo": -math.log(12.0), "hi": 12.0, "n": 257},
        "v_boost": {"lo": -2.0, "hi": 2.0, "n": 1025},
        "b_boost": {"lo": -12.0, "hi": 12.0, "n": 1025},
    },
    "family": {
        "count": 8,
        "V_range": [0.5, 1.5],
        "sigma_range": [0.5, 1.5],
        "center_range": [-3.0, 3.0],
        "seed": 1234,
    },
    "kappa_list": [1.0, 2.0],
    "phi_list": ["right", "left", "symmetric", "agostini"],
    "q": 1.0,
    "series_orders": [1, 2, 3],
    "tolerances": {},
    "suites": [
        "numerics",
        "symbols",
        "poly_exact",
        "star_core",
        "quantization",
        "phi_family",
        "poincare",
        "series",
        "moyal",
    ],
    "levels": 3,
}

ALL_SUITES = tuple(DEFAULT_CONFIG["suites"]) + ("convergence",)


# -- configuration ---------------------------------------------------------------

def load_schema() -> dict:
    return json.loads(resources.files("kappa_star").joinpath("schema/config.json").read_text())


def _pointer(path) -> str:
    return "".join(f"/{p}" for p in path)


def _merge(base: dict, over: dict) -> dict:
    out = copy.deepcopy(base)
    for k, v in over.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _merge(out[k], v)
        else:
            out[k] = copy.deepcopy(v)
    return out


def validate_config(config: dict) -> dict:
    """Validate against the schema and fill defaults.

    Raises :class:`UsageError` whose ``pointer`` locates the first offending
    value.
    """
    import jsonschema

    validator = jsonschema.Draft7Validator(load_schema())
    errors = sorted(validator.iter_errors(config), key=lambda e: (list(e.absolute_path), e.message))
    if errors:
        e = errors[0]
        raise UsageError(e.message, _pointer(e.absolute_path))
    cfg = _merge(DEFAULT_CONFIG, config)
    for name in cfg["suites"]:
        if name not in ALL_SUITES:
            raise UsageError(f"unknown suite {name!r}", f"/suites/{cfg['suites'].index(name)}")
    for key in ("V_range", "sigma_range", "center_range"):
        lo, hi = cfg["family"][key]
        if lo > hi:
            raise UsageError(f"{key} must be increasing", f"/family/{key}")
    for name, g in cfg["grids"].items():
        if not g["hi"] > g["lo"]:
            raise UsageError(f"grid needs hi > lo, got [{g['lo']}, {g['hi']}]", f"/grids/{name}")
        if name != "s" and not _grid(g).symmetric:
            raise UsageError("symbol grids must be symmetric about 0 with an odd point count", f"/grids/{name}")
    return cfg


def load_config(path) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}", "") from None
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}", "") from None
    return validate_config(raw)


# -- reports ---------------------------------------------------------------------

@dataclass
class SuiteReport:
    suite: str
    cases: list = field(default_factory=list)
    resolution: dict = field(default_factory=dict)
    wallclock: float = 0.0
    slopes: list = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.cases)

    def as_dict(self, timing: bool = True) -> dict:
        d = {
            "schema_version": self.schema_version,
            "suite": self.suite,
            "passed": self.passed,
            "resolution": self.resolution,
            "cases": self.cases,
            "slopes": self.slopes,
        }
        if timing:
            d["wallclock"] = self.wallclock
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=True, allow_nan=True) + "\n"

    def by_criterion(self) -> dict:
        out: dict = {}
        for c in self.cases:
            out.setdefault(c.get("criterion"), []).append(c)
        return out


def _num(x):
    """JSON-friendly number: floats keep full precision, complex becomes [re, im]."""
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    return x


def make_case(identity: str, residual, tolerance: float, params: dict | None = None,
              criterion: int | None = None) -> dict:
    residual = float(residual)
    return {
        "identity": identity,
        "params": _num(params or {}),
        "residual": residual,
        "tolerance": float(tolerance),
        "passed": bool(residual <= tolerance),
        "criterion": criterion,
    }


def failed_case(identity: str, tolerance: float, params: dict, reason: str, criterion=None) -> dict:
    return {
        "identity": identity,
        "params": _num(params),
        "residual": None,
        "tolerance": float(tolerance),
        "passed": False,
        "criterion": criterion,
        "error": reason,
    }


# -- shared context ----------------------------------------------------------------

def _grid(d):
    from .numerics import Grid1D

    return Grid1D(float(d["lo"]), float(d["hi"]), int(d["n"]))


def _key(cfg: dict) -> str:
    return json.dumps(cfg, sort_keys=True)


@lru_cache(maxsize=16)
def _family_params_cached(key: str, which: str):
    from .symbols import family_params

    cfg = json.loads(key)
    fam = cfg["family"]
    vg = _grid(cfg["grids"]["v_boost" if which == "boost" else "v"])
    bg = _grid(cfg["grids"]["b_boost" if which == "boost" else "b"])
    return tuple(family_params(
        int(fam["count"]),
        V_range=tuple(fam["V_range"]),
        sigma_range=tuple(fam["sigma_range"]),
        center_range=tuple(fam["center_range"]),
        seed=int(fam["seed"]),
        vgrid=vg,
        bgrid=bg,
        stretch=1.2 if which == "boost" else 1.0,
    ))


class Context:
    """Grids, family and tolerances derived from one validated config."""

    def __init__(self, cfg: dict):
        self.cfg = cfg
        g = cfg["grids"]
        self.vgrid = _grid(g["v"])
        self.bgrid = _grid(g["b"])
        self.sgrid = _grid(g["s"])
        self.v_boost = _grid(g["v_boost"])
        self.b_boost = _grid(g["b_boost"])
        self._key = _key(cfg)

    def tol(self, identity: str, default: float) -> float:
        return float(self.cfg["tolerances"].get(identity, default))

    def params(self, which: str = "ref"):
        return _family_params_cached(self._key, which)

    def family(self, which: str = "ref", vgrid=None, bgrid=None):
        ps = self.params(which)
        if which == "boost":
            vgrid, bgrid = vgrid or self.v_boost, bgrid or self.b_boost
        else:
            vgrid, bgrid = vgrid or self.vgrid, bgrid or self.bgrid
        return [p.build(vgrid, bgrid) for p in ps]

    def pairs(self, which: str = "ref", k: int = 3) -> list[tuple[int, int]]:
        """First ``k`` index pairs whose beta profiles overlap, so that their
        products are not vanishingly small."""
        ps = self.params(which)
        out = []
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                if abs(ps[i].center_b - ps[j].center_b) <= ps[i].sigma + ps[j].sigma:
                    out.append((i, j))
        if len(out) < k:
            out += [(i, i + 1) for i in range(0, len(ps) - 1) if (i, i + 1) not in out]
        return out[:k]

    def triples(self, which: str = "ref", k: int = 2) -> list[tuple[int, int, int]]:
        ps = self.params(which)
        out = []
        n = len(ps)
        for i in range(n):
            for j in range(n):
                for m in range(n):
                    if len({i, j, m}) < 3:
                        continue
                    c = [ps[x].center_b for x in (i, j, m)]
                    s = [ps[x].sigma for x in (i, j, m)]
                    if max(c) - min(c) <= min(s) + max(s):
                        out.append((i, j, m))
                    if len(out) == k:
                        return out
        return out or [(0, 1, 2)]


# -- registry ------------------------------------------------------------------------

@dataclass(frozen=True)
class CaseSpec:
    suite: str
    name: str
    func: Callable


REGISTRY: list[CaseSpec] = []


def case(suite: str):
    def deco(fn):
        REGISTRY.append(CaseSpec(suite, fn.__name__, fn))
        return fn

    return deco


def _run_spec(args):
    """Worker entry point: run one registered case function."""
    suite, name, cfg = args
    spec = next(s for s in REGISTRY if s.suite == suite and s.name == name)
    ctx = Context(cfg)
    try:
        out = spec.func(ctx)
    except KappaStarError as exc:
        return [failed_case(f"{suite}.{name}", 0.0, {}, f"{type(exc).__name__}: {exc}")], []
    cases, slopes = (out if isinstance(out, tuple) else (out, []))
    return cases, slopes


def worker_count() -> int:
    env = os.environ.get("KAPPA_STAR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError("KAPPA_STAR_THREADS must be a positive integer", "") from None
    return max(1, os.cpu_count() or 1)


def _resolution(cfg: dict) -> dict:
    g = cfg["grids"]
    return {"vgrid": g["v"], "bgrid": g["b"], "sgrid": g["s"],
            "boost_vgrid": g["v_boost"], "boost_bgrid": g["b_boost"]}


def run_suite(config: dict, suites=None) -> SuiteReport:
    """Run the configured suites (or ``suites``) and return one report."""
    cfg = validate_config(config)
    names = list(suites if suites is not None else cfg["suites"])
    for n in names:
        if n not in ALL_SUITES:
            raise UsageError(f"unknown suite {n!r}", "/suites")
    _load_cases()
    jobs = [(s.suite, s.name, cfg) for n in names for s in REGISTRY if s.suite == n]
    t0 = time.perf_counter()
    workers = min(worker_count(), max(1, len(jobs)))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_spec, jobs))
    else:
        results = [_run_spec(j) for j in jobs]
    report = SuiteReport("+".join(names) if names else "empty", resolution=_resolution(cfg))
    for cases, slopes in results:
        report.cases.extend(cases)
        report.slopes.extend(slopes)
    report.wallclock = time.perf_counter() - t0
    return report


def _load_cases():
    from . import cases  # noqa: F401  (registers the case functions)


# -- file outputs ------------------------------------------------------------------------

def _symbol_from_spec(spec: dict, vgrid, bgrid):
    from .symbols import make_bump_gaussian, zero_symbol

    if spec.get("zero"):
        return zero_symbol(vgrid, bgrid)
    amp = spec.get("amp", 1.0)
    if isinstance(amp, list):
        amp = complex(amp[0], amp[1])
    return make_bump_gaussian(
        float(spec.get("V", 1.0)),
        float(spec.get("center_b", 0.0)),
        float(spec.get("sigma", 1.0)),
        amp,
        int(spec.get("bmoment", 0)),
        vgrid,
        bgrid,
        alpha0=float(spec.get("alpha0", 0.0)),
    )


def compute_product(config: dict, out_dir) -> list[Path]:
    """Build ``product.f`` (and ``product.g``), apply ``product.op`` and write
    CSV + JSON side-files into ``out_dir``."""
    from . import io
    from .phi import involution_phi, star_phi, star_series
    from .star import antipode, involution_left, involution_right, pointwise_product, star_kappa, star_left

    cfg = validate_config(config)
    spec = cfg.get("product")
    if not spec:
        raise UsageError("config has no 'product' section", "/product")
    vg, bg = _grid(cfg["grids"]["v"]), _grid(cfg["grids"]["b"])
    f = _symbol_from_spec(spec["f"], vg, bg)
    g = _symbol_from_spec(spec.get("g", spec["f"]), vg, bg)
    op = spec.get("op", "right")
    kappa = float(spec.get("kappa", 1.0))
    phi = spec.get("phi", "right")
    if op == "right":
        out = star_kappa(f, g, 1.0)
    elif op == "left":
        out = star_left(f, g)
    elif op == "kappa":
        out = star_kappa(f, g, kappa)
    elif op == "phi":
        out = star_phi(f, g, phi)
    elif op == "series":
        out = star_series(f, g, kappa, int(spec.get("order", 1)))
    elif op == "pointwise":
        out = pointwise_product(f, g)
    elif op == "involution":
        out = involution_right(f, kappa)
    elif op == "involution_left":
        out = involution_left(f)
    elif op == "involution_phi":
        out = involution_phi(f, phi)
    elif op == "antipode":
        out = antipode(f, kappa)
    else:
        raise UsageError(f"unknown product op {op!r}", "/product/op")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = [io.write_symbol(f, out_dir / "f.csv")]
    if op not in ("involution", "involution_left", "involution_phi", "antipode"):
        paths.append(io.write_symbol(g, out_dir / "g.csv"))
    paths.append(io.write_symbol(out, out_dir / "result.csv"))
    return paths


def compute_kernel(config: dict, out_dir) -> list[Path]:
    """Write the quantization kernel of ``kernel.f`` for ``kernel.sign`` and
    ``kernel.phi``."""
    from . import io
    from .quantization import kernel_sgrid, weyl_kernel

    cfg = validate_config(config)
    spec = cfg.get("kernel")
    if not spec:
        raise UsageError("config has no 'kernel' section", "/kernel")
    vg, bg = _grid(cfg["grids"]["v"]), _grid(cfg["grids"]["b"])
    f = _symbol_from_spec(spec["f"], vg, bg)
    s = cfg["grids"]["s"]
    sg = kernel_sgrid(vg, float(s["lo"]), float(s["hi"]))
    K = weyl_kernel(f, spec.get("sign", "plus"), spec.get("phi", "right"), sgrid=sg)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return [io.write_symbol(f, out_dir / "symbol.csv"), io.write_kernel(K, out_dir / "kernel.csv")]


def convergence(config: dict, levels: int | None = None) -> SuiteReport:
    cfg = validate_config(config)
    if levels is not None:
        if int(levels) < 2:
            raise UsageError("levels must be at least 2", "/levels")
        cfg["levels"] = int(levels)
    return run_suite(cfg, suites=["convergence"])


__all__ = [
    "DEFAULT_CONFIG",
    "SuiteReport",
    "validate_config",
    "load_config",
    "run_suite",
    "compute_product",
    "compute_kernel",
    "convergence",
    "worker_count",
    "make_case",
]
