"""Acceptance criteria, one test per criterion.

A single full default run is shared by criteria 1 to 11; criterion 12
reruns it and compares the reports byte for byte. Each test prints one
``criterion N: PASS|FAIL`` line, repeated in the terminal summary.
"""

import time

import pytest

from kappa_star.harness import run_suite, validate_config

TITLES = {
    1: "exact polynomial subalgebra",
    2: "product against the direct oracle",
    3: "associativity and antihomomorphism",
    4: "Hilbert-Schmidt identity",
    5: "trace identity",
    6: "operator homomorphism",
    7: "transport isomorphism",
    8: "kappa-Poincare module structure",
    9: "twisted trace",
    10: "star series truncation",
    11: "Moyal baseline",
    12: "determinism and runtime",
}


def _report(log, n, ok, detail):
    line = f"criterion {n:2d} ({TITLES[n]}): {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    log.append(line)


@pytest.fixture(scope="session")
def full_run():
    return run_suite(validate_config({}))


@pytest.mark.parametrize("n", range(2, 12))
def test_criterion(n, full_run, acceptance_log):
    cases = full_run.by_criterion().get(n, [])
    bad = [c["identity"] for c in cases if not c["passed"]]
    worst = max((c["residual"] / c["tolerance"] for c in cases if c["residual"] is not None and c["tolerance"] > 0),
                default=float("nan"))
    ok = bool(cases) and not bad
    _report(acceptance_log, n, ok, f"{len(cases)} cases, worst residual/tolerance {worst:.3g}" + (f", failed {bad}" if bad else ""))
    assert cases, f"no cases tagged with criterion {n}"
    assert not bad


def test_criterion_1_exact_and_fast(full_run, acceptance_log):
    cases = full_run.by_criterion().get(1, [])
    t0 = time.perf_counter()
    alone = run_suite(validate_config({}), ["poly_exact"])
    elapsed = time.perf_counter() - t0
    ok = bool(cases) and all(c["passed"] and c["residual"] == 0 for c in cases) and alone.passed and elapsed < 10.0
    _report(acceptance_log, 1, ok, f"{len(cases)} cases with zero residual, {elapsed:.2f} s alone")
    assert ok


def test_criterion_12_determinism(full_run, acceptance_log):
    second = run_suite(validate_config({}))
    same = full_run.to_json(timing=False) == second.to_json(timing=False)
    fast = max(full_run.wallclock, second.wallclock) < 300.0
    _report(acceptance_log, 12, same and fast, f"byte-identical={same}, wallclock {full_run.wallclock:.1f} s / {second.wallclock:.1f} s")
    assert same
    assert fast
