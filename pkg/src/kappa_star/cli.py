"""Command-line entry point: ``kappa-star`` (or ``python -m kappa_star``).

Subcommands::

    suite run    --config CFG --out REPORT.json
    product      --config CFG --out-dir DIR
    kernel       --config CFG --out-dir DIR
    convergence  --config CFG --levels K --out REPORT.json

``suite run`` and ``convergence`` exit 0 iff every case passed. Bad
configuration exits 2 with the offending JSON pointer.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness
from .errors import KappaStarError, UsageError


def _config(path):
    return harness.load_config(path) if path else harness.validate_config({})


def _write_report(report, out) -> int:
    text = report.to_json()
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    failed = [c["identity"] for c in report.cases if not c["passed"]]
    status = "passed" if not failed else f"{len(failed)} failed"
    print(f"{len(report.cases)} cases, {status}, {report.wallclock:.1f} s", file=sys.stderr)
    for name in failed:
        print(f"  FAILED {name}", file=sys.stderr)
    return 0 if report.passed else 1


def _cmd_suite(args) -> int:
    return _write_report(harness.run_suite(_config(args.config)), args.out)


def _cmd_convergence(args) -> int:
    return _write_report(harness.convergence(_config(args.config), args.levels), args.out)


def _cmd_product(args) -> int:
    for p in harness.compute_product(_config(args.config), args.out_dir):
        print(p)
    return 0


def _cmd_kernel(args) -> int:
    for p in harness.compute_kernel(_config(args.config), args.out_dir):
        print(p)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kappa-star", description="kappa-Minkowski star products and their identities")
    sub = ap.add_subparsers(dest="command", required=True)

    suite = sub.add_parser("suite", help="run identity suites")
    suite_sub = suite.add_subparsers(dest="action", required=True)
    run = suite_sub.add_parser("run", help="run the suites listed in the config")
    run.add_argument("--config", help="JSON config (defaults apply when omitted)")
    run.add_argument("--out", help="report path (stdout when omitted)")
    run.set_defaults(func=_cmd_suite)

    for name, func, help_text in (("product", _cmd_product, "write two symbols and their product"),
                                  ("kernel", _cmd_kernel, "write a symbol and its operator kernel")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config")
        p.add_argument("--out-dir", required=True)
        p.set_defaults(func=func)

    conv = sub.add_parser("convergence", help="fitted convergence orders under grid refinement")
    conv.add_argument("--config", help="JSON config")
    conv.add_argument("--levels", type=int, default=None)
    conv.add_argument("--out", help="report path (stdout when omitted)")
    conv.set_defaults(func=_cmd_convergence)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"kappa-star: invalid configuration {exc}", file=sys.stderr)
        return 2
    except KappaStarError as exc:
        print(f"kappa-star: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
