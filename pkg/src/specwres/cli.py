"""Command-line front end: ``verify``, ``density`` and ``table``.

Exit codes: 0 all checks pass, 1 an oracle or identity check fails,
2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import suite
from .scenario import FUNCTIONALS, ScenarioError, evaluate, load_scenario, parse_scenario
from .tables import coefficient_table, format_table

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def resolve_tolerance(flag: float | None) -> float:
    """``--tolerance`` if given, else ``SPECWRES_TOL``, else the default."""
    if flag is not None:
        return flag
    env = os.environ.get("SPECWRES_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise ScenarioError(f"SPECWRES_TOL is not a number: {env!r}") from None
    return suite.DEFAULT_TOL


def _groups(values) -> list[str]:
    out = []
    for v in values or []:
        out.extend(g for g in v.split(",") if g)
    return out


def cmd_verify(args) -> int:
    groups = _groups(args.group)
    unknown = [g for g in groups if g not in suite.GROUPS]
    if unknown:
        print(f"unknown group(s): {', '.join(unknown)}; available: {', '.join(suite.GROUPS)}", file=sys.stderr)
        return EXIT_INPUT
    ns = tuple(args.n) if args.n else (2, 4, 6)
    if any(n not in (2, 4, 6, 8) for n in ns):
        print("--n must be one of 2, 4, 6, 8", file=sys.stderr)
        return EXIT_INPUT
    cfg = suite.SuiteConfig(ns=ns, count=args.count, seed=args.seed, tolerance=resolve_tolerance(args.tolerance))
    checks = suite.run(groups or None, cfg)
    result = suite.summary(checks)
    result["config"] = {"ns": list(ns), "count": args.count, "seed": args.seed, "tolerance": cfg.tolerance}
    if args.json:
        print(json.dumps(result, indent=2, sort_keys=True))
    else:
        for c in checks:
            mark = "PASS" if c.passed else "FAIL"
            print(f"{mark} [{c.group}] {c.name}: residual {c.residual:.3e} (tol {c.tolerance:g}){'  ' + c.detail if c.detail else ''}")
        print(f"{len(checks) - len(result['failed'])}/{len(checks)} checks passed")
    return EXIT_OK if result["passed"] else EXIT_FAIL


def cmd_density(args) -> int:
    tol = resolve_tolerance(args.tolerance)
    if args.scenario:
        sc = load_scenario(args.scenario, n=args.n, kind=args.kind, seed=args.seed)
    else:
        sc = parse_scenario({}, n=args.n, kind=args.kind, seed=args.seed)
    report = evaluate(sc, args.functional, args.chiral, args.grading, tol)
    print(json.dumps(report, indent=None if args.compact else 2))
    return EXIT_FAIL if report["oracle"] == "mismatch" else EXIT_OK


def cmd_table(args) -> int:
    try:
        rows = coefficient_table(args.kind, args.n)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(json.dumps({"kind": args.kind, "n": args.n, "rows": rows}, indent=2))
    else:
        print(format_table(args.kind, args.n, rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="specwres", description="Residue densities of spectral functionals for Dirac operators with torsion.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run the seeded verification suite")
    v.add_argument("--group", action="append", help=f"group name(s), repeatable or comma separated: {', '.join(suite.GROUPS)}")
    v.add_argument("--n", type=int, action="append", help="restrict to this dimension (repeatable)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=50, help="random draws per (n, kind) cell")
    v.add_argument("--tolerance", type=float, default=None, help="relative tolerance (default 1e-9, or SPECWRES_TOL)")
    v.add_argument("--json", action="store_true", help="print the JSON summary instead of one line per check")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("density", help="evaluate one functional on a scenario")
    d.add_argument("scenario", nargs="?", help="scenario JSON file; omitted fields are drawn from --seed")
    d.add_argument("--functional", choices=FUNCTIONALS, required=True)
    d.add_argument("--chiral", action="store_true")
    d.add_argument("--grading", help="gamma (spin); euler, hodge or hat (Hodge); implies --chiral")
    d.add_argument("--n", type=int, help="override the scenario dimension")
    d.add_argument("--kind", choices=("spin", "hodge"), help="override the scenario module")
    d.add_argument("--seed", type=int, help="override the scenario seed")
    d.add_argument("--tolerance", type=float, default=None)
    d.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    d.add_argument("--compact", action="store_true", help="single-line JSON")
    d.set_defaults(func=cmd_density)

    t = sub.add_parser("table", help="print closed-form coefficients")
    t.add_argument("--kind", choices=("spin", "hodge"), required=True)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
