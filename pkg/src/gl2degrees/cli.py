"""Command-line front end: ``table``, ``query`` and ``verify``.

Exit status: 0 success, 1 a verification check failed, 2 bad usage,
3 a group exceeded the enumeration budget (see ``GL2DEGREES_BUDGET``).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .indexsets import render_set
from .matgroup import BudgetExceeded
from .modarith import _check_odd_prime
from .standard import FIVE
from .tables import TABLE_NAMES, build_table, render
from .theorems import K_set, S_M, T_set, thm1, thm2, thm3
from .verify import SCOPES, run

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _ell_list(text: str) -> list[int]:
    try:
        ells = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated primes, got {text!r}")
    for e in ells:
        try:
            _check_odd_prime(e)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc))
    return ells


def _prime(text: str) -> int:
    ells = _ell_list(text)
    if len(ells) != 1:
        raise argparse.ArgumentTypeError("expected a single prime")
    return ells[0]


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gl2degrees", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="print one of the tables")
    t.add_argument("name", choices=TABLE_NAMES)
    t.add_argument("--ell", type=_ell_list, help="comma-separated odd primes")
    t.add_argument("--ell-max", type=_positive, help="largest prime (grid and defaults)")
    t.add_argument("--d-max", type=_positive, help="largest degree (grid only)")
    t.add_argument("--format", choices=("text", "csv", "json"), default="text")

    q = sub.add_parser("query", help="decide one of the three degree questions")
    q.add_argument("question", choices=("thm1", "thm2", "thm3"))
    q.add_argument("--ell", type=_prime, required=True)
    q.add_argument("--d", type=_positive, required=True)
    q.add_argument("--M", choices=[str(M) for M in FIVE], help="standard subgroup (thm1)")
    q.add_argument("--filter", choices=("any", "cm", "non_cm"), default="any")
    q.add_argument("--mode", choices=("rational_j", "over_Q"), default="rational_j",
                   help="curves over K with rational j, or base changes from Q (thm3)")
    q.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", help="check closed forms against brute force")
    v.add_argument("scope", choices=SCOPES)
    v.add_argument("--ell", type=_ell_list, default=[3, 5])
    v.add_argument("--slow", action="store_true", help="include GL2(7) enumerations")
    v.add_argument("--format", choices=("text", "json"), default="text")
    return p


def cmd_table(args) -> int:
    table = build_table(args.name, args.ell, args.ell_max, args.d_max)
    sys.stdout.write(render(table, args.format))
    return EXIT_OK


def cmd_query(args) -> int:
    ell, d = args.ell, args.d
    if args.question == "thm1":
        if args.M is None:
            raise UsageError("thm1 needs --M")
        ok, w = thm1(ell, d, args.M, args.filter)
        result = {"verdict": ok, "witness": w, "minimal_degrees": sorted(S_M(ell, args.M, args.filter))}
    elif args.question == "thm2":
        if args.M is not None:
            raise UsageError("--M applies to thm1 only")
        ok = thm2(ell, d, args.filter)
        result = {"verdict": ok, "degrees": render_set(K_set(ell, args.filter))}
    else:
        if args.M is not None:
            raise UsageError("--M applies to thm1 only")
        ok, w = thm3(ell, d, args.filter, args.mode)
        result = {"verdict": ok, "witness": w,
                  "minimal_degrees": sorted(T_set(ell, args.filter, args.mode))}
    if args.format == "json":
        print(json.dumps(result, ensure_ascii=False))
    else:
        parts = ["true" if result["verdict"] else "false"]
        if result.get("witness") is not None:
            parts.append(f"witness {result['witness']}")
        if "minimal_degrees" in result:
            parts.append("minimal degrees " + ",".join(map(str, result["minimal_degrees"])))
        if "degrees" in result:
            parts.append("degrees " + result["degrees"])
        print("; ".join(parts))
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run(args.scope, args.ell, args.slow)
    if args.format == "json":
        print(json.dumps([c.__dict__ for c in checks], indent=1))
    else:
        for c in checks:
            print(c.line())
        failed = sum(not c.passed for c in checks)
        print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handler = {"table": cmd_table, "query": cmd_query, "verify": cmd_verify}[args.command]
    try:
        return handler(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
