"""
Command-line interface.

    cuspcount compute --degree 3 --lines 10 --points 0
    cuspcount table --degree 4 --format csv --jobs 4
    cuspcount base --degree 2 --lines 8 --points 0 --theta 0
    cuspcount phi --degree 3 -i 2 -j 0 --lines 10 --points 0 --theta 0
    cuspcount verify --max-degree 4

Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
3 engine or cache error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import store
from .errors import CuspCountError, ValidationError
from .cusp_pipeline import CuspResult, cusp_count, cusp_table
from .session import Session
from .verify import run_suite

FIELDS = ("d", "r", "s", "euler", "boundary", "count")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--cache", help=f"memo cache file (default: ${store.ENV_VAR})")
    p.add_argument("--provider", choices=("engine", "table", "hybrid"), default="engine")
    p.add_argument("--table", help="base-number table to import (table/hybrid providers)")
    p.add_argument("--no-oracle-check", action="store_true",
                   help="skip the degree-one Schubert cross-check")
    p.add_argument("--allow-d1", action="store_true", help="permit degree one in compute/table")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="cuspcount",
                                     description="Rational planar cuspidal curves in P3 through lines and points.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="one count C_d(r, s)")
    p.add_argument("--degree", "-d", type=int, required=True)
    p.add_argument("--lines", "-r", type=int, required=True)
    p.add_argument("--points", "-s", type=int, required=True)

    p = sub.add_parser("table", parents=[common], help="all admissible (r, s) for one degree")
    p.add_argument("--degree", "-d", type=int, required=True)

    p = sub.add_parser("base", parents=[common], help="base number N_d(r, s, theta)")
    p.add_argument("--degree", "-d", type=int, required=True)
    p.add_argument("--lines", "-r", type=int, required=True)
    p.add_argument("--points", "-s", type=int, required=True)
    p.add_argument("--theta", "-t", type=int, default=0)

    p = sub.add_parser("phi", parents=[common], help="tautological number phi_d(i, j, r, s, theta)")
    p.add_argument("--degree", "-d", type=int, required=True)
    p.add_argument("-i", type=int, required=True, help="power of c1(L*)")
    p.add_argument("-j", type=int, required=True, help="power of ev*H")
    p.add_argument("--lines", "-r", type=int, required=True)
    p.add_argument("--points", "-s", type=int, required=True)
    p.add_argument("--theta", "-t", type=int, default=0)

    p = sub.add_parser("verify", parents=[common], help="run the self-check suite")
    p.add_argument("--max-degree", type=int, default=4)
    return parser


def format_results(rows: list[CuspResult], fmt: str) -> str:
    if fmt == "json":
        payload = [row.as_dict() for row in rows]
        return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(FIELDS)
        for row in rows:
            writer.writerow([row.as_dict()[f] for f in FIELDS])
        return buf.getvalue().rstrip("\n")
    return "\n".join(f"C_{row.d}({row.r},{row.s}) = {row.count}" for row in rows)


def format_scalar(name: str, key: dict, value, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({**{k: str(v) for k, v in key.items()}, "value": str(value)}, indent=2)
    if fmt == "csv":
        return ",".join([*key, "value"]) + "\n" + ",".join([*(str(v) for v in key.values()), str(value)])
    return f"{name}{tuple(key.values())} = {value}"


def _dispatch(args, session: Session) -> int:
    calc = session.calc
    if args.command == "compute":
        res = cusp_count(args.degree, args.lines, args.points, calc, allow_d1=args.allow_d1)
        print(format_results([res], args.format))
    elif args.command == "table":
        rows = cusp_table(args.degree, calc, allow_d1=args.allow_d1, jobs=args.jobs)
        print(format_results(rows, args.format))
    elif args.command == "base":
        value = session.base.base_number(args.degree, args.lines, args.points, args.theta)
        key = {"d": args.degree, "r": args.lines, "s": args.points, "theta": args.theta}
        print(format_scalar("N", key, value, args.format))
    elif args.command == "phi":
        value = calc.phi(args.degree, args.i, args.j, args.lines, args.points, args.theta)
        key = {"d": args.degree, "i": args.i, "j": args.j, "r": args.lines, "s": args.points,
               "theta": args.theta}
        print(format_scalar("phi", key, value, args.format))
    elif args.command == "verify":
        if args.max_degree < 2:
            raise ValidationError("--max-degree must be at least 2")
        results = run_suite(calc, args.max_degree)
        failed = 0
        for res in results:
            print(f"{'PASS' if res.ok else 'FAIL'}  {res.name}  ({res.seconds:.2f}s)")
            for line in res.diffs[:20]:
                print(f"      {line}")
            failed += not res.ok
        print(f"{len(results) - failed}/{len(results)} checks passed")
        return 1 if failed else 0
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return 2
    try:
        session = Session(mode=args.provider, table=args.table, check_oracle=not args.no_oracle_check,
                          cache=store.resolve_cache_path(args.cache))
        code = _dispatch(args, session)
        session.persist()
        return code
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CuspCountError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
