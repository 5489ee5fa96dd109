"""Command line: ``kdecomp construct | optimize | verify``.

Exit codes: 0 all claims hold, 1 violation found, 2 inconclusive (node
budget), 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .constructions import construct_extremal, label_table
from .core import ObjectiveSpec
from .search import SearchBudgetError, budget_from_env, optimize
from .verify import CLAIMS, exit_code, parse_range, records_csv, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write(text: str, out):
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    D = construct_extremal(args.k, args.r, args.n)
    d = D.to_json_dict(explicit=args.explicit)
    d["labels"] = [
        {"index": v.index, "pair": list(v.pair), "copy": v.copy}
        for v in label_table(args.k, args.r)
    ]
    _write(json.dumps(d, indent=None if not args.explicit else 1) + "\n", args.out)
    return EXIT_OK


def cmd_optimize(args) -> int:
    obj = ObjectiveSpec.parse(args.objective)
    budget = args.budget if args.budget is not None else budget_from_env()
    try:
        rep = optimize(args.n, args.r, args.k, obj, budget=budget, override=args.override,
                       all_optima=args.all_optima, threads=args.threads)
    except SearchBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    d = rep.to_json_dict()
    if args.explicit:
        d["optimal_decompositions"] = [D.to_json_dict(explicit=True)
                                       for D in rep.optimal_decompositions]
    _write(json.dumps(d) + "\n", args.out)
    return EXIT_OK if rep.exact else EXIT_INCONCLUSIVE


def cmd_verify(args) -> int:
    claims = list(CLAIMS) if args.claim == "all" else [args.claim]
    ranges = parse_range(args.range) if args.range else None
    budget = args.budget if args.budget is not None else budget_from_env()
    records, code = run_suite(claims, ranges, args.out, budget=budget, threads=args.threads)
    if args.out is None:
        sys.stdout.write(records_csv(records))
    else:
        for rec in records:
            print(f"{rec.claim:16s} k={rec.k} n={rec.n} r={rec.r} "
                  f"m={'' if rec.m is None else rec.m}: {rec.status}")
    return code


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kdecomp", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="extremal clique-sum decomposition")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--r", type=int, default=2)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--out")
    c.add_argument("--explicit", action="store_true", help="list each edge's vertices")
    c.set_defaults(func=cmd_construct)

    o = sub.add_parser("optimize", help="exact optimum over all decompositions")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--r", type=int, default=2)
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--objective", default="omega", help="omega | chi_m:M | a_r:P/Q")
    o.add_argument("--threads", type=int, default=1)
    o.add_argument("--budget", type=int)
    o.add_argument("--override", action="store_true", help="skip the size guard")
    o.add_argument("--all-optima", action="store_true")
    o.add_argument("--explicit", action="store_true")
    o.add_argument("--out")
    o.set_defaults(func=cmd_optimize)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--claim", required=True, choices=sorted(CLAIMS) + ["all"])
    v.add_argument("--range", help='e.g. "k=2..3,n=1..6,m=1"')
    v.add_argument("--out", help="directory for summary.csv, detail.json, witnesses/")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--budget", type=int)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
