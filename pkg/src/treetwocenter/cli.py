"""Command-line front end.

Subcommands: decide, solve, oracle, gen, bench.  Exit status is 0 on
success and 2 on any input problem (bad arguments, unreadable file,
malformed instance).
"""
from __future__ import annotations

import argparse
import json
import sys

from .bench import DEFAULT_SIZES, decide_bench, rows_to_csv, solve_bench
from .decision import decide
from .generator import generate_random
from .instance import (InstanceFormatError, format_rational, load_instance,
                       parse_rational, serialize_instance)
from .optimizer import solve
from .oracle import oracle_lambda_star


def _point_str(p):
    return f"edge={p.edge} offset={format_rational(p.offset)}"


def _point_json(p):
    return {"edge": p.edge, "offset": format_rational(p.offset)}


def _cmd_decide(args):
    inst = load_instance(args.instance)
    lam = parse_rational(args.lam)
    out = decide(inst, lam)
    if out.feasible:
        print("feasible")
        print(f"center1 {_point_str(out.center1)}")
        print(f"center2 {_point_str(out.center2)}")
    else:
        print("infeasible")
    return 0


def _cmd_solve(args):
    inst = load_instance(args.instance)
    sol = solve(inst)
    if args.json:
        print(json.dumps({
            "lambda_star": format_rational(sol.lambda_star),
            "center1": _point_json(sol.center1),
            "center2": _point_json(sol.center2),
            "critical_edge1": sol.critical_edge1,
            "critical_edge2": sol.critical_edge2,
        }))
    else:
        print(f"lambda_star {format_rational(sol.lambda_star)}")
        print(f"center1 {_point_str(sol.center1)}")
        print(f"center2 {_point_str(sol.center2)}")
    return 0


def _cmd_oracle(args):
    inst = load_instance(args.instance)
    lam, c1, c2 = oracle_lambda_star(inst)
    print(f"lambda_star {format_rational(lam)}")
    print(f"center1 {_point_str(c1)}")
    print(f"center2 {_point_str(c2)}")
    return 0


def _cmd_gen(args):
    inst = generate_random(args.seed, args.n, args.m, args.vertices,
                           args.denominator)
    text = serialize_instance(inst)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _cmd_bench(args):
    sizes = tuple(int(s) for s in args.sizes.split(","))
    if args.mode == "decide":
        rows = decide_bench(sizes, repeats=args.repeats)
    else:
        rows = solve_bench(sizes, repeats=args.repeats)
    sys.stdout.write(rows_to_csv(rows))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="treetwocenter",
        description="Exact two-center solver for uncertain points on a tree.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="test feasibility of a cover value")
    p.add_argument("-i", "--instance", required=True)
    p.add_argument("--lambda", dest="lam", required=True,
                   help="cover value, exact rational like 3/4")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("solve", help="compute the optimal two centers")
    p.add_argument("-i", "--instance", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("oracle", help="brute-force optimum for cross-checks")
    p.add_argument("-i", "--instance", required=True)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--denominator", type=int, default=16)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="wall-time scaling sweep, CSV on stdout")
    p.add_argument("--mode", choices=("decide", "solve"), required=True)
    p.add_argument("--sizes", default=",".join(str(s) for s in DEFAULT_SIZES))
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
