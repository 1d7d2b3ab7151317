"""Command-line front end.

Exit codes: 0 success, 1 a requested verification or agreement check failed,
2 invalid input.  JSON records have the fixed key order
``command, params, result, [perMethod, agree], elapsedMs``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional

from . import oracles
from .algebra import format_poly
from .dkp import CacheError, RTable, compute_R_f, compute_w, dkp_flow
from .firstcount import (
    METHODS,
    FirstProfile,
    ProfileError,
    classify_profile,
    count_first,
    cross_check_first,
    first_profiles,
    pole_multisets,
)
from .secondcount import SecondProfile, count_from_theta, count_second_closed
from .suites import SUITES, Perturbation, PerturbationError, run_suite

SECOND_METHODS = ("closed", "theta", "oracle")


class UsageError(Exception):
    """Invalid command-line input (exit code 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _fmt(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# -- R-table cache -------------------------------------------------------------

def load_table(args, err) -> RTable:
    path = getattr(args, "cache_load", None)
    if not path:
        return RTable()
    try:
        table = RTable.load(path)
    except FileNotFoundError:
        raise UsageError(f"cache file not found: {path}")
    except OSError as exc:
        raise UsageError(f"cannot read cache file {path}: {exc.strerror}")
    except CacheError as exc:
        print(f"warning: cache {path} rejected ({exc}); recomputing", file=err)
        return RTable()
    return table


def store_table(args, table: RTable, order: int) -> None:
    path = getattr(args, "cache_store", None)
    if path:
        table.fill(order).store(path)


# -- commands ------------------------------------------------------------------

def cmd_count_first(args, err):
    prof = FirstProfile(args.a, args.b, args.c)
    table = load_table(args, err)
    methods = None if args.method == "all" else args.method.split(",")
    rep = cross_check_first(prof, methods, table)
    store_table(args, table, prof.a + prof.b + 2)
    out = {
        "params": {"a": prof.a, "b": prof.b, "poles": list(prof.poles), "method": args.method},
        "result": None if rep.value is None else str(rep.value),
        "perMethod": {k: _fmt(v) for k, v in rep.per_method.items()},
        "agree": rep.agree,
    }
    return out, 0 if rep.agree else 1


def cmd_count_second(args, err):
    prof = SecondProfile(args.a, args.b, args.c, args.d)
    if args.method == "all":
        methods = ["closed", "theta"] + (["oracle"] if len(prof.poles) == 1 else [])
    else:
        methods = args.method.split(",")
        unknown = set(methods) - set(SECOND_METHODS)
        if unknown:
            raise UsageError(f"unknown methods: {sorted(unknown)}")
        if "oracle" in methods and len(prof.poles) != 1:
            raise UsageError("the residue-system oracle handles exactly one residueless pole")
    per = {}
    for m in SECOND_METHODS:
        if m not in methods:
            continue
        if m == "closed":
            per[m] = Fraction(count_second_closed(prof))
        elif m == "theta":
            per[m] = Fraction(count_from_theta(prof.a, prof.b, prof.c, prof.poles))
        else:
            per[m] = Fraction(oracles.residue_count_second_n1(prof.a, prof.b, prof.c, prof.poles[0]))
    vals = set(per.values())
    agree = len(vals) == 1
    out = {
        "params": {"a": prof.a, "b": prof.b, "c": prof.c, "poles": list(prof.poles),
                   "method": args.method},
        "result": _fmt(next(iter(vals))) if agree else None,
        "perMethod": {k: _fmt(v) for k, v in per.items()},
        "agree": agree,
    }
    return out, 0 if agree else 1


def cmd_dkp_w(args, err):
    if args.i < 1:
        raise UsageError("-i must be >= 1")
    return {"params": {"i": args.i}, "result": format_poly(compute_w(args.i))}, 0


def cmd_dkp_r(args, err):
    if args.i < 1 or args.j < 1:
        raise UsageError("-i and -j must be >= 1")
    if args.vars == "f":
        poly = compute_R_f(args.i, args.j)
    else:
        table = load_table(args, err)
        poly = table.get(args.i, args.j)
        store_table(args, table, args.i + args.j)
    return {"params": {"i": args.i, "j": args.j, "vars": args.vars},
            "result": format_poly(poly)}, 0


def cmd_dkp_flow(args, err):
    if args.i < 1 or args.n < 1:
        raise UsageError("-i and -n must be >= 1")
    return {"params": {"i": args.i, "n": args.n}, "result": format_poly(dkp_flow(args.i, args.n))}, 0


def cmd_verify(args, err):
    perturb = Perturbation.parse(args.perturb)
    table = load_table(args, err)
    res = run_suite(args.suite, weight=args.weight, order=args.order, perturb=perturb,
                    table=table, subsystem=args.subsystem_sign,
                    max_pole_weight=args.max_pole_weight)
    if not perturb.R:
        store_table(args, table, table.max_order)
    params = {"suite": args.suite, "weight": args.weight, "order": args.order,
              "maxPoleWeight": args.max_pole_weight, "subsystemSign": args.subsystem_sign,
              "perturb": list(args.perturb or [])}
    return {"params": params, "result": res.as_dict()}, 0 if res.passed else 1


def _first_row(prof: FirstProfile) -> tuple:
    return prof.a, prof.b, prof.poles, count_first(prof)


def _second_profiles(max_weight: int):
    # every b, c >= 1 and poles with b + c + sum(poles) <= max_weight
    for s in range(2, max_weight + 1):
        for poles in pole_multisets(s):
            for bc in range(2, max_weight - s + 1):
                for b in range(1, bc):
                    c = bc - b
                    yield SecondProfile(b + c + s - 2, b, c, poles)


def _second_row(prof: SecondProfile) -> tuple:
    return prof.a, prof.b, prof.c, prof.poles, count_second_closed(prof)


def cmd_table(args, err):
    if args.max_pole_weight < 2:
        raise UsageError("--max-pole-weight must be >= 2")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    if args.kind == "first":
        profiles, fn = list(first_profiles(args.max_pole_weight)), _first_row
    else:
        profiles, fn = list(_second_profiles(args.max_pole_weight)), _second_row
    if args.threads > 1:
        with ProcessPoolExecutor(args.threads) as pool:
            rows = list(pool.map(fn, profiles, chunksize=64))
    else:
        rows = [fn(p) for p in profiles]
    if args.kind == "first":
        recs = [{"a": a, "b": b, "poles": list(poles), "count": str(n)} for a, b, poles, n in rows]
    else:
        recs = [{"a": a, "b": b, "c": c, "poles": list(poles), "count": str(n)}
                for a, b, c, poles, n in rows]
    return {"params": {"kind": args.kind, "maxPoleWeight": args.max_pole_weight,
                       "threads": args.threads},
            "result": recs}, 0


def cmd_classify(args, err):
    cls = classify_profile(args.A, args.B or ())
    return {"params": {"A": list(args.A), "B": list(args.B or ())}, "result": cls.value}, 0


# -- output --------------------------------------------------------------------

def _render_plain(command: str, rec: dict) -> str:
    res = rec["result"]
    if command == "table":
        return "\n".join(_table_plain(r) for r in res)
    if command == "verify":
        lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}"
                 + (f"  [{c['detail']}]" if c.get("detail") else "") for c in res["checks"]]
        lines.append(f"suite {res['suite']}: {'passed' if res['passed'] else 'FAILED'}")
        return "\n".join(lines)
    if "perMethod" in rec:
        lines = [f"result: {res}"]
        lines += [f"  {k}: {v}" for k, v in rec["perMethod"].items()]
        lines.append(f"agree: {str(rec['agree']).lower()}")
        return "\n".join(lines)
    return str(res)


def _table_plain(r: dict) -> str:
    poles = ",".join(str(-c) for c in r["poles"])
    zeros = f"{r['a']},-{r['b']},-{r['c']}" if "c" in r else f"{r['a']},{r['b']}"
    return f"({zeros};{poles}) {r['count']}"


def _render_csv(command: str, rec: dict) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    res = rec["result"]
    if command == "table":
        second = bool(res) and "c" in res[0] or rec["params"].get("kind") == "second"
        wr.writerow(["a", "b", "c", "poles", "count"] if second else ["a", "b", "poles", "count"])
        for r in res:
            poles = " ".join(str(c) for c in r["poles"])
            wr.writerow([r["a"], r["b"], r["c"], poles, r["count"]] if second
                        else [r["a"], r["b"], poles, r["count"]])
    elif command == "verify":
        wr.writerow(["check", "passed", "detail"])
        for c in res["checks"]:
            wr.writerow([c["name"], str(c["passed"]).lower(), c.get("detail", "")])
    elif "perMethod" in rec:
        wr.writerow(["method", "value"])
        for k, v in rec["perMethod"].items():
            wr.writerow([k, v])
    else:
        wr.writerow(["result"])
        wr.writerow([res])
    return buf.getvalue().rstrip("\n")


COMMANDS = {
    "count-first": cmd_count_first,
    "count-second": cmd_count_second,
    "dkp-w": cmd_dkp_w,
    "dkp-r": cmd_dkp_r,
    "dkp-flow": cmd_dkp_flow,
    "verify": cmd_verify,
    "table": cmd_table,
    "classify": cmd_classify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="merodiff", description="Counts of meromorphic differentials "
                     "on the projective line and the identities behind them.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("json", "csv", "plain"), default="json")
        return sp

    def add_cache(sp):
        sp.add_argument("--cache-load", metavar="PATH", help="read the R-table from PATH")
        sp.add_argument("--cache-store", metavar="PATH", help="write the R-table to PATH")

    sp = add("count-first", "count first-type differentials (a, b; -c1, ..., -cn)")
    sp.add_argument("-a", type=int, required=True)
    sp.add_argument("-b", type=int, required=True)
    sp.add_argument("-c", type=_int_list, required=True, help="pole orders, e.g. 3,3")
    sp.add_argument("--method", default="all",
                    help=f"'all' or a comma list of {', '.join(METHODS)}")
    add_cache(sp)

    sp = add("count-second", "count second-type differentials (a, -b, -c; -d1, ..., -dn)")
    sp.add_argument("-a", type=int, required=True)
    sp.add_argument("-b", type=int, required=True)
    sp.add_argument("-c", type=int, required=True)
    sp.add_argument("-d", type=_int_list, default=(), help="residueless pole orders, e.g. 3")
    sp.add_argument("--method", default="all",
                    help=f"'all' or a comma list of {', '.join(SECOND_METHODS)}")

    sp = add("dkp-w", "print w_i as a polynomial in f")
    sp.add_argument("-i", type=int, required=True)

    sp = add("dkp-r", "print R_{i,j}")
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("-j", type=int, required=True)
    sp.add_argument("--vars", choices=("w", "f"), default="w")
    add_cache(sp)

    sp = add("dkp-flow", "print d f_i / d T_n")
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)

    sp = add("verify", "run a verification suite")
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.add_argument("--weight", type=int, default=None, help="truncation weight (default 10)")
    sp.add_argument("--order", type=int, default=None, help="dkp order (default 8)")
    sp.add_argument("--max-pole-weight", type=int, default=None,
                    help="first-type profile bound (default 14)")
    sp.add_argument("--subsystem-sign", choices=("literal", "stated"), default="literal",
                    help="sign of R in the dKP subsystem check (frobenius suite)")
    sp.add_argument("--perturb", action="append", metavar="KEY",
                    help="R:i,j | theta:a,b,c | P:a,b | F:a,b,c1,... optionally =delta")
    add_cache(sp)

    sp = add("table", "tabulate counts")
    sp.add_argument("kind", choices=("first", "second"))
    sp.add_argument("--max-pole-weight", type=int, default=12)
    sp.add_argument("--threads", type=int, default=1)

    sp = add("classify", "finiteness class of a genus-0 stratum")
    sp.add_argument("-A", type=_int_list, required=True,
                    help="zero/pole orders, e.g. -A=2,2 or -A=0,-1,-1")
    sp.add_argument("-B", type=_int_list, default=(),
                    help="residueless pole orders (<= -2), e.g. -B=-3,-3")
    return parser


def _validate(args):
    for name in ("weight", "order", "max_pole_weight"):
        v = getattr(args, name, None)
        if v is not None and args.command == "verify" and v < 2:
            raise UsageError(f"--{name.replace('_', '-')} must be >= 2")


def run(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
        rec, code = COMMANDS[args.command](args, err)
    except (UsageError, ProfileError, PerturbationError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except oracles.DegreeBoundError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return 2
    full = {"command": args.command, "params": rec["params"], "result": rec["result"]}
    for key in ("perMethod", "agree"):
        if key in rec:
            full[key] = rec[key]
    full["elapsedMs"] = round((time.perf_counter() - start) * 1000, 3)
    if args.format == "json":
        print(json.dumps(full), file=out)
    elif args.format == "csv":
        print(_render_csv(args.command, full), file=out)
    else:
        print(_render_plain(args.command, full), file=out)
    return code


def main(argv: Optional[list] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
