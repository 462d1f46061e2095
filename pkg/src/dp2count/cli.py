"""Command-line front end.

Subcommands: classes, count, table, points, existence, oracle, verify.
All numeric output is exact; JSON output is stable-ordered so it can be
golden-file tested.  Exit codes: 0 success, 1 validation error,
2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import counting, oracle, tables, weyl
from .counting import InvalidFieldSizeError


class _Fail(Exception):
    """Validation error; message printed to stderr, exit code 1."""


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _emit_csv(rows: list[dict]) -> None:
    if not rows:
        return
    cols = list(rows[0])
    print(",".join(cols))
    for r in rows:
        print(",".join(str(r[c]) for c in cols))


def _emit_table(rows: list[dict]) -> None:
    if not rows:
        return
    cols = list(rows[0])
    widths = [max(len(c), max(len(str(r[c])) for r in rows)) for c in cols]
    print("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
    for r in rows:
        print("  ".join(str(r[c]).ljust(w) for c, w in zip(cols, widths)))


def _emit(rows: list[dict], fmt: str, json_obj=None) -> None:
    if fmt == "json":
        _emit_json(rows if json_obj is None else json_obj)
    elif fmt == "csv":
        _emit_csv(rows)
    else:
        _emit_table(rows)


def _group(args) -> weyl.GroupData:
    return weyl.build_group(cache_dir=args.cache_dir, no_cache=args.no_cache)


def _parse_q(q: int) -> int:
    try:
        counting.OddPrimePower.parse(q)
    except InvalidFieldSizeError as e:
        raise _Fail(str(e)) from None
    return q


def cmd_classes(args) -> int:
    group = _group(args)
    rows = [
        {"name": c.name, "order": c.element_order, "size": c.size, "trace_std": c.trace_std}
        for c in sorted(group.classes, key=lambda c: (c.element_order, c.unsigned_name, c.name))
    ]
    _emit(rows, args.format)
    return 0


def cmd_count(args) -> int:
    q = _parse_q(args.q)
    if (args.cls is None) == (args.trace is None):
        raise _Fail("exactly one of --class or --trace is required")
    if args.cls is not None:
        try:
            value = counting.evaluate_class_count(args.cls, q)
        except KeyError as e:
            raise _Fail(str(e.args[0])) from None
        obj = {"class": args.cls, "q": q, "count": value}
    else:
        try:
            value = counting.count_by_trace(args.trace, q)
        except KeyError as e:
            raise _Fail(str(e.args[0])) from None
        obj = {"trace": args.trace, "q": q, "count": value}
    if args.format == "json":
        _emit_json(obj)
    else:
        print(value)
    return 0


def cmd_table(args) -> int:
    q = _parse_q(args.q)
    if args.by == "class":
        rows = [{"class": name, "count": counting.evaluate_class_count(name, q)}
                for name in tables.CLASS_NAMES]
    else:
        rows = [{"trace": a, "count": counting.count_by_trace(a, q)}
                for a in tables.POSSIBLE_TRACES]
    _emit(rows, args.format, json_obj={"q": q, "by": args.by, "rows": rows})
    return 0


def cmd_points(args) -> int:
    q = _parse_q(args.q)
    group = _group(args)
    try:
        cls = group.class_by_name(args.cls)
    except KeyError as e:
        raise _Fail(str(e.args[0])) from None
    n = counting.surface_point_count(cls.trace_pic, q)
    obj = {"class": cls.name, "q": q, "trace": cls.trace_pic, "points": n}
    if args.format == "json":
        _emit_json(obj)
    else:
        print(n)
    return 0


def cmd_existence(args) -> int:
    q = _parse_q(args.q)
    obj = counting.existence_exceptions(q)
    if args.format == "json":
        _emit_json(obj)
    else:
        print("class exceptions:", ", ".join(obj["class_exceptions"]) or "none")
        print("trace exceptions:", ", ".join(map(str, obj["trace_exceptions"])) or "none")
    return 0


def cmd_oracle(args) -> int:
    q = _parse_q(args.q)
    if args.identity == (args.cycle_type is not None):
        raise _Fail("exactly one of --identity or --cycle-type is required")
    try:
        if args.identity:
            value = oracle.count_identity(q, budget=args.budget)
            expected = counting.evaluate_class_count("1A", q)
            obj = {"mode": "identity", "q": q, "orbit_count": value,
                   "expected": expected, "match": value == expected}
        else:
            ct = tuple(int(x) for x in args.cycle_type.split(","))
            res = oracle.count_twisted(ct, q, budget=args.budget, group=_group(args))
            expected = counting.evaluate_class_count(res.class_name, q)
            obj = res.to_dict()
            obj["expected"] = expected
            obj["match"] = res.orbit_count == expected
    except oracle.BudgetExceededError as e:
        raise _Fail(str(e)) from None
    except ValueError as e:
        raise _Fail(str(e)) from None
    _emit_json(obj)
    return 0 if obj["match"] else 2


def _verify_data() -> tuple[bool, list[str]]:
    try:
        rep = tables.validate_embedded_data()
    except tables.DataIntegrityError as e:
        return False, [f"FAIL data: {e}"]
    return True, [f"ok data: {rep['n_checks']} transcription checks"]

def _verify_group(group) -> tuple[bool, list[str]]:
    lines, ok = [], True

    def check(label, cond):
        nonlocal ok
        lines.append(("ok " if cond else "FAIL ") + label)
        ok = ok and cond

    check(f"group order {group.order}", group.order == weyl.GROUP_ORDER)
    check("60 conjugacy classes", len(group.classes) == 60)
    check("class sizes sum to group order",
          sum(c.size for c in group.classes) == weyl.GROUP_ORDER)
    check("determinant-one subgroup has half the order",
          sum(c.size for c in group.classes if c.sign == 1) == weyl.SP62_ORDER)
    names = {c.name for c in group.classes}
    check("classes come in +/- pairs",
          all(("-" + n in names) for n in names if not n.startswith("-")))
    check("trace values match the possible-trace list",
          {c.trace_pic for c in group.classes} == set(tables.POSSIBLE_TRACES))
    return ok, lines


def _verify_aggregation(group) -> tuple[bool, list[str]]:
    rep = counting.aggregation_check(group)
    lines = []
    for row in rep["rows"]:
        status = "ok " if row["polynomial_identity"] else "FAIL "
        contributors = "+".join(c["name"] for c in row["contributors"])
        lines.append(f"{status}trace {row['trace']}: {contributors}")
    return rep["all_pass"], lines


EXPECTED_CLASS_ZEROS = {"1A": {3, 5, 7}, "2A": {3}, "2B": {3, 5}}
EXPECTED_TRACE_ZEROS = {-6: {3, 5, 7}, 8: {3, 5, 7}, -4: {3}, 6: {3}}


def _verify_zeros(limit: int = 1000) -> tuple[bool, list[str]]:
    lines, ok = [], True
    sweep = counting.odd_prime_powers(limit)
    for name in tables.CLASS_NAMES:
        zeros = {q for q in sweep if counting.evaluate_class_count(name, q) == 0}
        expected = EXPECTED_CLASS_ZEROS.get(name, set())
        good = zeros == expected
        ok = ok and good
        if zeros or expected:
            lines.append(("ok " if good else "FAIL ")
                         + f"class {name}: zeros {sorted(zeros)} expected {sorted(expected)}")
    for a in tables.POSSIBLE_TRACES:
        zeros = {q for q in sweep if counting.count_by_trace(a, q) == 0}
        expected = EXPECTED_TRACE_ZEROS.get(a, set())
        good = zeros == expected
        ok = ok and good
        if zeros or expected:
            lines.append(("ok " if good else "FAIL ")
                         + f"trace {a}: zeros {sorted(zeros)} expected {sorted(expected)}")
    return ok, lines


def _verify_oracle(args, group) -> tuple[bool, list[str]]:
    lines, ok = [], True
    for q in (3, 5, 7, 9):
        got = oracle.count_identity(q, budget=args.budget)
        expected = counting.evaluate_class_count("1A", q)
        good = got == expected
        ok = ok and good
        lines.append(("ok " if good else "FAIL ")
                     + f"identity oracle q={q}: {got} expected {expected}")
    for ct in ((7,), (6, 1), (3, 3, 1), (2, 2, 2, 1)):
        res = oracle.count_twisted(ct, 3, budget=args.budget, group=group)
        expected = counting.evaluate_class_count(res.class_name, 3)
        good = res.orbit_count == expected
        ok = ok and good
        lines.append(("ok " if good else "FAIL ")
                     + f"twisted oracle {ct} q=3 -> {res.class_name}: "
                       f"{res.orbit_count} expected {expected} ({res.wall_time:.0f}s)")
    return ok, lines


def cmd_verify(args) -> int:
    what = args.what
    all_ok = True
    lines: list[str] = []
    need_group = what in ("group", "aggregation", "oracle", "all")
    group = _group(args) if need_group else None
    if what in ("data", "all"):
        ok, ls = _verify_data()
        all_ok, lines = all_ok and ok, lines + ls
    if what in ("group", "all"):
        ok, ls = _verify_group(group)
        all_ok, lines = all_ok and ok, lines + ls
    if what in ("aggregation", "all"):
        ok, ls = _verify_aggregation(group)
        all_ok, lines = all_ok and ok, lines + ls
    if what in ("zeros", "all"):
        ok, ls = _verify_zeros()
        all_ok, lines = all_ok and ok, lines + ls
    if what in ("oracle", "all"):
        ok, ls = _verify_oracle(args, group)
        all_ok, lines = all_ok and ok, lines + ls
    for line in lines:
        print(line)
    print("VERIFY " + ("PASS" if all_ok else "FAIL"))
    return 0 if all_ok else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dp2count",
        description="Counts of degree-2 Del Pezzo surfaces over odd finite fields, "
                    "by Frobenius conjugacy class in W(E7) or by Picard trace.")
    ap.add_argument("--format", choices=("table", "json", "csv"), default="table")
    ap.add_argument("--cache-dir", default=None,
                    help="directory for the cached group computation")
    ap.add_argument("--no-cache", action="store_true",
                    help="force recomputation of the group data")
    ap.add_argument("--jobs", type=int, default=1,
                    help="worker cap (the current implementation is single-process)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sub.add_parser("classes", help="emit the 60-class report")

    p = sub.add_parser("count", help="evaluate one class or trace count at q")
    p.add_argument("--class", dest="cls", default=None, metavar="LABEL")
    p.add_argument("--trace", type=int, default=None)
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("table", help="full class or trace table at q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--by", choices=("class", "trace"), default="class")

    p = sub.add_parser("points", help="q^2 + a q + 1 for a class's trace a")
    p.add_argument("--class", dest="cls", required=True, metavar="LABEL")
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("existence", help="classes and traces with zero count at q")
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("oracle", help="brute-force configuration count")
    p.add_argument("--identity", action="store_true")
    p.add_argument("--cycle-type", default=None, metavar="L1,L2,...")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("what", nargs="?", default="all",
                   choices=("data", "group", "aggregation", "zeros", "oracle", "all"))
    p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)

    return ap


_HANDLERS = {
    "classes": cmd_classes,
    "count": cmd_count,
    "table": cmd_table,
    "points": cmd_points,
    "existence": cmd_existence,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
}


def _merge_signed_labels(argv: list[str]) -> list[str]:
    # argparse mistakes signed labels like -1A for options; fold them into
    # the --class=... form
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--class" and i + 1 < len(argv):
            out.append("--class=" + argv[i + 1])
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = ap.parse_args(_merge_signed_labels(list(argv)))
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    if args.jobs < 1:
        print("--jobs must be >= 1", file=sys.stderr)
        return 1
    try:
        return _HANDLERS[args.cmd](args)
    except _Fail as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
