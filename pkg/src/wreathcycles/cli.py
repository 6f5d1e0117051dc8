"""Command-line front end.

Exit codes: 0 success (or "conjugate"), 1 "not conjugate", 2 error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bench
from .centraliser import describe_centraliser
from .classreps import DEFAULT_LABELLING_CAP, class_representatives, class_subtotals
from .conjugacy import TerritoryDecomposition, class_size, conjugacy_witness_in_W, is_conjugate_in_S
from .core import (WreathContext, conjugate, element_order, element_to_dict, format_element, mul,
                   wreath_cycle_decomposition, yade)
from .perm import DEFAULT_SIZE_CAP, EnumerationCapExceeded

SCHEMA = 1


class CliError(Exception):
    pass


def _ctx(args) -> WreathContext:
    if not args.group:
        raise CliError("--group FILE is required for this command")
    return WreathContext.load(args.group, args.cap)


def _emit(args, human: str, data: dict):
    if args.json:
        print(json.dumps({"schema": SCHEMA, **data}, indent=2))
    else:
        print(human)


def cmd_decompose(args) -> int:
    ctx = _ctx(args)
    w = ctx.parse(args.element)
    dec = wreath_cycle_decomposition(w)
    K = ctx.base
    P = TerritoryDecomposition.of(dec)
    cycles = []
    lines = [f"element: {format_element(w)}"]
    if not dec.cycles:
        lines.append("empty decomposition")
    for i, z in enumerate(dec, 1):
        cls = z.load.yade_class + 1
        lines.append(f"w{i}: {format_element(z.element)}  anchor {z.anchor + 1}  "
                     f"yade {K.format(z.yade_at_anchor)}  load (k{cls}, {z.length})")
        cycles.append({"element": element_to_dict(z.element), "anchor": z.anchor + 1,
                       "territory": [x + 1 for x in z.territory], "yade": K.format(z.yade_at_anchor),
                       "load": {"class": cls, "length": z.length}})
    r = K.num_classes()
    lines.append("territory decomposition:")
    lines.append(P.render(r, ctx.gamma_degree))
    _emit(args, "\n".join(lines), {"element": element_to_dict(w), "cycles": cycles,
                                   "matrix": P.matrix(r, ctx.gamma_degree)})
    return 0


def cmd_order(args) -> int:
    ctx = _ctx(args)
    w = ctx.parse(args.element)
    n = element_order(w)
    _emit(args, f"{n:,}", {"element": element_to_dict(w), "order": n})
    return 0


def cmd_yade(args) -> int:
    ctx = _ctx(args)
    w = ctx.parse(args.element)
    point = args.point - 1
    if not 0 <= point < ctx.gamma_degree:
        raise CliError(f"point {args.point} out of range 1..{ctx.gamma_degree}")
    K = ctx.base
    y = K.identity
    for z in wreath_cycle_decomposition(w):
        if point in z.territory:
            y = yade(point, z.element)
    _emit(args, K.format(y), {"point": args.point, "yade": K.format(y)})
    return 0


def _witness(args):
    ctx = _ctx(args)
    w, v = ctx.parse(args.w), ctx.parse(args.v)
    a = conjugacy_witness_in_W(w, v, ctx)
    if a is not None and not (ctx.in_W(a) and conjugate(w, a) == v):
        raise CliError("internal error: witness failed verification")
    return ctx, w, v, a


def cmd_is_conjugate(args) -> int:
    ctx, w, v, a = _witness(args)
    in_s = is_conjugate_in_S(w, v)
    if a is None:
        _emit(args, f"not conjugate (conjugate in the full monomial group: {'yes' if in_s else 'no'})",
              {"conjugate": False, "conjugate_in_S": in_s})
        return 1
    _emit(args, f"conjugate\nwitness: {format_element(a)}",
          {"conjugate": True, "conjugate_in_S": in_s, "witness": element_to_dict(a)})
    return 0


def cmd_conjugator(args) -> int:
    ctx, w, v, a = _witness(args)
    if a is None:
        _emit(args, "not conjugate", {"conjugate": False})
        return 1
    _emit(args, format_element(a), {"conjugate": True, "witness": element_to_dict(a)})
    return 0


def cmd_centralizer(args) -> int:
    ctx = _ctx(args)
    w = ctx.parse(args.element)
    desc = describe_centraliser(w, ctx)
    for g in desc.generators:
        if mul(g, w) != mul(w, g) or not ctx.in_W(g):
            raise CliError("internal error: generator failed verification")
    lines = [f"order: {desc.order:,}", f"generators: {len(desc.generators)}"]
    lines += [format_element(g) for g in desc.generators]
    _emit(args, "\n".join(lines), {"order": desc.order,
                                   "generators": [element_to_dict(g) for g in desc.generators]})
    return 0


def cmd_class_size(args) -> int:
    ctx = _ctx(args)
    w = ctx.parse(args.element)
    n = class_size(w, ctx)
    _emit(args, f"{n:,}", {"element": element_to_dict(w), "class_size": n})
    return 0


def cmd_classes(args) -> int:
    ctx = _ctx(args)
    cap = max(args.cap, DEFAULT_LABELLING_CAP)
    if args.emit:
        for x in class_representatives(ctx, cap):
            print(json.dumps(element_to_dict(x)) if args.json else format_element(x))
        return 0
    subtotals = class_subtotals(ctx, cap)
    total = sum(n for _, n in subtotals)
    lines = [f"top {h}: {n:,}" for h, n in subtotals] + [f"total: {total:,}"]
    _emit(args, "\n".join(lines), {"subtotals": [{"top": str(h), "count": n} for h, n in subtotals],
                                   "total": total})
    return 0


def cmd_bench(args) -> int:
    rows = bench.run_suite(args.suite, args.seed, args.pairs, args.cap)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(bench.to_csv(rows))
    if args.json:
        print(json.dumps({"schema": SCHEMA, "suite": args.suite, "seed": args.seed, "rows": [
            {"instance": r.instance, "order": r.order, "task": r.task, "fast_s": r.fast_s,
             "oracle_s": r.oracle_s} for r in rows]}, indent=2))
    else:
        print(bench.to_table(rows))
        print()
        print(bench.to_csv(rows), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default=argparse.SUPPRESS, help="wreath group JSON file")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="enumeration cap")

    p = argparse.ArgumentParser(prog="wreathcycles", description=__doc__.splitlines()[0])
    p.add_argument("--group", default=None, help="wreath group JSON file")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--cap", type=int, default=DEFAULT_SIZE_CAP, help="enumeration cap")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, helptext):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.set_defaults(func=fn)
        return sp

    add("decompose", cmd_decompose, "wreath cycle decomposition").add_argument("element")
    add("order", cmd_order, "element order").add_argument("element")
    sp = add("yade", cmd_yade, "yade of the wreath cycle through a point")
    sp.add_argument("--point", type=int, required=True)
    sp.add_argument("element")
    for name, fn in (("is-conjugate", cmd_is_conjugate), ("conjugator", cmd_conjugator)):
        sp = add(name, fn, "conjugacy test in W")
        sp.add_argument("w")
        sp.add_argument("v")
    add("centralizer", cmd_centralizer, "centraliser order and generators").add_argument("element")
    add("class-size", cmd_class_size, "size of the conjugacy class").add_argument("element")
    sp = add("classes", cmd_classes, "conjugacy class representatives")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--count-only", action="store_true")
    mode.add_argument("--emit", action="store_true")
    sp = add("bench", cmd_bench, "benchmark against the brute-force oracle")
    sp.add_argument("--suite", required=True, choices=sorted(bench.SUITES))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--pairs", type=int, default=3)
    sp.add_argument("--csv", default=None, help="also write the CSV table here")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cap <= 0:
        print("error: --cap must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (CliError, ValueError, KeyError, EnumerationCapExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
