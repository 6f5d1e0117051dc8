"""Timing of the structural algorithms against the brute-force oracle."""
from __future__ import annotations

import csv
import io
import random
import time
from dataclasses import dataclass

from .centraliser import describe_centraliser
from .classreps import class_count
from .conjugacy import conjugacy_witness_in_W
from .core import WreathContext, WreathElement, conjugate
from .oracle import EnumeratedWreathGroup, bf_centraliser, bf_conjugacy_classes, bf_is_conjugate
from .perm import DEFAULT_SIZE_CAP, GeneratedPermGroup

# oracle class partitions materialise every element; keep that below this size
CLASS_ORACLE_LIMIT = 50_000


@dataclass(frozen=True)
class Instance:
    name: str
    base_degree: int
    top_degree: int

    def context(self) -> WreathContext:
        return WreathContext.symmetric_top(GeneratedPermGroup.symmetric(self.base_degree), self.top_degree)


SUITES = {
    "oracle": [Instance("S2 wr S6", 2, 6), Instance("S3 wr S4", 3, 4),
               Instance("S2 wr S7", 2, 7), Instance("S3 wr S5", 3, 5)],
    "paper-shape": [Instance("S4 wr S8", 4, 8)],
    "smoke": [Instance("S2 wr S3", 2, 3), Instance("S3 wr S3", 3, 3)],
}


@dataclass
class Row:
    instance: str
    order: int
    task: str
    fast_s: float
    oracle_s: float | None

    @property
    def speedup(self) -> float | None:
        if self.oracle_s is None:
            return None
        return self.oracle_s / max(self.fast_s, 1e-9)


def random_element(ctx: WreathContext, rng: random.Random) -> WreathElement:
    K = ctx.base.enumerate()
    base = tuple(rng.choice(K) for _ in range(ctx.gamma_degree))
    tops = ctx.top.elements()
    return WreathElement(ctx, base, tops[rng.randrange(len(tops))])


def conjugate_pairs(ctx: WreathContext, count: int, seed: int) -> list[tuple[WreathElement, WreathElement]]:
    rng = random.Random(seed)
    pairs = []
    for _ in range(count):
        w = random_element(ctx, rng)
        a = random_element(ctx, rng)
        pairs.append((w, conjugate(w, a)))
    return pairs


def _timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - start, out


def bench_instance(inst: Instance, seed: int, pairs: int = 3, cap: int = DEFAULT_SIZE_CAP,
                   tasks=("witness", "centraliser", "classes")) -> list[Row]:
    ctx = inst.context()
    size = ctx.order()
    G = EnumeratedWreathGroup(ctx, cap) if size <= cap else None
    sample = conjugate_pairs(ctx, pairs, seed)
    rows = []
    if "witness" in tasks:
        fast = oracle = 0.0
        for w, v in sample:
            dt, a = _timed(conjugacy_witness_in_W, w, v, ctx)
            if a is None or conjugate(w, a) != v:
                raise AssertionError(f"witness failed on {inst.name}")
            fast += dt
            if G is not None:
                oracle += _timed(bf_is_conjugate, w, v, G)[0]
        rows.append(Row(inst.name, size, "witness", fast, oracle if G is not None else None))
    if "centraliser" in tasks:
        fast = oracle = 0.0
        for w, _ in sample:
            dt, desc = _timed(describe_centraliser, w, ctx)
            fast += dt
            if G is not None:
                ot, cent = _timed(bf_centraliser, w, G)
                oracle += ot
                if len(cent) != desc.order:
                    raise AssertionError(f"centraliser order mismatch on {inst.name}")
        rows.append(Row(inst.name, size, "centraliser", fast, oracle if G is not None else None))
    if "classes" in tasks:
        dt, n = _timed(class_count, ctx)
        ot = None
        if G is not None and size <= CLASS_ORACLE_LIMIT:
            ot, classes = _timed(bf_conjugacy_classes, G)
            if len(classes) != n:
                raise AssertionError(f"class count mismatch on {inst.name}")
        rows.append(Row(inst.name, size, "classes", dt, ot))
    return rows


def run_suite(name: str, seed: int, pairs: int = 3, cap: int = DEFAULT_SIZE_CAP) -> list[Row]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    rows = []
    for inst in SUITES[name]:
        rows.extend(bench_instance(inst, seed, pairs, cap))
    return rows


def to_csv(rows: list[Row]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["instance", "order", "task", "fast_s", "oracle_s", "speedup"])
    for r in rows:
        out.writerow([r.instance, r.order, r.task, f"{r.fast_s:.6f}",
                      "skipped" if r.oracle_s is None else f"{r.oracle_s:.6f}",
                      "" if r.speedup is None else f"{r.speedup:.1f}"])
    return buf.getvalue()


def to_table(rows: list[Row]) -> str:
    lines = [f"{'instance':<10} {'|W|':>16} {'task':<12} {'fast (s)':>10} {'oracle (s)':>11} {'speedup':>9}"]
    for r in rows:
        oracle = "skipped" if r.oracle_s is None else f"{r.oracle_s:.4f}"
        speed = "" if r.speedup is None else f"{r.speedup:.0f}x"
        lines.append(f"{r.instance:<10} {r.order:>16,} {r.task:<12} {r.fast_s:>10.4f} {oracle:>11} {speed:>9}")
    return "\n".join(lines)
