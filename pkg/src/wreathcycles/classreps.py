"""Conjugacy class representatives of ``W = K wr H``.

For each class representative h of H, the W-classes with top conjugate to h
correspond to orbits of ``C_H(h)`` on territory decompositions of elements
with top h. Such a decomposition is encoded as a *labelling*: one slot per
nontrivial cycle of h and per fixed point, ordered by smallest point. A cycle
slot holds the K-class index of its yade (0 = identity class); a fixed-point
slot holds 0 when the point lies outside the territory and otherwise a
non-identity class index. Every slot therefore has exactly r = |classes of K|
values, and a labelling is a base-r integer with slot 0 most significant.
"""
from __future__ import annotations

from collections import deque
from typing import Iterator

import numpy as np

from .centraliser import centraliser_in_sym
from .conjugacy import TerritoryDecomposition
from .core import Load, WreathContext, WreathElement, wreath_cycle_decomposition
from .koracle import GroupOracle
from .perm import (EnumerationCapExceeded, GeneratedPermGroup, Permutation,
                   conjugacy_classes, conjugating_element_in_group, small_generating_set)

DEFAULT_LABELLING_CAP = 10**7

Labelling = tuple[int, ...]


def slots(h: Permutation) -> list[tuple[int, ...]]:
    """Nontrivial cycles and fixed points of h, ordered by smallest point."""
    out = list(h.cycles()) + [(x,) for x in range(h.degree) if h.images[x] == x]
    out.sort()
    return out


def enumerate_labellings(h: Permutation, K: GroupOracle) -> Iterator[Labelling]:
    """Every labelling for top h, in increasing code order."""
    r = K.num_classes()
    S = len(slots(h))
    for code in range(r ** S):
        yield decode(code, r, S)


def decode(code: int, r: int, S: int) -> Labelling:
    digits = []
    for _ in range(S):
        code, d = divmod(code, r)
        digits.append(d)
    return tuple(reversed(digits))


def encode(lab: Labelling, r: int) -> int:
    code = 0
    for d in lab:
        code = code * r + d
    return code


def labelling_of(P: TerritoryDecomposition, h: Permutation) -> Labelling:
    """Labelling of a territory decomposition of an element with top h."""
    label = {}
    for L, terrs in P.parts:
        for terr in terrs:
            label[terr[0]] = L.yade_class
    return tuple(label.get(s[0], 0) for s in slots(h))


def decomposition_of(lab: Labelling, h: Permutation) -> TerritoryDecomposition:
    groups: dict = {}
    for s, d in zip(slots(h), lab):
        if len(s) == 1 and d == 0:
            continue
        groups.setdefault(Load(d, len(s)), []).append(s)
    return TerritoryDecomposition.from_groups(groups)


def slot_permutation(h: Permutation, t: Permutation, slot_list=None) -> tuple[int, ...]:
    """Where t (centralising h) sends each slot."""
    slot_list = slot_list or slots(h)
    where = {}
    for i, s in enumerate(slot_list):
        for x in s:
            where[x] = i
    return tuple(where[t.images[s[0]]] for s in slot_list)


def _image_codes(r: int, S: int, perm: tuple[int, ...], codes: np.ndarray) -> np.ndarray:
    img = np.zeros_like(codes)
    for i in range(S):
        digit = (codes // r ** (S - 1 - i)) % r
        img += digit * r ** (S - 1 - perm[i])
    return img


def orbit_minima(r: int, S: int, perms: list[tuple[int, ...]],
                 cap: int = DEFAULT_LABELLING_CAP) -> np.ndarray:
    """For every code, the smallest code in its orbit under the slot permutations.

    Minimum label propagation along generator edges plus pointer jumping; a
    finite group's generator graph is strongly connected on each orbit, so the
    fixed point is the orbit minimum.
    """
    N = r ** S
    if N > cap:
        raise EnumerationCapExceeded(f"{N} labellings exceed the cap {cap}")
    codes = np.arange(N, dtype=np.int64)
    images = [_image_codes(r, S, p, codes) for p in perms if list(p) != list(range(S))]
    lab = codes
    while True:
        prev = lab
        for img in images:
            lab = np.minimum(lab, lab[img])
        while True:
            jumped = lab[lab]
            if np.array_equal(jumped, lab):
                break
            lab = jumped
        if np.array_equal(lab, prev):
            return lab


def top_class_representatives(ctx: WreathContext) -> list[Permutation]:
    """Class representatives of H, canonical order (identity first)."""
    if ctx.full_symmetric_top:
        return _symmetric_class_reps(ctx.gamma_degree)
    return [c[0] for c in conjugacy_classes(ctx.top)]


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _symmetric_class_reps(n: int) -> list[Permutation]:
    reps = []
    for part in _partitions(n):
        # shortest cycles first from point 1, fixed points last: the layout
        # whose cycle notation sorts first, as in conjugacy_classes
        cycles, start = [], 0
        for k in sorted(x for x in part if x > 1):
            cycles.append(list(range(start, start + k)))
            start += k
        reps.append(Permutation.from_cycles(cycles, n))
    reps.sort(key=lambda p: (p.order(), len(p.support()), p.cycle_key()))
    return reps


def centraliser_generators_in_top(ctx: WreathContext, h: Permutation) -> list[Permutation]:
    if ctx.full_symmetric_top:
        return centraliser_in_sym(h).generators
    if h.is_identity():
        return list(ctx.top.generators)
    return small_generating_set(ctx.top.centraliser_elements(h), ctx.gamma_degree)


def _orbit_min_codes(ctx: WreathContext, h: Permutation, cap: int) -> np.ndarray:
    r = ctx.base.num_classes()
    slot_list = slots(h)
    perms = [slot_permutation(h, t, slot_list) for t in centraliser_generators_in_top(ctx, h)]
    lab = orbit_minima(r, len(slot_list), perms, cap)
    return np.flatnonzero(lab == np.arange(lab.size))


def orbit_representatives(h: Permutation, ctx: WreathContext,
                          cap: int = DEFAULT_LABELLING_CAP) -> list[TerritoryDecomposition]:
    """One territory decomposition (lexicographically least labelling) per C_H(h)-orbit."""
    r = ctx.base.num_classes()
    S = len(slots(h))
    return [decomposition_of(decode(int(c), r, S), h) for c in _orbit_min_codes(ctx, h, cap)]


def count_orbits(h: Permutation, ctx: WreathContext, cap: int = DEFAULT_LABELLING_CAP) -> int:
    return int(_orbit_min_codes(ctx, h, cap).size)


def burnside_count(h: Permutation, ctx: WreathContext) -> int:
    """Orbit count by averaging fixed labellings over all of C_H(h)."""
    r = ctx.base.num_classes()
    slot_list = slots(h)
    if ctx.full_symmetric_top:
        elements = GeneratedPermGroup(ctx.gamma_degree, centraliser_in_sym(h).generators,
                                      ctx.top.size_cap).elements()
    else:
        elements = ctx.top.centraliser_elements(h)
    total = 0
    for t in elements:
        perm = slot_permutation(h, t, slot_list)
        total += r ** _count_cycles(perm)
    return total // len(elements)


def _count_cycles(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    count = 0
    for i in range(len(perm)):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return count


def phi_h(P: TerritoryDecomposition, h: Permutation, ctx: WreathContext) -> WreathElement:
    """Sparse representative with top h: each territory carries its class representative at its minimum."""
    K = ctx.base
    reps = K.class_representatives()
    cycles = {c: len(c) for c in h.cycles()}
    cycle_of = {c[0]: c for c in cycles}
    base = [K.identity] * ctx.gamma_degree
    covered = set()
    for L, terrs in P.parts:
        for terr in terrs:
            if L.top_order == 1:
                if len(terr) != 1 or h.images[terr[0]] != terr[0] or L.yade_class == 0:
                    raise ValueError(f"territory {terr} is not a labelled fixed point of h")
            else:
                c = cycle_of.get(terr[0])
                if c is None or sorted(c) != list(terr) or len(c) != L.top_order:
                    raise ValueError(f"territory {terr} is not a cycle of h")
                covered.add(c)
            base[terr[0]] = reps[L.yade_class]
    if len(covered) != len(cycles):
        raise ValueError("every nontrivial cycle of h needs a territory")
    return WreathElement(ctx, tuple(base), h)


def _phi_code(code: int, h: Permutation, slot_list, reps, r: int, ctx: WreathContext) -> WreathElement:
    base = [reps[0]] * ctx.gamma_degree
    for s, d in zip(slot_list, decode(code, r, len(slot_list))):
        base[s[0]] = reps[d]
    return WreathElement(ctx, tuple(base), h)


def class_subtotals(ctx: WreathContext, cap: int = DEFAULT_LABELLING_CAP) -> list[tuple[Permutation, int]]:
    """``(h, number of W-classes with top conjugate to h)`` for each class representative h of H."""
    return [(h, count_orbits(h, ctx, cap)) for h in top_class_representatives(ctx)]


def class_count(ctx: WreathContext, cap: int = DEFAULT_LABELLING_CAP) -> int:
    return sum(n for _, n in class_subtotals(ctx, cap))


def class_representatives(ctx: WreathContext, cap: int = DEFAULT_LABELLING_CAP) -> Iterator[WreathElement]:
    """Stream one sparse representative per W-conjugacy class."""
    K = ctx.base
    r = K.num_classes()
    reps = K.class_representatives()
    for h in top_class_representatives(ctx):
        slot_list = slots(h)
        for code in _orbit_min_codes(ctx, h, cap):
            yield _phi_code(int(code), h, slot_list, reps, r, ctx)


class ClassKeyer:
    """Complete conjugacy invariant: (class of the top in H, least labelling in the orbit)."""

    def __init__(self, ctx: WreathContext):
        self.ctx = ctx
        self.reps = top_class_representatives(ctx)
        self.r = ctx.base.num_classes()
        self._top_cache: dict = {}
        self._perm_cache: dict = {}

    def _top(self, g: Permutation) -> tuple[int, Permutation]:
        if g not in self._top_cache:
            for i, h in enumerate(self.reps):
                if self.ctx.full_symmetric_top:
                    t = _sym_conjugator(g, h)
                else:
                    t = conjugating_element_in_group(self.ctx.top, g, h)
                if t is not None:
                    self._top_cache[g] = (i, t)
                    break
            else:
                raise ValueError(f"{g} is not in H")
        return self._top_cache[g]

    def _perms(self, i: int):
        if i not in self._perm_cache:
            h = self.reps[i]
            sl = slots(h)
            self._perm_cache[i] = [slot_permutation(h, t, sl)
                                   for t in centraliser_generators_in_top(self.ctx, h)]
        return self._perm_cache[i]

    def __call__(self, w: WreathElement) -> tuple[int, Labelling]:
        i, t = self._top(w.top)
        h = self.reps[i]
        lab = labelling_of(TerritoryDecomposition.of(wreath_cycle_decomposition(w)).apply(t), h)
        best = lab
        seen = {lab}
        queue = deque([lab])
        perms = self._perms(i)
        while queue:
            x = queue.popleft()
            for p in perms:
                y = [0] * len(x)
                for k, d in enumerate(x):
                    y[p[k]] = d
                y = tuple(y)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    best = min(best, y)
        return i, best


def _sym_conjugator(g: Permutation, h: Permutation) -> Permutation | None:
    """Some t in Sym(Gamma) with g^t = h, matching cycles by length in order."""
    gc = sorted(g.cycles(), key=len)
    hc = sorted(h.cycles(), key=len)
    if [len(c) for c in gc] != [len(c) for c in hc]:
        return None
    n = g.degree
    images = [-1] * n
    for a, b in zip(gc, hc):
        for x, y in zip(a, b):
            images[x] = y
    free_dst = sorted(set(range(n)) - set(images))
    for x, y in zip([x for x in range(n) if images[x] == -1], free_dst):
        images[x] = y
    return Permutation._trusted(tuple(images))


def class_key(w: WreathElement, ctx: WreathContext | None = None):
    return ClassKeyer(ctx or w.ctx)(w)


def labelling_count(h: Permutation, K: GroupOracle) -> int:
    return K.num_classes() ** len(slots(h))


def expected_burnside_total(ctx: WreathContext) -> int:
    return sum(burnside_count(h, ctx) for h in top_class_representatives(ctx))
