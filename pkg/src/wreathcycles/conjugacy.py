"""Territory decompositions, conjugacy tests with witnesses, and class sizes.

Two elements of ``S = K wr Sym(Gamma)`` are conjugate exactly when their
multisets of loads agree. In ``W = K wr H`` one additionally needs a top
``t in H`` with ``h^t = g`` carrying the territory decomposition of one onto
the other; the base part of the witness is then assembled cycle by cycle.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .core import (Load, WreathContext, WreathCycle, WreathCycleSet, WreathElement, conjugate,
                   map_E, mul, territory, wreath_cycle_decomposition)
from .koracle import GroupOracle
from .perm import Permutation, conjugating_element_in_group, right_transversal, subgroup


@dataclass(frozen=True)
class TerritoryDecomposition:
    """Territories of the wreath cycles, grouped by load; canonical sorted form."""

    parts: tuple[tuple[Load, tuple[tuple[int, ...], ...]], ...]

    @classmethod
    def from_groups(cls, groups: dict) -> TerritoryDecomposition:
        return cls(tuple(sorted((Load(*L), tuple(sorted(tuple(sorted(t)) for t in terrs)))
                                for L, terrs in groups.items() if terrs)))

    @classmethod
    def of(cls, w: WreathElement | WreathCycleSet) -> TerritoryDecomposition:
        dec = w if isinstance(w, WreathCycleSet) else wreath_cycle_decomposition(w)
        groups: dict = {}
        for z in dec:
            groups.setdefault(z.load, []).append(z.territory)
        return cls.from_groups(groups)

    def apply(self, t: Permutation) -> TerritoryDecomposition:
        ti = t.images
        return TerritoryDecomposition.from_groups(
            {L: [[ti[x] for x in terr] for terr in terrs] for L, terrs in self.parts})

    @property
    def loads(self) -> list[Load]:
        return [L for L, _ in self.parts]

    @property
    def territory(self) -> frozenset[int]:
        return frozenset(x for _, terrs in self.parts for terr in terrs for x in terr)

    def __getitem__(self, load) -> tuple[tuple[int, ...], ...]:
        for L, terrs in self.parts:
            if L == tuple(load):
                return terrs
        return ()

    def __len__(self) -> int:
        return sum(len(terrs) for _, terrs in self.parts)

    def matrix(self, num_classes: int, degree: int) -> list[list[str]]:
        """Cells of the ``classes x lengths`` display; ``-`` marks an empty cell."""
        rows = [["-"] * degree for _ in range(num_classes)]
        for L, terrs in self.parts:
            rows[L.yade_class][L.top_order - 1] = ", ".join(
                "{" + ",".join(str(x + 1) for x in terr) + "}" for terr in terrs)
        return rows

    def render(self, num_classes: int, degree: int) -> str:
        rows = self.matrix(num_classes, degree)
        header = ["", *(str(j) for j in range(1, degree + 1))]
        table = [header] + [[f"k{i + 1}", *row] for i, row in enumerate(rows)]
        widths = [max(len(r[c]) for r in table) for c in range(degree + 1)]
        return "\n".join("  ".join(cell.ljust(wd) for cell, wd in zip(r, widths)).rstrip()
                         for r in table)


def territory_decomposition(w: WreathElement) -> TerritoryDecomposition:
    return TerritoryDecomposition.of(w)


def apply_permutation(P: TerritoryDecomposition, t: Permutation) -> TerritoryDecomposition:
    return P.apply(t)


def conjugate_chain(K: GroupOracle, a_parts: Sequence, b_parts: Sequence, c0) -> list:
    """Return ``c_0, ..., c_l`` with ``b_i = c_i^-1 a_i c_(i+1)`` and ``c_l = c_0``.

    Needs ``(prod a)^c0 == prod b``.
    """
    if len(a_parts) != len(b_parts):
        raise ValueError("chains must have equal length")
    if K.conj(K.prod(a_parts), c0) != K.prod(b_parts):
        raise ValueError("c0 does not conjugate the product of a_parts to that of b_parts")
    cs = [c0]
    for a, b in zip(a_parts, b_parts):
        cs.append(K.mul(K.mul(K.inv(a), cs[-1]), b))
    return cs


def _cycle_image_ok(w: WreathElement, v: WreathElement, t: Permutation) -> bool:
    return (w.top.conjugate(t) == v.top
            and frozenset(t.images[x] for x in territory(w)) == territory(v))


def conjugate_wreath_cycles(w: WreathElement | WreathCycle, v: WreathElement | WreathCycle,
                            t: Permutation) -> tuple | None:
    """Base map ``s`` with ``w^(s,t) == v`` for wreath cycles w, v, or None.

    ``s`` is the identity off ``terr(w)``. Requires ``h^t == g`` and
    ``terr(w)^t == terr(v)``; returns None when the yade classes differ.
    """
    if isinstance(w, WreathCycle):
        w = w.element
    if isinstance(v, WreathCycle):
        v = v.element
    if not _cycle_image_ok(w, v, t):
        raise ValueError("precondition violated: need h^t = g and terr(w)^t = terr(v)")
    ctx = w.ctx
    K = ctx.base
    terr = territory(w)
    if not terr:
        return (K.identity,) * ctx.gamma_degree
    g0 = min(terr)
    ti = t.images
    f, e = w.base, v.base
    s = [K.identity] * ctx.gamma_degree
    if w.top.is_identity():
        c = K.conj_witness(f[g0], e[ti[g0]])
        if c is None:
            return None
        s[g0] = c
        return tuple(s)
    h, g = w.top.images, v.top.images
    orbit_w, orbit_v = [g0], [ti[g0]]
    while len(orbit_w) < len(terr):
        orbit_w.append(h[orbit_w[-1]])
        orbit_v.append(g[orbit_v[-1]])
    a_parts = [f[x] for x in orbit_w]
    b_parts = [e[x] for x in orbit_v]
    c0 = K.conj_witness(K.prod(a_parts), K.prod(b_parts))
    if c0 is None:
        return None
    cs = conjugate_chain(K, a_parts, b_parts, c0)
    for x, c in zip(orbit_w, cs):
        s[x] = c
    return tuple(s)


def is_conjugate_in_S(w: WreathElement, v: WreathElement) -> bool:
    """Conjugacy in the full monomial group: equal load multisets."""
    if w.ctx.gamma_degree != v.ctx.gamma_degree:
        return False
    return (Counter(z.load for z in wreath_cycle_decomposition(w))
            == Counter(z.load for z in wreath_cycle_decomposition(v)))


def assemble_conjugator(dec_w: WreathCycleSet, dec_v: WreathCycleSet, t: Permutation) -> tuple:
    """Base map ``s`` with ``w^(s,t) = v``, given that ``t`` maps P(w) onto P(v)."""
    ctx = dec_w.element.ctx
    by_terr = {frozenset(territory(z.element)): z for z in dec_v}
    ti = t.images
    s = [ctx.base.identity] * ctx.gamma_degree
    for z in dec_w:
        image = frozenset(ti[x] for x in territory(z.element))
        y = by_terr[image]
        sz = conjugate_wreath_cycles(z, y, t)
        if sz is None:
            raise ValueError("cycles paired by t have different yade classes")
        for x in z.territory:
            s[x] = sz[x]
    return tuple(s)


def _sym_top_conjugator(dec_w: WreathCycleSet, dec_v: WreathCycleSet, n: int) -> Permutation:
    """Top ``t`` in Sym(Gamma) with ``h^t = g`` and ``P(w)^t = P(v)``; loads must agree."""
    images = [-1] * n
    for L, zs in dec_w.grouping.items():
        for z, y in zip(zs, dec_v.grouping[L]):
            for a, b in zip(z.orbit(), y.orbit()):
                images[a] = b
    used = set(images)
    free_src = [x for x in range(n) if images[x] == -1]
    free_dst = [x for x in range(n) if x not in used]
    for a, b in zip(free_src, free_dst):
        images[a] = b
    return Permutation._trusted(tuple(images))


def find_top_conjugator(w: WreathElement, v: WreathElement, ctx: WreathContext | None = None,
                        dec_w: WreathCycleSet | None = None,
                        dec_v: WreathCycleSet | None = None) -> Permutation | None:
    """Some ``t in H`` with ``h^t = g`` and ``P(w)^t = P(v)``, or None."""
    ctx = ctx or w.ctx
    dec_w = dec_w or wreath_cycle_decomposition(w)
    dec_v = dec_v or wreath_cycle_decomposition(v)
    if Counter(z.load for z in dec_w) != Counter(z.load for z in dec_v):
        return None
    if ctx.full_symmetric_top:
        return _sym_top_conjugator(dec_w, dec_v, ctx.gamma_degree)
    H = ctx.top
    t0 = conjugating_element_in_group(H, w.top, v.top)
    if t0 is None:
        return None
    Pw, Pv = TerritoryDecomposition.of(dec_w), TerritoryDecomposition.of(dec_v)
    for c in H.centraliser_elements(w.top):
        t = c * t0
        if Pw.apply(t) == Pv:
            return t
    return None


def conjugacy_witness_in_W(w: WreathElement, v: WreathElement,
                           ctx: WreathContext | None = None) -> WreathElement | None:
    """Some ``a in W`` with ``w^a == v``, or None when w and v are not W-conjugate."""
    ctx = ctx or w.ctx
    if w.ctx is not v.ctx:
        raise ValueError("elements belong to different wreath contexts")
    dec_w, dec_v = wreath_cycle_decomposition(w), wreath_cycle_decomposition(v)
    t = find_top_conjugator(w, v, ctx, dec_w, dec_v)
    if t is None:
        return None
    return WreathElement(ctx, assemble_conjugator(dec_w, dec_v, t), t)


def map_B(K: GroupOracle, h: Permutation, gamma0: int, x, d: dict | None = None) -> tuple:
    """Base map on the single cycle h whose yade at ``gamma0`` is ``x``.

    ``d`` gives the entries on ``supp(h) - {gamma0}`` (missing points are the
    identity); the entry at gamma0 is ``x * d[gamma0^(h^(m-1))]^-1 * ... * d[gamma0^h]^-1``.
    """
    cyc = h.cycles()
    if len(cyc) != 1:
        raise ValueError("h must be a single nontrivial cycle")
    if gamma0 not in cyc[0]:
        raise ValueError(f"point {gamma0 + 1} is not moved by h")
    d = d or {}
    if any(p not in cyc[0] or p == gamma0 for p in d):
        raise ValueError("d must be defined on supp(h) minus gamma0")
    hi = h.images
    orbit = [gamma0]
    for _ in range(len(cyc[0]) - 1):
        orbit.append(hi[orbit[-1]])
    base = [K.identity] * h.degree
    head = x
    for p in reversed(orbit[1:]):
        dp = d.get(p, K.identity)
        base[p] = dp
        head = K.mul(head, K.inv(dp))
    base[gamma0] = head
    return tuple(base)


def count_cycles_with_yade_in(h: Permutation, gamma: int, P, K: GroupOracle) -> int:
    """Number of wreath cycles with top h whose yade at gamma lies in P."""
    cyc = h.cycles()
    if len(cyc) != 1 or gamma not in cyc[0]:
        raise ValueError("gamma must lie in the support of the single cycle h")
    return len(set(P)) * K.size() ** (len(cyc[0]) - 1)


# --- class sizes and the class parameterisation --------------------------

def sym_centraliser_order(h: Permutation) -> int:
    counts = Counter(len(c) for c in h.cycles())
    fixed = h.degree - sum(o * m for o, m in counts.items())
    return math.prod(o ** m * math.factorial(m) for o, m in counts.items()) * math.factorial(fixed)


def sym_stabiliser_order(dec: WreathCycleSet, degree: int) -> int:
    """``|Stab_{C_Sym(Gamma)(h)}(P(w))| = prod_L |h_L|^m_L m_L! * (n - |terr|)!``."""
    terr = sum(z.length for z in dec)
    return (math.prod(L.top_order ** len(zs) * math.factorial(len(zs))
                      for L, zs in dec.grouping.items())
            * math.factorial(degree - terr))


def top_stabiliser_elements(w: WreathElement, ctx: WreathContext | None = None,
                            P: TerritoryDecomposition | None = None) -> list[Permutation]:
    """``Stab_{C_H(h)}(P(w))`` by filtering the enumerated centraliser."""
    ctx = ctx or w.ctx
    P = P or TerritoryDecomposition.of(w)
    return [t for t in ctx.top.centraliser_elements(w.top) if P.apply(t) == P]


def top_stabiliser_order(w: WreathElement, ctx: WreathContext | None = None) -> int:
    ctx = ctx or w.ctx
    if ctx.full_symmetric_top:
        return sym_stabiliser_order(wreath_cycle_decomposition(w), ctx.gamma_degree)
    return len(top_stabiliser_elements(w, ctx))


def class_size(w: WreathElement, ctx: WreathContext | None = None) -> int:
    """Size of the W-conjugacy class of w.

    Equals ``|h^H| * |P(w)^C_H(h)| * prod |yade class| * prod |K|^(|h_z|-1)``;
    the first two factors multiply to ``|H| / |Stab_C_H(h)(P(w))|``.
    """
    ctx = ctx or w.ctx
    K = ctx.base
    dec = wreath_cycle_decomposition(w)
    if ctx.full_symmetric_top:
        top_part = math.factorial(ctx.gamma_degree) // sym_stabiliser_order(dec, ctx.gamma_degree)
    else:
        top_part = ctx.top.order() // top_stabiliser_order(w, ctx)
    yades = math.prod(K.class_size(z.yade_at_anchor) for z in dec)
    bases = math.prod(K.size() ** (z.length - 1) for z in dec.starred)
    return top_part * yades * bases


@dataclass
class ClassParameter:
    """Coordinates of one element of a W-class.

    ``x`` and ``d`` are keyed by the anchor of each wreath cycle of the
    representative; ``d[anchor]`` maps the other support points to K.
    """
    t_a: Permutation
    c: Permutation
    x: dict = field(default_factory=dict)
    d: dict = field(default_factory=dict)


def class_element(w: WreathElement, ctx: WreathContext | None, p: ClassParameter) -> WreathElement:
    """Image of a parameter bundle under the class bijection of w."""
    ctx = ctx or w.ctx
    K = ctx.base
    dec = wreath_cycle_decomposition(w)
    if not (ctx.full_symmetric_top or p.t_a in ctx.top):
        raise ValueError(f"t_a = {p.t_a} is not in H")
    if p.c * w.top != w.top * p.c:
        raise ValueError(f"c = {p.c} does not centralise the top of w")
    ct = p.c * p.t_a
    ci = ct.images
    result = ctx.identity()
    anchors = {z.anchor for z in dec}
    if set(p.x) != anchors:
        raise ValueError("x must give one yade per wreath cycle anchor")
    for z in dec:
        xz = p.x[z.anchor]
        if K.class_of(xz) != z.load.yade_class:
            raise ValueError(f"x at anchor {z.anchor + 1} is not in the yade class of its cycle")
        if z.length == 1:
            result = mul(result, WreathElement(ctx, map_E(ctx, ci[z.anchor], xz),
                                               Permutation.identity(ctx.gamma_degree)))
            continue
        dz = p.d.get(z.anchor, {})
        if any(q not in z.territory or q == z.anchor for q in dz):
            raise ValueError(f"d at anchor {z.anchor + 1} is defined off its cycle")
        top = z.top.conjugate(ct)
        base = map_B(K, top, ci[z.anchor], xz, {ci[q]: k for q, k in dz.items()})
        result = mul(result, WreathElement(ctx, base, top))
    extra = set(p.d) - {z.anchor for z in dec.starred}
    if extra:
        raise ValueError("d given for anchors of non-starred cycles")
    return result


def iter_class_parameters(w: WreathElement, ctx: WreathContext | None = None) -> Iterator[ClassParameter]:
    """Every parameter bundle of the class bijection of w (small instances only)."""
    ctx = ctx or w.ctx
    K = ctx.base
    H = ctx.top
    dec = wreath_cycle_decomposition(w)
    P = TerritoryDecomposition.of(dec)
    cent = subgroup(H, H.centraliser_elements(w.top))
    stab = subgroup(H, [t for t in cent.elements() if P.apply(t) == P])
    transversal = right_transversal(H, cent)
    cs = right_transversal(cent, stab)
    elements = K.enumerate()
    x_choices = [[y for y in elements if K.class_of(y) == z.load.yade_class] for z in dec]
    d_points = [(z.anchor, [q for q in z.orbit()[1:]]) for z in dec.starred]
    d_choices = [itertools.product(elements, repeat=len(pts)) for _, pts in d_points]
    d_all = list(itertools.product(*d_choices))
    for t_a in transversal:
        for c in cs:
            for xs in itertools.product(*x_choices):
                x = {z.anchor: xv for z, xv in zip(dec, xs)}
                for ds in d_all:
                    d = {a: dict(zip(pts, vals)) for (a, pts), vals in zip(d_points, ds)}
                    yield ClassParameter(t_a, c, x, d)


def verify_witness(w: WreathElement, v: WreathElement, a: WreathElement) -> bool:
    return a.ctx.in_W(a) and conjugate(w, a) == v
