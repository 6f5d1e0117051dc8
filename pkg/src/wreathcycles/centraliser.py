"""Centralisers ``C_W(w)`` from a sparse wreath cycle decomposition.

After conjugating w into sparse form v (each wreath cycle carries its yade at
one point and the identity elsewhere), every centralising element ``(s, t)``
is determined by a top ``t`` stabilising the territory decomposition inside
``C_H(h)`` and, per wreath cycle, one element of the centraliser in K of the
reference yade of its load, plus arbitrary values off the territory.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .conjugacy import TerritoryDecomposition, sym_stabiliser_order, top_stabiliser_elements
from .core import (Load, WreathContext, WreathCycleSet, WreathElement, inverse, mul,
                   sparse_decomposition, wreath_cycle_decomposition)
from .perm import Permutation, small_generating_set


def psi_embed(pairs, sigma: Permutation) -> Permutation:
    """Permute equal-length disjoint cycles: ``g_i^(h_i^j) -> g_s(i)^(h_s(i)^j)``.

    ``pairs`` is a list of ``(cycle, anchor)``; ``sigma`` acts on the indices.
    """
    if not pairs:
        return sigma
    degree = pairs[0][0].degree
    if sigma.degree != len(pairs):
        raise ValueError("sigma must act on the index set of pairs")
    orbits = []
    seen = set()
    for h, g in pairs:
        cyc = h.cycles()
        if len(cyc) > 1 or (cyc and g not in cyc[0]) or (not cyc and h.degree != degree):
            raise ValueError("each pair needs a single cycle and a point of its support")
        orbit = [g]
        for _ in range(len(cyc[0]) - 1 if cyc else 0):
            orbit.append(h.images[orbit[-1]])
        if orbits and len(orbit) != len(orbits[0]):
            raise ValueError("cycles must have equal order")
        if seen & set(orbit):
            raise ValueError("cycles must be pairwise disjoint")
        seen.update(orbit)
        orbits.append(orbit)
    images = list(range(degree))
    for i, orbit in enumerate(orbits):
        target = orbits[sigma.images[i]]
        for a, b in zip(orbit, target):
            images[a] = b
    return Permutation._trusted(tuple(images))


def _transposition(n: int, i: int, j: int) -> Permutation:
    return Permutation.from_cycles([[i, j]], n)


def _symmetric_generators(points: list[int], degree: int) -> list[Permutation]:
    gens = []
    if len(points) >= 2:
        gens.append(Permutation.from_cycles([points[:2]], degree))
    if len(points) >= 3:
        gens.append(Permutation.from_cycles([points], degree))
    return gens


def _block_generators(orbits: list[list[int]], degree: int) -> list[Permutation]:
    """Generators of ``<cycle> wr Sym(m)`` on m equal-length orbits with fixed start points."""
    gens = []
    if len(orbits[0]) > 1:
        gens.extend(Permutation.from_cycles([o], degree) for o in orbits)
    m = len(orbits)
    pairs = [(Permutation.from_cycles([o], degree) if len(o) > 1 else Permutation.identity(degree), o[0])
             for o in orbits]
    for i in range(m - 1):
        gens.append(psi_embed(pairs, _transposition(m, i, i + 1)))
    return gens


@dataclass
class SymCentraliser:
    order: int
    generators: list[Permutation]


def centraliser_in_sym(h: Permutation) -> SymCentraliser:
    """``C_Sym(Gamma)(h)`` as ``prod_o (C_o wr Sym(m_o)) x Sym(fix(h))`` with generators."""
    n = h.degree
    by_len: dict[int, list[list[int]]] = {}
    for c in h.cycles():
        by_len.setdefault(len(c), []).append(list(c))
    gens = []
    for o in sorted(by_len):
        gens.extend(_block_generators(by_len[o], n))
    fixed = [x for x in range(n) if h.images[x] == x]
    gens.extend(_symmetric_generators(fixed, n))
    order = math.prod(o ** len(cs) * math.factorial(len(cs)) for o, cs in by_len.items())
    return SymCentraliser(order * math.factorial(len(fixed)), gens)


# --- sparse anchors and the top stabiliser ---------------------------------

def sparse_anchors(dec: WreathCycleSet) -> dict[int, int]:
    """Map each cycle's minimal anchor to the point carrying its base value."""
    ident = dec.element.ctx.base.identity
    out = {}
    for z in dec:
        nontrivial = [x for x in z.territory if z.element.base[x] != ident]
        if len(nontrivial) > 1:
            raise ValueError(f"wreath cycle at {z.anchor + 1} is not sparse")
        out[z.anchor] = nontrivial[0] if nontrivial else z.anchor
    return out


@dataclass
class TopStabDecomposition:
    """``t = prod_L (prod_z h_z^e_z) * Psi_L(sigma_L) * pi_0``.

    ``exponents`` and the index order of each ``sigma[L]`` refer to cycles by
    their minimal anchor, listed in ascending order within a load.
    """
    exponents: dict[int, int]
    sigma: dict[Load, Permutation]
    residual: Permutation


def decompose_top(dec: WreathCycleSet, t: Permutation,
                  anchors: dict[int, int] | None = None) -> TopStabDecomposition:
    """Read off (e_z, sigma_L, pi_0) from a t stabilising P(w) and centralising h."""
    anchors = anchors or {z.anchor: z.anchor for z in dec}
    n = t.degree
    ti = t.images
    where: dict[int, tuple[int, int]] = {}
    for z in dec:
        for j, x in enumerate(z.orbit(anchors[z.anchor])):
            where[x] = (z.anchor, j)
    exponents = {}
    sigma = {}
    for L, zs in dec.grouping.items():
        index = {z.anchor: i for i, z in enumerate(zs)}
        images = [0] * len(zs)
        for i, z in enumerate(zs):
            hit = where.get(ti[anchors[z.anchor]])
            if hit is None or hit[0] not in index:
                raise ValueError(f"{t} does not stabilise the territory decomposition")
            images[i] = index[hit[0]]
            exponents[z.anchor] = hit[1]
        if sorted(images) != list(range(len(zs))):
            raise ValueError(f"{t} does not stabilise the territory decomposition")
        sigma[L] = Permutation._trusted(tuple(images))
    res = list(range(n))
    for x in range(n):
        if x not in where:
            res[x] = ti[x]
    try:
        residual = Permutation(res)
    except ValueError:
        raise ValueError(f"{t} does not stabilise the territory decomposition") from None
    D = TopStabDecomposition(exponents, sigma, residual)
    if reassemble_top(dec, D, anchors) != t:
        raise ValueError(f"{t} is not in the stabiliser of P(w) in the centraliser of h")
    return D


def reassemble_top(dec: WreathCycleSet, D: TopStabDecomposition,
                   anchors: dict[int, int] | None = None) -> Permutation:
    anchors = anchors or {z.anchor: z.anchor for z in dec}
    images = list(D.residual.images)
    for L, zs in dec.grouping.items():
        sig = D.sigma[L].images
        for i, z in enumerate(zs):
            y = zs[sig[i]]
            src = z.orbit(anchors[z.anchor])
            dst = y.orbit(anchors[y.anchor])
            m = len(src)
            e = D.exponents[z.anchor]
            for k, x in enumerate(src):
                images[x] = dst[(k + e) % m]
    return Permutation._trusted(tuple(images))


def stabiliser_generators_sym(dec: WreathCycleSet, degree: int) -> list[Permutation]:
    """Generators of ``Stab_{C_Sym(Gamma)(h)}(P(w))``."""
    gens = []
    for zs in dec.grouping.values():
        gens.extend(_block_generators([z.orbit() for z in zs], degree))
    terr = set()
    for z in dec:
        terr.update(z.territory)
    gens.extend(_symmetric_generators([x for x in range(degree) if x not in terr], degree))
    return gens


def stab_decomposition(w: WreathElement, ctx: WreathContext | None = None) -> tuple[list[Permutation], int]:
    """Generators and order of ``Stab_{C_H(h)}(P(w))``."""
    ctx = ctx or w.ctx
    dec = wreath_cycle_decomposition(w)
    if ctx.full_symmetric_top:
        return stabiliser_generators_sym(dec, ctx.gamma_degree), sym_stabiliser_order(dec, ctx.gamma_degree)
    elems = top_stabiliser_elements(w, ctx, TerritoryDecomposition.of(dec))
    return small_generating_set(elems, ctx.gamma_degree), len(elems)


# --- the parameterisation of the centraliser ------------------------------

def default_connectors(dec: WreathCycleSet, anchors: dict[int, int] | None = None) -> dict[int, object]:
    """``x_z`` with ``[g_z]f = x_z^-1 [g_L]f x_z``; the reference cycle of each load gets 1."""
    K = dec.element.ctx.base
    anchors = anchors or sparse_anchors(dec)
    f = dec.element.base
    out = {}
    for zs in dec.grouping.values():
        ref = f[anchors[zs[0].anchor]]
        for z in zs:
            out[z.anchor] = K.identity if z is zs[0] else K.conj_witness(ref, f[anchors[z.anchor]])
    return out


def centraliser_phi(w_sparse: WreathElement, c: dict, t: Permutation | None = None,
                    c0: dict | None = None, connectors: dict | None = None) -> WreathElement:
    """The centralising element ``(s, t)`` with coordinates ``c``, ``c0`` and top ``t``.

    ``c`` maps each cycle's minimal anchor to an element of the centraliser in
    K of its load's reference value; ``c0`` maps off-territory points to K
    (default identity). ``connectors`` defaults to :func:`default_connectors`.
    """
    ctx = w_sparse.ctx
    K = ctx.base
    n = ctx.gamma_degree
    dec = wreath_cycle_decomposition(w_sparse)
    anchors = sparse_anchors(dec)
    x = connectors if connectors is not None else default_connectors(dec, anchors)
    t = t if t is not None else Permutation.identity(n)
    if not (ctx.full_symmetric_top or t in ctx.top):
        raise ValueError(f"{t} is not in H")
    D = decompose_top(dec, t, anchors)
    f = w_sparse.base
    s = [K.identity] * n
    terr = set()
    for L, zs in dec.grouping.items():
        ref = f[anchors[zs[0].anchor]]
        sig = D.sigma[L].images
        for i, z in enumerate(zs):
            cz = c.get(z.anchor, K.identity)
            if K.mul(cz, ref) != K.mul(ref, cz):
                raise ValueError(f"c at {z.anchor + 1} does not centralise the reference yade")
            y = zs[sig[i]]
            e = D.exponents[z.anchor]
            head = K.mul(K.mul(K.inv(x[z.anchor]), cz), x[y.anchor])
            tail = K.mul(head, f[anchors[y.anchor]])
            orbit = z.orbit(anchors[z.anchor])
            m = len(orbit)
            for j in range(m):
                point = orbit[(j - e) % m]
                s[point] = tail if 1 <= j <= e else head
            terr.update(orbit)
    for p, k in (c0 or {}).items():
        if p in terr:
            raise ValueError(f"c0 given at territory point {p + 1}")
        s[p] = k
    return WreathElement(ctx, tuple(s), t)


@dataclass
class CentraliserDescription:
    element: WreathElement
    conjugator: WreathElement
    sparse: WreathElement
    anchors: dict[int, int]
    connectors: dict[int, object]
    base_factor_orders: dict[Load, int]
    stabiliser_generators: list[Permutation]
    stabiliser_order: int
    order: int
    generators: list[WreathElement] = field(default_factory=list)


def describe_centraliser(w: WreathElement, ctx: WreathContext | None = None,
                         with_generators: bool = True) -> CentraliserDescription:
    ctx = ctx or w.ctx
    K = ctx.base
    n = ctx.gamma_degree
    a, dec = sparse_decomposition(w)
    v = dec.element
    anchors = sparse_anchors(dec)
    x = default_connectors(dec, anchors)
    stab_gens, stab_order = stab_decomposition(v, ctx)
    factor_orders = {L: K.centraliser_order(v.base[anchors[zs[0].anchor]])
                     for L, zs in dec.grouping.items()}
    terr_size = sum(z.length for z in dec)
    order = (math.prod(factor_orders[L] ** len(zs) for L, zs in dec.grouping.items())
             * K.size() ** (n - terr_size) * stab_order)
    desc = CentraliserDescription(w, a, v, anchors, x, factor_orders, stab_gens, stab_order, order)
    if not with_generators:
        return desc
    gens = []
    for L, zs in dec.grouping.items():
        kgens = K.centraliser_generators(v.base[anchors[zs[0].anchor]])
        for z in zs:
            for k in kgens:
                gens.append(centraliser_phi(v, {z.anchor: k}, None, None, x))
    terr = {p for z in dec for p in z.territory}
    for p in range(n):
        if p not in terr:
            for k in K.generators():
                gens.append(centraliser_phi(v, {}, None, {p: k}, x))
    for t in stab_gens:
        gens.append(centraliser_phi(v, {}, t, None, x))
    a_inv = inverse(a)
    desc.generators = [mul(mul(a, g), a_inv) for g in gens]
    return desc


def centraliser_generators(w: WreathElement, ctx: WreathContext | None = None) -> list[WreathElement]:
    return describe_centraliser(w, ctx).generators


def centraliser_order(w: WreathElement, ctx: WreathContext | None = None) -> int:
    return describe_centraliser(w, ctx, with_generators=False).order
