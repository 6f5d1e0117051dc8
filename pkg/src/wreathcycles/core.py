"""Wreath product elements and their disjoint wreath cycle decomposition.

An element ``w = (f, h)`` of ``K wr_Gamma H`` is stored as a tuple ``base`` of
K-handles (``base[g]`` is the value of f at point g) and a top
:class:`~wreathcycles.perm.Permutation`. Multiplication follows

    (f, h) * (e, g) = (f * e^(h^-1), h * g),   entry at x:  f[x] * e[x^h].

Wreath cycles of an element of W generally live in the full monomial group
``S = K wr Sym(Gamma)``; nothing here asserts their tops lie in H.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .koracle import GroupOracle, PermGroupOracle, perm_group_oracle
from .perm import (DEFAULT_SIZE_CAP, EnumerationCapExceeded, GeneratedPermGroup, Permutation,
                   group_from_dict, group_to_dict, parse_permutation)


class WreathContext:
    """The ambient data ``(K, Gamma, H)`` shared by all elements of one wreath product."""

    def __init__(self, base: GroupOracle, top: GeneratedPermGroup,
                 full_symmetric_top: bool | None = None):
        self.base = base
        self.top = top
        self.gamma_degree = top.degree
        if full_symmetric_top is None:
            n = top.degree
            full_symmetric_top = False
            if math.factorial(n) <= top.size_cap:
                try:
                    full_symmetric_top = top.order() == math.factorial(n)
                except EnumerationCapExceeded:
                    full_symmetric_top = False
        self.full_symmetric_top = full_symmetric_top
        table = getattr(base, "table", None)
        self._table = table

    @classmethod
    def from_groups(cls, K: GeneratedPermGroup, H: GeneratedPermGroup,
                    full_symmetric_top: bool | None = None) -> WreathContext:
        return cls(perm_group_oracle(K), H, full_symmetric_top)

    @classmethod
    def symmetric_top(cls, K: GeneratedPermGroup, degree: int,
                      size_cap: int = DEFAULT_SIZE_CAP) -> WreathContext:
        return cls(perm_group_oracle(K), GeneratedPermGroup.symmetric(degree, size_cap), True)

    @classmethod
    def from_dict(cls, data: dict, size_cap: int = DEFAULT_SIZE_CAP) -> WreathContext:
        """Build from ``{"base": {group}, "top": {group}}``."""
        K = group_from_dict(data["base"], size_cap)
        H = group_from_dict(data["top"], size_cap)
        return cls(perm_group_oracle(K), H, data.get("full_symmetric_top"))

    def to_dict(self) -> dict:
        out = {"top": group_to_dict(self.top)}
        if isinstance(self.base, PermGroupOracle):
            out["base"] = group_to_dict(self.base.group)
        return out

    @classmethod
    def load(cls, path: str, size_cap: int = DEFAULT_SIZE_CAP) -> WreathContext:
        with open(path) as fh:
            return cls.from_dict(json.load(fh), size_cap)

    def identity(self) -> WreathElement:
        n = self.gamma_degree
        return WreathElement(self, (self.base.identity,) * n, Permutation.identity(n))

    def element(self, base: Sequence, top: Permutation | None = None) -> WreathElement:
        n = self.gamma_degree
        if top is None:
            top = Permutation.identity(n)
        if len(base) != n or top.degree != n:
            raise ValueError(f"element does not match |Gamma| = {n}")
        return WreathElement(self, tuple(base), top)

    def from_strings(self, base: Sequence[str], top: str) -> WreathElement:
        return self.element([self.base.parse(s) for s in base],
                            parse_permutation(top, self.gamma_degree))

    def parse(self, text: str) -> WreathElement:
        return parse_element(text, self)

    def order(self) -> int:
        return self.base.size() ** self.gamma_degree * self.top.order()

    def in_W(self, w: WreathElement) -> bool:
        return self.full_symmetric_top or w.top in self.top


class WreathElement:
    """An element ``(f, h)``; immutable."""

    __slots__ = ("ctx", "base", "top", "_hash")

    def __init__(self, ctx: WreathContext, base: tuple, top: Permutation):
        self.ctx = ctx
        self.base = base
        self.top = top
        self._hash = None

    def __mul__(self, other: WreathElement) -> WreathElement:
        return mul(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, WreathElement) and self.base == other.base
                and self.top == other.top)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.base, self.top.images))
        return self._hash

    def is_identity(self) -> bool:
        ident = self.ctx.base.identity
        return self.top.is_identity() and all(x == ident for x in self.base)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"WreathElement({format_element(self)!r})"


def _check_same(w: WreathElement, v: WreathElement):
    if w.ctx is not v.ctx:
        raise ValueError("elements belong to different wreath contexts")


def mul(w: WreathElement, v: WreathElement) -> WreathElement:
    _check_same(w, v)
    f, h, e = w.base, w.top.images, v.base
    table = w.ctx._table
    if table is not None:
        base = tuple([table[f[x]][e[h[x]]] for x in range(len(f))])
    else:
        m = w.ctx.base.mul
        base = tuple([m(f[x], e[h[x]]) for x in range(len(f))])
    return WreathElement(w.ctx, base, w.top * v.top)


def inverse(w: WreathElement) -> WreathElement:
    K = w.ctx.base
    hinv = w.top.inverse()
    hi = hinv.images
    base = tuple([K.inv(w.base[hi[x]]) for x in range(len(hi))])
    return WreathElement(w.ctx, base, hinv)


def conjugate(w: WreathElement, a: WreathElement) -> WreathElement:
    """``w^a = a^-1 * w * a``."""
    return mul(mul(inverse(a), w), a)


def power(w: WreathElement, m: int) -> WreathElement:
    if m < 0:
        w, m = inverse(w), -m
    result = w.ctx.identity()
    while m:
        if m & 1:
            result = mul(result, w)
        w = mul(w, w)
        m >>= 1
    return result


def territory(w: WreathElement) -> frozenset[int]:
    ident = w.ctx.base.identity
    h = w.top.images
    return frozenset(x for x in range(len(h)) if h[x] != x or w.base[x] != ident)


def is_wreath_cycle(w: WreathElement) -> bool:
    terr = territory(w)
    cycles = w.top.cycles()
    if not cycles:
        return len(terr) == 1
    return len(cycles) == 1 and terr == frozenset(cycles[0])


def restrict(f: Sequence, omega, identity) -> tuple:
    """Agree with ``f`` on ``omega`` and map everything else to ``identity``."""
    omega = set(omega)
    return tuple(x if i in omega else identity for i, x in enumerate(f))


class Load(NamedTuple):
    """``(yade class index, top order)``; sorts by class, then length."""
    yade_class: int
    top_order: int


@dataclass(frozen=True)
class WreathCycle:
    element: WreathElement
    anchor: int
    yade_at_anchor: object
    load: Load

    @property
    def territory(self) -> tuple[int, ...]:
        return tuple(sorted(territory(self.element)))

    @property
    def top(self) -> Permutation:
        return self.element.top

    @property
    def length(self) -> int:
        return self.load.top_order

    def orbit(self, start: int | None = None) -> list[int]:
        """Territory points in top-cycle order starting from ``start`` (default: anchor)."""
        x = self.anchor if start is None else start
        h = self.element.top.images
        pts = [x]
        for _ in range(self.length - 1):
            x = h[x]
            pts.append(x)
        return pts


@dataclass
class WreathCycleSet:
    element: WreathElement
    cycles: list[WreathCycle]
    grouping: dict[Load, list[WreathCycle]] = field(default_factory=dict)

    def __post_init__(self):
        self.grouping = {}
        for z in self.cycles:
            self.grouping.setdefault(z.load, []).append(z)
        self.grouping = dict(sorted(self.grouping.items()))

    @property
    def starred(self) -> list[WreathCycle]:
        return [z for z in self.cycles if z.length > 1]

    @property
    def loads(self) -> list[Load]:
        return list(self.grouping)

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    def product(self) -> WreathElement:
        result = self.element.ctx.identity()
        for z in self.cycles:
            result = mul(result, z.element)
        return result

    def canonical(self) -> tuple:
        return tuple((z.element.base, z.element.top.images) for z in self.cycles)


def yade(gamma: int, w: WreathElement):
    """Ordered product of base values along the top orbit of ``gamma``."""
    if not is_wreath_cycle(w):
        raise ValueError("yade is only defined for wreath cycles")
    return _yade(gamma, w)


def _yade(gamma: int, w: WreathElement):
    K = w.ctx.base
    if w.top.images[gamma] == gamma and w.base[gamma] == K.identity:
        return K.identity
    h = w.top.images
    acc = w.base[gamma]
    x = h[gamma]
    while x != gamma:
        acc = K.mul(acc, w.base[x])
        x = h[x]
    return acc


def yade_conjugator(w: WreathElement, alpha: int, beta: int):
    """``y`` with ``yade(alpha)^y == yade(beta)``: the product of f from alpha up to beta."""
    terr = territory(w)
    if alpha not in terr or beta not in terr:
        raise ValueError("points must lie in the territory")
    if not is_wreath_cycle(w):
        raise ValueError("yade_conjugator needs a wreath cycle")
    K = w.ctx.base
    h = w.top.images
    y = K.identity
    x = alpha
    while x != beta:
        y = K.mul(y, w.base[x])
        x = h[x]
    return y


def _make_cycle(ctx: WreathContext, base: tuple, top: Permutation, terr) -> WreathCycle:
    el = WreathElement(ctx, base, top)
    anchor = min(terr)
    y = _yade(anchor, el)
    return WreathCycle(el, anchor, y, Load(ctx.base.class_of(y), max(len(terr) if not top.is_identity() else 1, 1)))


def wreath_cycle_decomposition(w: WreathElement) -> WreathCycleSet:
    """The disjoint wreath cycle decomposition of ``w``, sorted by anchor."""
    ctx = w.ctx
    ident = ctx.base.identity
    n = ctx.gamma_degree
    f, h = w.base, w.top
    cycles = []
    for c in h.cycles():
        pts = set(c)
        base = tuple(f[x] if x in pts else ident for x in range(n))
        cycles.append(_make_cycle(ctx, base, Permutation.from_cycles([c], n), c))
    hi = h.images
    identity_top = Permutation.identity(n)
    for x in range(n):
        if hi[x] == x and f[x] != ident:
            base = tuple(f[x] if y == x else ident for y in range(n))
            cycles.append(_make_cycle(ctx, base, identity_top, (x,)))
    cycles.sort(key=lambda z: z.anchor)
    return WreathCycleSet(w, cycles)


def load(z: WreathCycle) -> Load:
    return z.load


def element_order(w: WreathElement) -> int:
    """LCM over the wreath cycles of (order of the anchor yade) * (top cycle length)."""
    K = w.ctx.base
    return math.lcm(1, *(K.order_of(z.yade_at_anchor) * z.length
                         for z in wreath_cycle_decomposition(w)))


def map_E(ctx: WreathContext, gamma: int, x) -> tuple:
    """Base map with ``x`` at ``gamma`` and the identity elsewhere."""
    ident = ctx.base.identity
    return tuple(x if i == gamma else ident for i in range(ctx.gamma_degree))


def sparse_decomposition(w: WreathElement) -> tuple[WreathElement, WreathCycleSet]:
    """Conjugate ``w`` by a base-group element into sparse wreath cycles.

    Returns ``(a, cycles)`` where ``a`` has trivial top, every cycle of
    ``w^a`` carries its anchor yade at the anchor and the identity elsewhere,
    and ``cycles`` is the decomposition of ``w^a``.
    """
    from .conjugacy import assemble_conjugator

    ctx = w.ctx
    dec = wreath_cycle_decomposition(w)
    ident = ctx.base.identity
    n = ctx.gamma_degree
    base = [ident] * n
    for z in dec:
        base[z.anchor] = z.yade_at_anchor
    v = WreathElement(ctx, tuple(base), w.top)
    t = Permutation.identity(n)
    s = assemble_conjugator(dec, wreath_cycle_decomposition(v), t)
    a = WreathElement(ctx, s, t)
    return a, wreath_cycle_decomposition(v)


def is_sparse(w: WreathElement) -> bool:
    ident = w.ctx.base.identity
    for z in wreath_cycle_decomposition(w):
        if sum(1 for x in z.element.base if x != ident) > 1:
            return False
    return True


def embed_imprimitive(w: WreathElement, cap: int = DEFAULT_SIZE_CAP) -> Permutation:
    """Image of ``w`` in Sym(K x Gamma): ``(k, x) -> (k * f[x], x^h)``.

    Point ``(k, x)`` is numbered ``x * |K| + k`` with k the K-handle.
    """
    K = w.ctx.base
    order = K.size()
    n = w.ctx.gamma_degree
    if order * n > cap:
        raise EnumerationCapExceeded(f"|K|*|Gamma| = {order * n} exceeds cap {cap}")
    h = w.top.images
    images = [0] * (order * n)
    for x in range(n):
        fx = w.base[x]
        hx = h[x] * order
        for k in range(order):
            images[x * order + k] = hx + K.mul(k, fx)
    return Permutation._trusted(tuple(images))


# --- text and JSON forms -------------------------------------------------

def format_element(w: WreathElement) -> str:
    K = w.ctx.base
    return "(" + ", ".join(K.format(x) for x in w.base) + " ; " + str(w.top) + ")"


def _split_top_level(s: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parenthesis at position {i}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ValueError("unbalanced parentheses")
    parts.append("".join(cur))
    return parts


def parse_element(text: str, ctx: WreathContext) -> WreathElement:
    """Parse ``( f1, ..., fn ; h )`` where each entry is cycle notation."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"element must be wrapped in parentheses: {text!r}")
    inner = s[1:-1]
    halves = _split_top_level(inner, ";")
    if len(halves) != 2:
        raise ValueError(f"expected exactly one ';' separating base and top in {text!r}")
    base_strs = [p.strip() for p in _split_top_level(halves[0], ",")]
    if len(base_strs) != ctx.gamma_degree:
        raise ValueError(f"expected {ctx.gamma_degree} base entries, got {len(base_strs)}")
    return ctx.from_strings(base_strs, halves[1].strip())


def element_to_dict(w: WreathElement) -> dict:
    K = w.ctx.base
    return {"base": [K.format(x) for x in w.base], "top": str(w.top)}


def element_from_dict(data: dict, ctx: WreathContext) -> WreathElement:
    return ctx.from_strings(data["base"], data["top"])
