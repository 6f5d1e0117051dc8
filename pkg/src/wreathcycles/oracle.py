"""Brute-force reference computations over a fully enumerated wreath product.

Everything here works straight from the definitions and is meant as ground
truth for tests and as the baseline in benchmarks.
"""
from __future__ import annotations

import itertools
from collections import deque
from typing import Iterator

from .core import WreathContext, WreathElement, mul, conjugate, map_E
from .perm import DEFAULT_SIZE_CAP, EnumerationCapExceeded, Permutation


class EnumeratedWreathGroup:
    """All ``|K|^n * |H|`` elements of a wreath product, identity first.

    Elements are produced lazily; :meth:`elements` materialises the list.
    """

    def __init__(self, ctx: WreathContext, cap: int = DEFAULT_SIZE_CAP):
        self.ctx = ctx
        self.cap = cap
        self.size = ctx.base.size() ** ctx.gamma_degree * ctx.top.order()
        if self.size > cap:
            raise EnumerationCapExceeded(f"|W| = {self.size} exceeds the cap {cap}")
        self._elements: list[WreathElement] | None = None
        self._index: dict | None = None

    def __iter__(self) -> Iterator[WreathElement]:
        if self._elements is not None:
            yield from self._elements
            return
        ctx = self.ctx
        handles = ctx.base.enumerate()
        for h in ctx.top.elements():
            for base in itertools.product(handles, repeat=ctx.gamma_degree):
                yield WreathElement(ctx, base, h)

    def __len__(self) -> int:
        return self.size

    def elements(self) -> list[WreathElement]:
        if self._elements is None:
            self._elements = list(self)
        return self._elements

    def index(self) -> dict[WreathElement, int]:
        if self._index is None:
            self._index = {w: i for i, w in enumerate(self.elements())}
        return self._index

    def generators(self) -> list[WreathElement]:
        """K-generators at every coordinate (trivial top) and H-generators (trivial base)."""
        ctx = self.ctx
        gens = [WreathElement(ctx, map_E(ctx, g, k), Permutation.identity(ctx.gamma_degree))
                for g in range(ctx.gamma_degree) for k in ctx.base.generators()]
        gens += [WreathElement(ctx, (ctx.base.identity,) * ctx.gamma_degree, t)
                 for t in ctx.top.generators]
        return gens


def bf_is_conjugate(w: WreathElement, v: WreathElement, G: EnumeratedWreathGroup) -> WreathElement | None:
    """First ``a`` of G with ``w^a == v``."""
    for a in G:
        if conjugate(w, a) == v:
            return a
    return None


def bf_centraliser(w: WreathElement, G: EnumeratedWreathGroup) -> set[WreathElement]:
    return {a for a in G if mul(w, a) == mul(a, w)}


def bf_conjugacy_classes(G: EnumeratedWreathGroup) -> list[list[WreathElement]]:
    """Orbits of G on itself under conjugation by its generators."""
    elements = G.elements()
    index = G.index()
    gens = G.generators()
    label = [-1] * len(elements)
    classes = []
    for i, x in enumerate(elements):
        if label[i] != -1:
            continue
        label[i] = len(classes)
        members = [x]
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in gens:
                j = index[conjugate(y, g)]
                if label[j] == -1:
                    label[j] = label[i]
                    members.append(elements[j])
                    queue.append(elements[j])
        classes.append(members)
    return classes


def bf_order(w: WreathElement, limit: int | None = None) -> int:
    """Least m >= 1 with ``w^m == 1``, by repeated multiplication."""
    x = w
    m = 1
    while not x.is_identity():
        x = mul(x, w)
        m += 1
        if limit is not None and m > limit:
            raise RuntimeError(f"order exceeds {limit}")
    return m


def bf_class_size(w: WreathElement, G: EnumeratedWreathGroup) -> int:
    return len({conjugate(w, a) for a in G})


def closure(gens: list[WreathElement], ctx: WreathContext, cap: int = DEFAULT_SIZE_CAP) -> set[WreathElement]:
    """The subgroup generated by ``gens``, enumerated breadth-first."""
    ident = ctx.identity()
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise EnumerationCapExceeded(f"generated subgroup exceeds {cap} elements")
                queue.append(y)
    return seen
