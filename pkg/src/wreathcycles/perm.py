"""Permutations of a finite point set and small permutation groups.

Points are stored 0-based; every text form (cycle notation, JSON) is 1-based.
Permutations act from the right: ``x^(p*q) == (x^p)^q``, so ``p * q`` means
"apply p, then q".

Group algorithms here are exhaustive: a :class:`GeneratedPermGroup` is closed
breadth-first from its (sorted) generators and everything else filters that
element list. This is deliberate; the groups we care about are desk-sized.
"""
from __future__ import annotations

import json
import math
import re
from collections import deque
from typing import Iterable, Sequence

DEFAULT_SIZE_CAP = 10**6


class EnumerationCapExceeded(RuntimeError):
    """Raised when a group is too large for the enumeration backend."""


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> Permutation:
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-based cycles."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for i, x in enumerate(cyc):
                if not 0 <= x < degree:
                    raise ValueError(f"point {x + 1} out of range 1..{degree}")
                if x in seen:
                    raise ValueError(f"point {x + 1} repeated")
                seen.add(x)
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls._trusted(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        g = other.images
        return Permutation._trusted(tuple([g[i] for i in self.images]))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._trusted(tuple(inv))

    def __pow__(self, n: int) -> Permutation:
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, t: Permutation) -> Permutation:
        """Return ``t^-1 * self * t``; it maps ``x^t`` to ``x^(self*t)``."""
        images = [0] * len(self.images)
        ti = t.images
        for x, y in enumerate(self.images):
            images[ti[x]] = ti[y]
        return Permutation._trusted(tuple(images))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its minimum, sorted by minimum."""
        seen = [False] * len(self.images)
        out = []
        for start, x in enumerate(self.images):
            if seen[start] or x == start:
                continue
            cyc = [start]
            seen[start] = True
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.images) if i != x)

    def cycle_key(self) -> tuple:
        """Sort key of the cycle-notation string (used for canonical class representatives)."""
        return tuple(self.cycles())

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __str__(self) -> str:
        return format_permutation(self)

    def __repr__(self) -> str:
        return f"Permutation({format_permutation(self)!r}, degree={self.degree})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse 1-based disjoint cycle notation such as ``"(1,2)(3,4)"``; ``"()"`` is the identity."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty permutation text")
    if s == "()":
        return Permutation.identity(degree)
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(s):
        if m.start() != pos:
            raise ValueError(f"malformed permutation {text!r} at position {pos}")
        body = m.group(1)
        if not re.fullmatch(r"\d+(,\d+)+", body):
            raise ValueError(f"malformed cycle '({body})' in {text!r} at position {m.start()}")
        pts = [int(x) for x in body.split(",")]
        for p in pts:
            if not 1 <= p <= degree:
                raise ValueError(f"point {p} out of range 1..{degree} in {text!r}")
        cycles.append([p - 1 for p in pts])
        pos = m.end()
    if pos != len(s):
        raise ValueError(f"malformed permutation {text!r} at position {pos}")
    return Permutation.from_cycles(cycles, degree)


def format_permutation(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycles)


def cycle_decomposition(p: Permutation) -> list[Permutation]:
    """Split ``p`` into single-cycle permutations sorted by minimal moved point."""
    return [Permutation.from_cycles([c], p.degree) for c in p.cycles()]


def support_and_fix(p: Permutation) -> tuple[frozenset[int], frozenset[int]]:
    supp = p.support()
    return supp, frozenset(range(p.degree)) - supp


def product(perms: Iterable[Permutation], degree: int) -> Permutation:
    result = Permutation.identity(degree)
    for p in perms:
        result = result * p
    return result


class GeneratedPermGroup:
    """A permutation group given by generators, enumerated on demand.

    The element list is cached after the first call to :meth:`elements`;
    everything else about the group is immutable.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = (),
                 size_cap: int = DEFAULT_SIZE_CAP, elements: Sequence[Permutation] | None = None):
        self.degree = degree
        gens = []
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.generators = sorted(gens)
        self.size_cap = size_cap
        self._elements = list(elements) if elements is not None else None
        self._index = None
        self._centralisers: dict = {}

    @classmethod
    def symmetric(cls, degree: int, size_cap: int = DEFAULT_SIZE_CAP) -> GeneratedPermGroup:
        gens = []
        if degree >= 2:
            gens.append(Permutation.from_cycles([[0, 1]], degree))
        if degree >= 3:
            gens.append(Permutation.from_cycles([list(range(degree))], degree))
        return cls(degree, gens, size_cap)

    @classmethod
    def cyclic(cls, order: int) -> GeneratedPermGroup:
        if order == 1:
            return cls(1, [])
        return cls(order, [Permutation.from_cycles([list(range(order))], order)])

    def elements(self) -> list[Permutation]:
        if self._elements is None:
            self._elements = enumerate_elements(self)
        return self._elements

    def index(self, p: Permutation) -> int:
        if self._index is None:
            self._index = {g: i for i, g in enumerate(self.elements())}
        return self._index[p]

    def __contains__(self, p: Permutation) -> bool:
        if self._index is None:
            self._index = {g: i for i, g in enumerate(self.elements())}
        return p in self._index

    def order(self) -> int:
        return len(self.elements())

    def centraliser_elements(self, h: Permutation) -> list[Permutation]:
        """Elements of ``C_G(h)`` in enumeration order (cached per h)."""
        if h not in self._centralisers:
            hi = h.images
            n = len(hi)
            self._centralisers[h] = [t for t in self.elements()
                                     if all(t.images[hi[x]] == hi[t.images[x]] for x in range(n))]
        return self._centralisers[h]

    def __len__(self) -> int:
        return self.order()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __repr__(self) -> str:
        gens = ", ".join(map(str, self.generators))
        return f"GeneratedPermGroup(degree={self.degree}, <{gens}>)"


def enumerate_elements(G: GeneratedPermGroup) -> list[Permutation]:
    """Breadth-first closure of ``G``'s sorted generators, identity first."""
    ident = Permutation.identity(G.degree)
    elements = [ident]
    seen = {ident}
    queue = deque([ident])
    gens = [g.images for g in G.generators]
    while queue:
        x = queue.popleft().images
        for g in gens:
            y = Permutation._trusted(tuple([g[i] for i in x]))
            if y not in seen:
                seen.add(y)
                elements.append(y)
                queue.append(y)
                if len(elements) > G.size_cap:
                    raise EnumerationCapExceeded(
                        f"group too large for enumeration backend (more than {G.size_cap} elements)")
    return elements


def subgroup(G: GeneratedPermGroup, elements: list[Permutation],
             generators: Sequence[Permutation] | None = None) -> GeneratedPermGroup:
    """Wrap a subset of G already known to be a subgroup, keeping G's order."""
    if generators is None:
        generators = small_generating_set(elements, G.degree)
    return GeneratedPermGroup(G.degree, generators, G.size_cap, elements=elements)


def closure(generators: Sequence[Permutation], degree: int,
            size_cap: int = DEFAULT_SIZE_CAP) -> list[Permutation]:
    return enumerate_elements(GeneratedPermGroup(degree, generators, size_cap))


def small_generating_set(elements: Sequence[Permutation], degree: int) -> list[Permutation]:
    """Greedy generating set: take each element not yet in the span of the chosen ones."""
    gens: list[Permutation] = []
    span = {Permutation.identity(degree)}
    for x in elements:
        if x in span:
            continue
        gens.append(x)
        span = set(closure(gens, degree, size_cap=max(len(elements), 1)))
        if len(span) == len(elements):
            break
    return gens


def centraliser_in_group(G: GeneratedPermGroup, h: Permutation) -> GeneratedPermGroup:
    """``C_G(h)`` with its element list in G's enumeration order."""
    if h.is_identity():
        return G
    return subgroup(G, G.centraliser_elements(h))


def conjugating_element_in_group(G: GeneratedPermGroup, h: Permutation,
                                 g: Permutation) -> Permutation | None:
    """First ``t`` of G (enumeration order) with ``h^t == g``, or None."""
    if sorted(map(len, h.cycles())) != sorted(map(len, g.cycles())):
        return None
    hi, gi = h.images, g.images
    n = len(hi)
    for t in G.elements():
        ti = t.images
        # h^t == g  <=>  t(h(x)) == g(t(x)) for all x
        if all(ti[hi[x]] == gi[ti[x]] for x in range(n)):
            return t
    return None


def right_transversal(G: GeneratedPermGroup, U: GeneratedPermGroup) -> list[Permutation]:
    """One representative per right coset ``U t``, scanning G in order (identity first)."""
    u_elems = U.elements()
    if len(G.elements()) % len(u_elems):
        raise ValueError("U is not a subgroup of G (order does not divide)")
    for u in u_elems:
        if u not in G:
            raise ValueError(f"U is not a subgroup of G: {u} not in G")
    covered = set()
    reps = []
    for t in G.elements():
        if t in covered:
            continue
        reps.append(t)
        covered.update(u * t for u in u_elems)
    return reps


def stabiliser_of_labelled_partition(G: GeneratedPermGroup, P) -> GeneratedPermGroup:
    """Subgroup of G fixing ``P`` (anything with an ``apply(t)`` method and equality)."""
    return subgroup(G, [t for t in G.elements() if P.apply(t) == P])


def conjugacy_classes(G: GeneratedPermGroup) -> list[list[Permutation]]:
    """Conjugacy classes of G in canonical order.

    Each class is listed with its representative first: the member whose cycle
    notation sorts smallest. Classes are ordered by (element order, number of
    moved points, representative), so the identity class comes first.
    """
    elements = G.elements()
    index = {g: i for i, g in enumerate(elements)}
    gens = G.generators
    label = [-1] * len(elements)
    classes = []
    for i, x in enumerate(elements):
        if label[i] != -1:
            continue
        cid = len(classes)
        label[i] = cid
        members = [x]
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in gens:
                z = y.conjugate(g)
                j = index[z]
                if label[j] == -1:
                    label[j] = cid
                    members.append(z)
                    queue.append(z)
        classes.append(members)
    out = []
    for members in classes:
        rep = min(members, key=Permutation.cycle_key)
        rest = [m for m in members if m != rep]
        rest.sort(key=index.__getitem__)
        out.append([rep] + rest)
    out.sort(key=lambda c: (c[0].order(), len(c[0].support()), c[0].cycle_key()))
    return out


def group_from_dict(data: dict, size_cap: int = DEFAULT_SIZE_CAP) -> GeneratedPermGroup:
    """Build a group from ``{"degree": n, "generators": ["(1,2)", ...]}``."""
    degree = int(data["degree"])
    gens = [parse_permutation(s, degree) for s in data.get("generators", [])]
    return GeneratedPermGroup(degree, gens, size_cap)


def group_to_dict(G: GeneratedPermGroup) -> dict:
    return {"degree": G.degree, "generators": [format_permutation(g) for g in G.generators]}


def load_group(path: str, size_cap: int = DEFAULT_SIZE_CAP) -> GeneratedPermGroup:
    with open(path) as fh:
        return group_from_dict(json.load(fh), size_cap)
