"""The base group K behind a small oracle interface.

Wreath algorithms only ever talk to :class:`GroupOracle`. Elements are opaque
handles owned by one oracle; the permutation backend uses integer indices into
its enumerated element list, so products are table lookups.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Hashable, Sequence

from .perm import (GeneratedPermGroup, Permutation, conjugacy_classes, format_permutation,
                   parse_permutation, small_generating_set)

GroupElement = Hashable

_TABLE_LIMIT = 2048


class GroupOracle(ABC):
    """Abstract finite group."""

    identity: GroupElement

    @abstractmethod
    def mul(self, a, b): ...

    @abstractmethod
    def inv(self, a): ...

    @abstractmethod
    def order_of(self, a) -> int: ...

    @abstractmethod
    def conj_witness(self, a, b):
        """Some ``c`` with ``c^-1 a c == b``, or None."""

    @abstractmethod
    def centraliser_generators(self, a) -> list: ...

    @abstractmethod
    def centraliser_order(self, a) -> int: ...

    @abstractmethod
    def class_representatives(self) -> list: ...

    @abstractmethod
    def class_of(self, a) -> int: ...

    @abstractmethod
    def class_size(self, a) -> int: ...

    @abstractmethod
    def enumerate(self) -> list: ...

    @abstractmethod
    def generators(self) -> list: ...

    @abstractmethod
    def format(self, a) -> str: ...

    @abstractmethod
    def parse(self, text: str): ...

    def size(self) -> int:
        return len(self.enumerate())

    def num_classes(self) -> int:
        return len(self.class_representatives())

    def conj(self, a, c):
        return self.mul(self.mul(self.inv(c), a), c)

    def prod(self, items: Sequence):
        result = self.identity
        for x in items:
            result = self.mul(result, x)
        return result

    def is_identity(self, a) -> bool:
        return a == self.identity


class PermGroupOracle(GroupOracle):
    """K given as an enumerable permutation group; handles are ints, identity is 0."""

    def __init__(self, G: GeneratedPermGroup):
        self.group = G
        self.elements: list[Permutation] = G.elements()
        self._index = {p: i for i, p in enumerate(self.elements)}
        self.identity = 0
        n = len(self.elements)
        self._inv = [self._index[p.inverse()] for p in self.elements]
        if n <= _TABLE_LIMIT:
            self._table = [[self._index[p * q] for q in self.elements] for p in self.elements]
        else:
            self._table = None
        classes = conjugacy_classes(G)
        self._reps = [self._index[c[0]] for c in classes]
        self._class_of = [0] * n
        self._class_sizes = [len(c) for c in classes]
        for cid, c in enumerate(classes):
            for p in c:
                self._class_of[self._index[p]] = cid
        self._orders = [p.order() for p in self.elements]
        self.centraliser_elements = lru_cache(maxsize=None)(self._centraliser_elements)
        self._witness_cache: dict = {}

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return self._table[a][b]
        return self._index[self.elements[a] * self.elements[b]]

    @property
    def table(self):
        return self._table

    def inv(self, a: int) -> int:
        return self._inv[a]

    def order_of(self, a: int) -> int:
        return self._orders[a]

    def conj_witness(self, a: int, b: int):
        if self._class_of[a] != self._class_of[b]:
            return None
        key = (a, b)
        if key not in self._witness_cache:
            found = None
            for c in range(len(self.elements)):
                if self.mul(a, c) == self.mul(c, b):
                    found = c
                    break
            self._witness_cache[key] = found
        return self._witness_cache[key]

    def _centraliser_elements(self, a: int) -> tuple[int, ...]:
        return tuple(c for c in range(len(self.elements)) if self.mul(a, c) == self.mul(c, a))

    def centraliser_generators(self, a: int) -> list[int]:
        elems = [self.elements[c] for c in self.centraliser_elements(a)]
        gens = small_generating_set(elems, self.group.degree)
        return [self._index[g] for g in gens]

    def centraliser_order(self, a: int) -> int:
        return len(self.elements) // self._class_sizes[self._class_of[a]]

    def class_representatives(self) -> list[int]:
        return list(self._reps)

    def class_of(self, a: int) -> int:
        return self._class_of[a]

    def class_size(self, a: int) -> int:
        return self._class_sizes[self._class_of[a]]

    def class_members(self, cid: int) -> list[int]:
        return [i for i, c in enumerate(self._class_of) if c == cid]

    def enumerate(self) -> list[int]:
        return list(range(len(self.elements)))

    def size(self) -> int:
        return len(self.elements)

    def generators(self) -> list[int]:
        return [self._index[g] for g in self.group.generators]

    def format(self, a: int) -> str:
        return format_permutation(self.elements[a])

    def parse(self, text: str) -> int:
        p = parse_permutation(text, self.group.degree)
        try:
            return self._index[p]
        except KeyError:
            raise ValueError(f"{text} is not an element of the base group") from None

    def element(self, a: int) -> Permutation:
        return self.elements[a]

    def handle(self, p: Permutation) -> int:
        return self._index[p]


def perm_group_oracle(G: GeneratedPermGroup) -> PermGroupOracle:
    return PermGroupOracle(G)


def class_size(oracle: GroupOracle, a) -> int:
    """Size of the K-conjugacy class of ``a``."""
    return oracle.class_size(a)


def trivial_oracle() -> PermGroupOracle:
    return PermGroupOracle(GeneratedPermGroup(1, []))

