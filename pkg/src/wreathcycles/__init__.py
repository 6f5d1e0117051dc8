"""Wreath cycle decompositions, conjugacy, classes and centralisers in ``K wr H``."""
from .core import (Load, WreathContext, WreathCycle, WreathCycleSet, WreathElement, conjugate,
                   element_order, inverse, mul, parse_element, sparse_decomposition, territory,
                   wreath_cycle_decomposition, yade)
from .perm import GeneratedPermGroup, Permutation, parse_permutation

__all__ = [
    "GeneratedPermGroup", "Load", "Permutation", "WreathContext", "WreathCycle", "WreathCycleSet",
    "WreathElement", "conjugate", "element_order", "inverse", "mul", "parse_element",
    "parse_permutation", "sparse_decomposition", "territory", "wreath_cycle_decomposition", "yade",
]
