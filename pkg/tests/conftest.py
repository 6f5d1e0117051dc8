import os
import random

import pytest

from wreathcycles.core import WreathContext, WreathElement
from wreathcycles.perm import GeneratedPermGroup, Permutation, parse_permutation

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
GROUPS = os.path.join(ROOT, "groups")

RUNNING_W = "((1,2)(3,4), (3,4), (), (1,2), (1,2,3), (), (1,2), () ; (1,2)(3,4)(5,6))"
RUNNING_V = "((3,4), (), (), (1,2,3), (1,2), (), (), (3,4) ; (1,2)(3,4)(5,6))"
SPARSE_V = "((3,4), (), (), (1,2), (1,2,3), (), (1,2), () ; (1,2)(3,4)(5,6))"


def group_file(name):
    return os.path.join(GROUPS, name)


_CTX_CACHE = {}


def named_context(i):
    if i not in _CTX_CACHE:
        _CTX_CACHE[i] = WreathContext.load(group_file(f"W{i}.json"))
    return _CTX_CACHE[i]


def sym_wreath(kdeg, n):
    key = ("sym", kdeg, n)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = WreathContext.symmetric_top(GeneratedPermGroup.symmetric(kdeg), n)
    return _CTX_CACHE[key]


def cyclic_top_wreath(kdeg, n):
    """Sym(kdeg) wr C_n (cyclic top on n points)."""
    key = ("cyc", kdeg, n)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = WreathContext.from_groups(GeneratedPermGroup.symmetric(kdeg),
                                                    GeneratedPermGroup.cyclic(n))
    return _CTX_CACHE[key]


def klein_top_wreath():
    """C_2 wr (C_2 x C_2) acting on 4 points as <(1,2), (3,4)>."""
    key = "klein"
    if key not in _CTX_CACHE:
        H = GeneratedPermGroup(4, [parse_permutation("(1,2)", 4), parse_permutation("(3,4)", 4)])
        _CTX_CACHE[key] = WreathContext.from_groups(GeneratedPermGroup.symmetric(2), H)
    return _CTX_CACHE[key]


def random_element(ctx, rng, in_top=True):
    K = ctx.base.enumerate()
    base = tuple(rng.choice(K) for _ in range(ctx.gamma_degree))
    if in_top:
        tops = ctx.top.elements()
        top = tops[rng.randrange(len(tops))]
    else:
        imgs = list(range(ctx.gamma_degree))
        rng.shuffle(imgs)
        top = Permutation(imgs)
    return WreathElement(ctx, base, top)


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture(scope="session")
def W1():
    return named_context(1)


@pytest.fixture(scope="session")
def W2():
    return named_context(2)


@pytest.fixture(scope="session")
def W3():
    return named_context(3)


@pytest.fixture(scope="session")
def running(W2):
    return W2.parse(RUNNING_W), W2.parse(RUNNING_V)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_ac" not in nodeid:
                continue
            if outcome != "error" and rep.when != "call":
                continue
            name = nodeid.split("::")[-1][len("test_ac"):]
            num, _, label = name.partition("_")
            lines.append((int(num), f"AC{num} {label.replace('_', ' ')}: "
                                    f"{'PASS' if outcome == 'passed' else 'FAIL'}"))
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
