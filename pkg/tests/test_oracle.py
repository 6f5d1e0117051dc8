import pytest

from wreathcycles.conjugacy import conjugacy_witness_in_W
from wreathcycles.core import conjugate, element_order, mul
from wreathcycles.oracle import (EnumeratedWreathGroup, bf_centraliser, bf_class_size,
                                 bf_conjugacy_classes, bf_is_conjugate, bf_order, closure)
from wreathcycles.perm import EnumerationCapExceeded

from conftest import sym_wreath


@pytest.fixture(scope="module")
def G():
    return EnumeratedWreathGroup(sym_wreath(2, 3))


def test_size_and_identity_first(G):
    els = G.elements()
    assert len(els) == len(G) == 48
    assert len(set(els)) == 48
    assert els[0].is_identity()


def test_cap():
    with pytest.raises(EnumerationCapExceeded):
        EnumeratedWreathGroup(sym_wreath(2, 4), cap=100)


def test_generators_generate(G):
    assert closure(G.generators(), G.ctx) == set(G.elements())


def test_self_conjugate_is_identity(G):
    for w in G.elements()[:10]:
        assert bf_is_conjugate(w, w, G).is_identity()


def test_different_orders_not_conjugate(G):
    els = G.elements()
    a = next(x for x in els if bf_order(x) == 2)
    b = next(x for x in els if bf_order(x) == 3)
    assert bf_is_conjugate(a, b, G) is None


def test_classes_partition(G):
    classes = bf_conjugacy_classes(G)
    flat = [x for c in classes for x in c]
    assert sorted(map(G.index().__getitem__, flat)) == list(range(48))
    for c in classes:
        for x in c[1:]:
            assert bf_is_conjugate(c[0], x, G) is not None
    # C2 wr Sym(3) is the hyperoctahedral group B3: 10 classes
    assert len(classes) == 10


def test_centraliser_and_class_size(G):
    for w in G.elements():
        assert len(bf_centraliser(w, G)) * bf_class_size(w, G) == 48


def test_order(G):
    for w in G.elements():
        assert bf_order(w) == element_order(w)
        x = w
        for _ in range(bf_order(w) - 1):
            x = mul(x, w)
        assert x.is_identity()


def test_order_limit(G):
    w = next(x for x in G.elements() if bf_order(x) == 6)
    with pytest.raises(RuntimeError):
        bf_order(w, limit=3)


def test_closure_cap(G):
    with pytest.raises(EnumerationCapExceeded):
        closure(G.generators(), G.ctx, cap=10)


def test_conjugation_invariant(G):
    a = G.elements()[17]
    for w in G.elements():
        assert bf_order(conjugate(w, a)) == bf_order(w)


def test_identity_centraliser_is_everything(G):
    assert bf_centraliser(G.ctx.identity(), G) == set(G.elements())


def test_fast_verdicts_on_all_pairs(G):
    classes = bf_conjugacy_classes(G)
    where = {x: i for i, c in enumerate(classes) for x in c}
    for w in G.elements():
        for v in G.elements():
            a = conjugacy_witness_in_W(w, v, G.ctx)
            assert (a is not None) == (where[w] == where[v])
            assert (bf_is_conjugate(w, v, G) is not None) == (where[w] == where[v])
