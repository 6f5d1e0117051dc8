import itertools
import math

import pytest

from wreathcycles.centraliser import (centraliser_generators, centraliser_in_sym, centraliser_order,
                                      centraliser_phi, decompose_top, default_connectors,
                                      describe_centraliser, psi_embed, reassemble_top,
                                      sparse_anchors, stab_decomposition)
from wreathcycles.conjugacy import class_size, top_stabiliser_elements
from wreathcycles.core import (conjugate, mul, sparse_decomposition, wreath_cycle_decomposition)
from wreathcycles.oracle import EnumeratedWreathGroup, bf_centraliser, closure
from wreathcycles.perm import GeneratedPermGroup, Permutation, centraliser_in_group, parse_permutation

from conftest import RUNNING_W, SPARSE_V, cyclic_top_wreath, random_element, sym_wreath


def P8(text):
    return parse_permutation(text, 8)


class TestPsi:
    def test_identity(self):
        pairs = [(P8("(1,2)"), 0), (P8("(3,4)"), 2)]
        assert psi_embed(pairs, Permutation.identity(2)).is_identity()

    def test_swap(self):
        pairs = [(parse_permutation("(1,2)", 4), 0), (parse_permutation("(3,4)", 4), 2)]
        swap = parse_permutation("(1,2)", 2)
        assert psi_embed(pairs, swap) == parse_permutation("(1,3)(2,4)", 4)
        # anchored at 1 and 4 instead, the same swap pairs 1<->4 and 2<->3
        pairs = [(parse_permutation("(1,2)", 4), 0), (parse_permutation("(3,4)", 4), 3)]
        assert psi_embed(pairs, swap) == parse_permutation("(1,4)(2,3)", 4)

    def test_centralises(self):
        h = P8("(1,2,3)(4,5,6)")
        pairs = [(P8("(1,2,3)"), 0), (P8("(4,5,6)"), 3)]
        t = psi_embed(pairs, parse_permutation("(1,2)", 2))
        assert t * h == h * t

    def test_rejects(self):
        with pytest.raises(ValueError):
            psi_embed([(P8("(1,2)"), 0), (P8("(3,4,5)"), 2)], parse_permutation("(1,2)", 2))
        with pytest.raises(ValueError):
            psi_embed([(P8("(1,2)"), 0), (P8("(2,3)"), 1)], Permutation.identity(2))


class TestSymCentraliser:
    def test_cycle(self):
        C = centraliser_in_sym(parse_permutation("(1,2,3,4,5)", 5))
        assert C.order == 5

    def test_running_top(self):
        h = P8("(1,2)(3,4)(5,6)")
        C = centraliser_in_sym(h)
        assert C.order == 96 == math.factorial(8) // 420
        assert GeneratedPermGroup(8, C.generators).order() == 96
        assert all(g * h == h * g for g in C.generators)

    def test_identity(self):
        C = centraliser_in_sym(Permutation.identity(5))
        assert C.order == 120
        assert GeneratedPermGroup(5, C.generators).order() == 120

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_exhaustive(self, n):
        S = GeneratedPermGroup.symmetric(n)
        seen = set()
        for h in S.elements():
            key = tuple(sorted(map(len, h.cycles())))
            if key in seen:
                continue
            seen.add(key)
            C = centraliser_in_sym(h)
            assert C.order == centraliser_in_group(S, h).order()
            assert GeneratedPermGroup(n, C.generators).order() == C.order


@pytest.fixture(scope="module")
def sparse_v(W1):
    return W1.parse(SPARSE_V)


class TestTopDecomposition:
    def test_identity(self, sparse_v):
        dec = wreath_cycle_decomposition(sparse_v)
        D = decompose_top(dec, Permutation.identity(8), sparse_anchors(dec))
        assert set(D.exponents.values()) == {0}
        assert all(s.is_identity() for s in D.sigma.values())
        assert D.residual.is_identity()

    def test_worked_example(self, W1, sparse_v):
        dec = wreath_cycle_decomposition(sparse_v)
        anchors = sparse_anchors(dec)
        assert anchors == {0: 0, 2: 3, 4: 4, 6: 6}
        t = P8("(1,2)") * P8("(3,4)") * P8("(1,4)(2,3)")
        assert t == P8("(1,3)(2,4)")
        D = decompose_top(dec, t, anchors)
        assert D.exponents[0] == 1 and D.exponents[2] == 1
        k2 = [L for L in D.sigma if L.top_order == 2 and L.yade_class == 1][0]
        assert D.sigma[k2] == parse_permutation("(1,2)", 2)
        assert reassemble_top(dec, D, anchors) == t

    def test_round_trip_over_stabiliser(self, W1, sparse_v):
        dec = wreath_cycle_decomposition(sparse_v)
        anchors = sparse_anchors(dec)
        elems = top_stabiliser_elements(sparse_v, W1)
        assert len(elems) == 8
        for t in elems:
            assert reassemble_top(dec, decompose_top(dec, t, anchors), anchors) == t

    def test_rejects_outside(self, sparse_v):
        dec = wreath_cycle_decomposition(sparse_v)
        with pytest.raises(ValueError):
            decompose_top(dec, P8("(1,5)(2,6)"))

    def test_stab_orders(self, W1, W2, W3, sparse_v):
        assert stab_decomposition(sparse_v, W1)[1] == 8
        assert stab_decomposition(W2.parse(SPARSE_V), W2)[1] == 2
        assert stab_decomposition(W3.parse(SPARSE_V), W3)[1] == 2


class TestPhi:
    def test_trivial(self, W1, sparse_v):
        assert centraliser_phi(sparse_v, {}).is_identity()

    def test_worked_example(self, W1, sparse_v):
        K = W1.base
        dec = wreath_cycle_decomposition(sparse_v)
        x = default_connectors(dec)
        assert K.format(x[2]) == "(1,3)(2,4)"
        c = {6: K.parse("(1,2)"), 0: K.parse("(3,4)"), 2: K.parse("(1,2)(3,4)"), 4: K.parse("(1,3,2)")}
        a = centraliser_phi(sparse_v, c, P8("(1,3)(2,4)"), {7: K.parse("(1,2,3,4)")},
                            {0: K.identity, 2: K.parse("(1,3)(2,4)"), 4: K.identity, 6: K.identity})
        expected = W1.parse("((1,3)(2,4), (1,3,2,4), (1,4)(2,3), (1,3,2,4), (1,3,2), (1,3,2), (1,2), "
                            "(1,2,3,4) ; (1,3)(2,4))")
        assert a == expected
        assert mul(a, sparse_v) == mul(sparse_v, a)

    def test_rejects_non_centralising(self, W1, sparse_v):
        K = W1.base
        with pytest.raises(ValueError):
            centraliser_phi(sparse_v, {0: K.parse("(1,3)")})
        with pytest.raises(ValueError):
            centraliser_phi(sparse_v, {}, None, {0: K.identity})

    @pytest.mark.parametrize("make", [lambda: sym_wreath(2, 3), lambda: cyclic_top_wreath(3, 3),
                                      lambda: sym_wreath(3, 3)])
    def test_bijection(self, make, rng):
        ctx = make()
        G = EnumeratedWreathGroup(ctx)
        K = ctx.base
        for _ in range(4):
            w = random_element(ctx, rng)
            a, dec = sparse_decomposition(w)
            v = dec.element
            anchors = sparse_anchors(dec)
            x = default_connectors(dec, anchors)
            c_choices = []
            for zs in dec.grouping.values():
                cent = K.centraliser_elements(v.base[anchors[zs[0].anchor]])
                c_choices += [[(z.anchor, k) for k in cent] for z in zs]
            terr = {p for z in dec for p in z.territory}
            free = [p for p in range(ctx.gamma_degree) if p not in terr]
            images = set()
            count = 0
            for t in top_stabiliser_elements(v, ctx):
                for cs in itertools.product(*c_choices):
                    for ks in itertools.product(K.enumerate(), repeat=len(free)):
                        images.add(centraliser_phi(v, dict(cs), t, dict(zip(free, ks)), x))
                        count += 1
            assert len(images) == count
            assert images == bf_centraliser(v, G)


class TestCentraliser:
    def test_reference_orders(self, W1, W2, W3):
        assert centraliser_order(W1.parse(RUNNING_W), W1) == 36_864
        assert centraliser_order(W2.parse(RUNNING_W), W2) == 9_216
        assert centraliser_order(W3.parse(RUNNING_W), W3) == 9_216

    def test_identity(self, W2):
        assert centraliser_order(W2.identity(), W2) == W2.order()

    def test_generators_commute(self, W1):
        w = W1.parse(RUNNING_W)
        gens = centraliser_generators(w, W1)
        assert gens
        for g in gens:
            assert mul(g, w) == mul(w, g)
            assert W1.in_W(g)

    def test_sparse_conjugator(self, W1):
        w = W1.parse(RUNNING_W)
        desc = describe_centraliser(w, W1)
        assert conjugate(w, desc.conjugator) == desc.sparse
        assert desc.stabiliser_order == 8

    def test_full_closure_W1(self, W1):
        w = W1.parse(RUNNING_W)
        gens = centraliser_generators(w, W1)
        assert len(closure(gens, W1, cap=40_000)) == 36_864

    @pytest.mark.parametrize("make", [lambda: sym_wreath(2, 4), lambda: cyclic_top_wreath(3, 3)])
    def test_kernel_of_top_projection(self, make, rng):
        # centralising elements with trivial top: one centralising K-value per
        # cycle and anything off the territory
        ctx = make()
        G = EnumeratedWreathGroup(ctx)
        K = ctx.base
        for _ in range(8):
            w = random_element(ctx, rng)
            cent = closure(centraliser_generators(w, ctx), ctx)
            kernel = {g for g in cent if g.top.is_identity()}
            assert kernel == {g for g in bf_centraliser(w, G) if g.top.is_identity()}
            dec = wreath_cycle_decomposition(w)
            free = ctx.gamma_degree - sum(z.length for z in dec)
            assert len(kernel) == math.prod(K.centraliser_order(z.yade_at_anchor) for z in dec) * K.size() ** free
            tops = {g.top for g in cent}
            assert len(cent) == len(kernel) * len(tops)

    @pytest.mark.parametrize("make", [lambda: sym_wreath(2, 4), lambda: cyclic_top_wreath(3, 3)])
    def test_orbit_stabiliser(self, make, rng):
        ctx = make()
        for _ in range(20):
            w = random_element(ctx, rng)
            assert class_size(w, ctx) * centraliser_order(w, ctx) == ctx.order()
