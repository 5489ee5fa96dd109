from itertools import combinations
from math import comb

import pytest

from kdecomp.constructions import (
    base_order,
    construct_extremal,
    label_table,
    part_vertex_sets,
    verify_construction,
)
from kdecomp.core import Hypergraph, ObjectiveSpec
from kdecomp.invariants import evaluate, omega

from oracles import brute_optimum


def test_label_table_is_a_bijection():
    for k in range(1, 6):
        for r in range(2, 5):
            labels = label_table(k, r)
            assert [v.index for v in labels] == list(range(base_order(k, r)))
            keys = {(v.pair, v.copy) for v in labels}
            assert len(keys) == len(labels)
            assert all(1 <= v.pair[0] < v.pair[1] <= k and 1 <= v.copy < r for v in labels)
    # lex order on pairs, copies innermost
    assert [(v.pair, v.copy) for v in label_table(3, 3)][:3] == [((1, 2), 1), ((1, 2), 2), ((1, 3), 1)]


def test_three_parts_of_single_edges():
    D = construct_extremal(3, 2, 3)
    # vertices 0=(1,2), 1=(1,3), 2=(2,3)
    assert D.part(0) == Hypergraph.from_edges(3, 2, [(0, 1)])
    assert D.part(1) == Hypergraph.from_edges(3, 2, [(0, 2)])
    assert D.part(2) == Hypergraph.from_edges(3, 2, [(1, 2)])
    assert evaluate(D, ObjectiveSpec.omega()) == 6


def test_edgeless_construction_below_uniformity():
    D = construct_extremal(2, 3, 2)
    assert D.colors == ()
    assert [omega(H)[0] for H in D.parts()] == [2, 2]
    assert evaluate(D, ObjectiveSpec.omega()) == 4


def test_three_uniform_three_parts():
    rep = verify_construction(3, 3, 6)
    assert rep.part_omegas == [4, 4, 4]
    assert rep.total == 12 == 6 + 2 * 3


@pytest.mark.parametrize("k,r,n,total", [(2, 2, 5, 6), (3, 2, 3, 6), (2, 3, 5, 7)])
def test_verify_construction_examples(k, r, n, total):
    rep = verify_construction(k, r, n)
    assert rep.total == total
    assert rep.attains_bound and rep.witnesses_ok


def test_k2_r3_n5_matches_exhaustive_search():
    best, _ = brute_optimum(5, 3, 2)
    assert best == verify_construction(2, 3, 5).total == 7


def test_below_base_order_rejected():
    with pytest.raises(ValueError):
        construct_extremal(3, 2, 2)
    with pytest.raises(ValueError):
        construct_extremal(4, 3, 11)


def test_single_part_is_complete():
    D = construct_extremal(1, 3, 5)
    assert D.part(0).is_complete()


@pytest.mark.parametrize("k,r", [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3), (2, 4), (4, 3)])
def test_part_vertex_sets_meet_in_fewer_than_r(k, r):
    sets = part_vertex_sets(k, r)
    assert all(len(S) == (r - 1) * (k - 1) for S in sets)
    assert max((len(a & b) for a, b in combinations(sets, 2)), default=0) <= r - 1
    assert verify_construction(k, r, base_order(k, r)).max_pairwise_overlap <= r - 1


@pytest.mark.parametrize("k,r", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)])
def test_construction_parts_are_complete_and_disjoint(k, r):
    n = base_order(k, r) + 1
    D = construct_extremal(k, r, n)
    sets = part_vertex_sets(k, r)
    for t in range(1, k):
        H = D.part(t)
        assert H.size == comb(len(sets[t]), r)
        assert set(v for e in H.edge_sets() for v in e) <= sets[t]


@pytest.mark.parametrize("k,r", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)])
def test_each_extra_vertex_adds_one(k, r):
    n0 = max(base_order(k, r), 1)
    totals = [verify_construction(k, r, n).total for n in range(n0, min(n0 + 3, 9))]
    assert all(b == a + 1 for a, b in zip(totals, totals[1:]))
    assert all(t == n + (r - 1) * comb(k, 2) for n, t in zip(range(n0, 9), totals))
