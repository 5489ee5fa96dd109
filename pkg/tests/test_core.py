import json
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from kdecomp.core import (
    Decomposition,
    Hypergraph,
    ObjectiveSpec,
    add_edge,
    edge_list,
    induced,
    minus,
    positive_part,
    rank_edge,
    remove_edge,
    unrank_edge,
)


@pytest.mark.parametrize("verts,n,r,expected", [
    ((0, 1), 4, 2, 0),
    ((1, 2), 4, 2, 2),
    ((0, 1, 2), 5, 3, 0),
])
def test_rank_examples(verts, n, r, expected):
    assert rank_edge(verts, n, r) == expected


@pytest.mark.parametrize("rank,expected", [(0, (0, 1)), (2, (1, 2)), (5, (2, 3))])
def test_unrank_examples(rank, expected):
    assert unrank_edge(rank, 4, 2) == expected


@pytest.mark.parametrize("bad", [(1, 0), (0, 0), (0, 4), (0,)])
def test_rank_rejects_bad_sets(bad):
    with pytest.raises(ValueError):
        rank_edge(bad, 4, 2)


def test_unrank_rejects_out_of_range():
    with pytest.raises(ValueError):
        unrank_edge(6, 4, 2)
    with pytest.raises(ValueError):
        unrank_edge(-1, 4, 2)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_rank_unrank_round_trip_exhaustive(r):
    for n in range(r, 13):
        el = edge_list(n, r)
        assert len(el) == comb(n, r)
        for i in range(comb(n, r)):
            e = unrank_edge(i, n, r)
            assert e == el[i]
            assert rank_edge(e, n, r) == i


def test_colex_ranks_stable_under_vertex_append():
    # ranks of edges on 0..n-1 do not change when vertex n is appended
    for r in (2, 3):
        small = edge_list(5, r)
        big = edge_list(7, r)
        assert big[:len(small)] == small


def test_positive_part_examples():
    P, labels = positive_part(Hypergraph.empty(5))
    assert P.n == 0 and labels == ()
    K4 = Hypergraph.complete(4)
    P, labels = positive_part(K4)
    assert P == K4 and labels == (0, 1, 2, 3)
    G = Hypergraph.from_edges(4, 2, [(0, 1)])
    P, labels = positive_part(G)
    assert P == Hypergraph.complete(2) and labels == (0, 1)


def test_induced_minus_add():
    K5 = Hypergraph.complete(5)
    assert induced(K5, {0, 1, 2}) == Hypergraph.complete(3)
    assert minus(K5, {0, 1, 2}) == Hypergraph.complete(2)
    H = add_edge(Hypergraph.empty(3, 3), (0, 1, 2))
    assert H.size == 1 and H.is_complete()
    assert remove_edge(H, (2, 0, 1)) == Hypergraph.empty(3, 3)
    with pytest.raises(ValueError):
        induced(K5, {7})


def test_n_below_r_is_legal():
    H = Hypergraph.complete(2, 3)
    assert H.edges == 0 and H.is_complete()
    D = Decomposition.uniform(2, 3, 2)
    assert D.colors == ()
    assert D.part(1) == Hypergraph.empty(2, 3)


graphs = st.integers(0, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, (1 << comb(n, 2)) - 1)))


@given(graphs)
def test_positive_part_idempotent(g):
    n, mask = g
    G = Hypergraph(n, 2, mask)
    P, _ = positive_part(G)
    assert positive_part(P)[0] == P


@given(graphs, st.data())
def test_induced_plus_crossing_edges_is_size(g, data):
    n, mask = g
    G = Hypergraph(n, 2, mask)
    X = data.draw(st.sets(st.integers(0, max(n - 1, 0)), max_size=n)) if n else set()
    rest = set(range(n)) - X
    crossing = sum(1 for e in G.edge_sets() if set(e) & rest)
    assert induced(G, X).size + crossing == G.size


def test_part_and_move_edge():
    D = Decomposition.uniform(3, 2, 2, 0)
    assert D.part(0) == Hypergraph.complete(3)
    assert D.part(1) == Hypergraph.empty(3)
    E = Decomposition.uniform(2, 2, 2, 0)
    moved = E.move_edge(0, 1)
    assert moved.colors == (1,)
    assert moved.move_edge(0, 0) == E
    with pytest.raises(IndexError):
        D.part(2)
    with pytest.raises(IndexError):
        D.move_edge(0, 5)


@settings(max_examples=50)
@given(st.integers(1, 6), st.integers(2, 4), st.integers(1, 4), st.data())
def test_parts_partition_the_complete_hypergraph(n, r, k, data):
    E = comb(n, r)
    colors = data.draw(st.lists(st.integers(0, k - 1), min_size=E, max_size=E))
    D = Decomposition(n, r, k, tuple(colors))
    parts = D.parts()
    union = 0
    for H in parts:
        assert H.n == n
        assert union & H.edges == 0
        union |= H.edges
    assert union == Hypergraph.complete(n, r).edges
    assert Decomposition.from_parts(parts) == D


def test_decomposition_rejects_bad_colors():
    with pytest.raises(ValueError):
        Decomposition(3, 2, 2, (0, 1))
    with pytest.raises(ValueError):
        Decomposition(3, 2, 2, (0, 1, 2))


def test_json_round_trip():
    D = Decomposition(4, 2, 3, (0, 1, 2, 0, 1, 2))
    d = json.loads(D.dumps())
    assert d == {"n": 4, "r": 2, "k": 3, "colors": [0, 1, 2, 0, 1, 2]}
    assert Decomposition.loads(D.dumps()) == D
    explicit = json.loads(D.dumps(explicit=True))
    assert explicit["edges"][2] == {"vertices": [1, 2], "color": 2}
    assert Decomposition.from_json_dict(explicit) == D


def test_permutations_preserve_partition():
    D = Decomposition(4, 2, 2, (0, 1, 1, 0, 0, 1))
    P = D.permute_vertices([3, 2, 1, 0])
    assert sorted(P.colors) == sorted(D.colors)
    assert D.permute_parts([1, 0]).colors == tuple(1 - c for c in D.colors)


def test_objective_parse_and_validate():
    assert ObjectiveSpec.parse("omega") == ObjectiveSpec.omega()
    assert ObjectiveSpec.parse("chi_m:2").m == 2
    assert str(ObjectiveSpec.parse("a_r:3/4")) == "a_r:3/4"
    with pytest.raises(ValueError):
        ObjectiveSpec.parse("chi")
    with pytest.raises(ValueError):
        ObjectiveSpec.chi_m(3).validate(2, 2)
    with pytest.raises(ValueError):
        ObjectiveSpec.a_r("1/2").validate(2, 3)
    with pytest.raises(ValueError):
        ObjectiveSpec.a_r(2)
