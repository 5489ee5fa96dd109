from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kdecomp.core import Decomposition, Hypergraph, ObjectiveSpec, induced
from kdecomp.invariants import (
    CliqueWitness,
    ColoringWitness,
    HypothesisError,
    bound,
    chi,
    colorable,
    evaluate,
    is_clique,
    omega,
    verify_clique,
    verify_coloring,
    witness_from_json,
)

from oracles import chi_brute, omega_brute

C5 = Hypergraph.from_edges(5, 2, [(i, (i + 1) % 5) for i in range(5)])
PETERSEN = Hypergraph.from_edges(
    10, 2,
    [(i, (i + 1) % 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)],
)


def test_omega_examples():
    assert omega(Hypergraph.complete(5))[0] == 5
    assert omega(C5)[0] == 2
    H = Hypergraph.from_edges(4, 3, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])
    value, wit = omega(H)
    assert value == 3
    assert verify_clique(H, 3, wit)
    # the derived value, by scanning every vertex subset
    best = max(len(S) for s in range(5) for S in combinations(range(4), s) if is_clique(H, S))
    assert best == 3


def test_omega_vacuous_convention():
    assert omega(Hypergraph.empty(0))[0] == 0
    assert omega(Hypergraph.empty(4))[0] == 1
    assert omega(Hypergraph.empty(4, 3))[0] == 2
    assert omega(Hypergraph.empty(1, 4))[0] == 1
    assert omega(Hypergraph.empty(5, 4))[0] == 3


def test_chi_examples():
    assert chi(Hypergraph.complete(4))[0] == 4
    assert chi(C5)[0] == 3
    value, wit = chi(PETERSEN)
    assert value == 3
    assert verify_coloring(PETERSEN, 3, wit)
    assert colorable(PETERSEN, 3) and not colorable(PETERSEN, 2)


def test_chi_conventions_and_errors():
    assert chi(Hypergraph.empty(0))[0] == 0
    assert chi(Hypergraph.empty(3))[0] == 1
    with pytest.raises(ValueError):
        chi(Hypergraph.complete(4, 3))


def test_chi_minimality_certificate():
    # C5: omega = 2 < chi = 3, so minimality comes from a refuted 2-colour search
    value, wit = chi(C5)
    assert wit.clique is None
    assert wit.refuted_nodes > 0 and len(wit.trace_hash) == 64
    value, wit = chi(Hypergraph.complete(4))
    assert wit.clique is not None and len(wit.clique) == 4


def test_witness_checks_are_independent():
    K4 = Hypergraph.complete(4)
    assert not verify_clique(C5, 3, CliqueWitness((0, 1, 2)))
    assert not verify_coloring(K4, 3, ColoringWitness((0, 1, 2, 2)))
    assert not verify_coloring(C5, 2, ColoringWitness((0, 1, 0, 1, 0)))
    w = omega(K4)[1]
    assert witness_from_json(w.to_json()) == w
    c = chi(C5)[1]
    assert witness_from_json(c.to_json()).labels == c.labels


def test_all_graphs_on_six_vertices_match_oracle():
    E = comb(6, 2)
    masks = np.arange(1 << E, dtype=np.int64)
    w_ref = omega_brute(masks, 6, 2)
    c_ref = chi_brute(masks, 6)
    for g in range(1 << E):
        G = Hypergraph(6, 2, g)
        w, cw = omega(G)
        c, colw = chi(G)
        assert w == w_ref[g], g
        assert c == c_ref[g], g
        assert verify_clique(G, w, cw)
        assert verify_coloring(G, c, colw)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_all_3_uniform_hypergraphs_match_oracle(n):
    E = comb(n, 3)
    masks = np.arange(1 << E, dtype=np.int64)
    ref = omega_brute(masks, n, 3)
    for g in range(1 << E):
        H = Hypergraph(n, 3, g)
        w, wit = omega(H)
        assert w == ref[g]
        assert verify_clique(H, w, wit)


def test_4_uniform_hypergraphs_match_oracle():
    rng = np.random.default_rng(7)
    E = comb(7, 4)
    masks = rng.integers(0, 1 << E, 300, dtype=np.int64)
    ref = omega_brute(masks, 7, 4)
    for g, w_ref in zip(masks, ref):
        assert omega(Hypergraph(7, 4, int(g)))[0] == w_ref


small_graphs = st.integers(1, 9).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, (1 << comb(n, 2)) - 1)))


@settings(max_examples=200)
@given(small_graphs)
def test_omega_at_most_chi(g):
    G = Hypergraph(*g[:1], 2, g[1])
    assert omega(G)[0] <= chi(G)[0]


@settings(max_examples=100)
@given(small_graphs, st.data())
def test_chi_subadditive_over_partitions(g, data):
    n, mask = g
    G = Hypergraph(n, 2, mask)
    blocks = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    groups = [[v for v in range(n) if blocks[v] == b] for b in set(blocks)]
    assert chi(G)[0] <= sum(chi(induced(G, X))[0] for X in groups)


def test_evaluate_examples():
    D = Decomposition(3, 2, 2, (0, 0, 0))
    assert evaluate(D, ObjectiveSpec.omega()) == 4
    assert evaluate(D, ObjectiveSpec.chi_m(2)) == 4
    assert evaluate(D, ObjectiveSpec.a_r(Fraction(1, 2))) == 4


def test_evaluate_errors():
    D = Decomposition.uniform(4, 3, 2)
    with pytest.raises(ValueError):
        evaluate(D, ObjectiveSpec.chi_m(1))
    with pytest.raises(ValueError):
        evaluate(Decomposition.uniform(3, 2, 2), ObjectiveSpec.chi_m(3))


@settings(max_examples=60)
@given(st.integers(1, 6), st.integers(1, 4), st.data())
def test_degenerate_objectives_equal_clique_sum(n, k, data):
    E = comb(n, 2)
    D = Decomposition(n, 2, k, tuple(data.draw(st.lists(st.integers(0, k - 1),
                                                          min_size=E, max_size=E))))
    base = evaluate(D, ObjectiveSpec.omega())
    assert evaluate(D, ObjectiveSpec.chi_m(0)) == base
    assert evaluate(D, ObjectiveSpec.a_r(0)) == base


def test_bound_examples():
    assert bound("omega-graph", 3, 6) == 9
    assert bound("convex-general", 3, 6, r_coef=1) == 9
    assert bound("omega-hyper", 2, 5, 3) == 7
    assert bound("chi-factorial", 4, 5) == 17
    assert bound("chi-mixed-f", 4, 5, m=1, f_m=0) == 11
    assert bound("chi-mixed-f", 4, 5, m=2, f_m=1) == 11
    assert bound("convex-small", 4, 5, r_coef=Fraction(3, 4)) == 11
    assert isinstance(bound("convex-general", 4, 5, r_coef=Fraction(1, 3)), Fraction)
    assert bound("convex-general", 4, 5, r_coef=Fraction(1, 3)) == 5 + Fraction(2, 3) * 6 + 4


@pytest.mark.parametrize("call", [
    lambda: bound("convex-small", 4, 5, r_coef=Fraction(4, 5)),
    lambda: bound("chi-three", 2, 5),
    lambda: bound("chi-mixed", 5, 5, m=4),
    lambda: bound("chi-mixed-f", 5, 5, m=2, f_m=0),
    lambda: bound("omega-graph", 0, 5),
    lambda: bound("chi-factorial", 3, 5, 3),
])
def test_bound_hypothesis_errors(call):
    with pytest.raises(HypothesisError):
        call()


def test_unknown_bound_is_not_a_hypothesis_error():
    with pytest.raises(ValueError) as exc:
        bound("nope", 2, 2)
    assert not isinstance(exc.value, HypothesisError)
