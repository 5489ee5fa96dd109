"""Extremal decompositions attaining the clique-sum lower bound on K_n^r."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .core import Decomposition, edge_list
from .invariants import CliqueWitness, bound, omega, verify_clique


@dataclass(frozen=True)
class LabeledVertex:
    pair: tuple[int, int]
    copy: int
    index: int


def base_order(k: int, r: int) -> int:
    return (r - 1) * comb(k, 2)


def label_table(k: int, r: int) -> list[LabeledVertex]:
    """Pairs (i, j), 1 <= i < j <= k, in lex order, copies 1..r-1 innermost."""
    out = []
    for pair in combinations(range(1, k + 1), 2):
        for copy in range(1, r):
            out.append(LabeledVertex(pair, copy, len(out)))
    return out


def part_vertex_sets(k: int, r: int) -> list[frozenset[int]]:
    """Base vertices whose pair mentions t, for t = 1..k (returned 0-based by part)."""
    labels = label_table(k, r)
    return [frozenset(v.index for v in labels if t in v.pair) for t in range(1, k + 1)]


def construct_extremal(k: int, r: int, n: int) -> Decomposition:
    """Decomposition of K_n^r whose clique numbers sum to n + (r-1)C(k,2).

    Part t holds every r-subset of the base vertices labelled with t. Extra
    vertices beyond the base, and edges claimed by no part, go to part 0.
    """
    if r < 2 or k < 1:
        raise ValueError("need r >= 2 and k >= 1")
    n0 = base_order(k, r)
    if n < n0:
        raise ValueError(f"n={n} is below the base order {n0} for k={k}, r={r}")
    sets = part_vertex_sets(k, r)
    colors = []
    for e in edge_list(n, r):
        color = 0
        if e[-1] < n0:
            for t, S in enumerate(sets):
                if all(v in S for v in e):
                    color = t
                    break
        colors.append(color)
    return Decomposition(n, r, k, tuple(colors))


@dataclass
class ConstructionReport:
    k: int
    r: int
    n: int
    part_omegas: list[int]
    witnesses: list[CliqueWitness]
    total: int
    upper_bound: int
    attains_bound: bool
    witnesses_ok: bool
    max_pairwise_overlap: int


def verify_construction(k: int, r: int, n: int) -> ConstructionReport:
    D = construct_extremal(k, r, n)
    omegas, wits = [], []
    ok = True
    for H in D.parts():
        w, cw = omega(H)
        ok = ok and verify_clique(H, w, cw)
        omegas.append(w)
        wits.append(cw)
    total = sum(omegas)
    ub = int(bound("omega-hyper", k, n, r)) if n >= 1 else n + (r - 1) * comb(k, 2)
    sets = part_vertex_sets(k, r)
    overlap = max((len(a & b) for a, b in combinations(sets, 2)), default=0)
    return ConstructionReport(
        k=k, r=r, n=n,
        part_omegas=omegas,
        witnesses=wits,
        total=total,
        upper_bound=ub,
        attains_bound=total == ub,
        witnesses_ok=ok,
        max_pairwise_overlap=overlap,
    )
