"""Exact clique and chromatic numbers with certifying witnesses, objective sums, bounds."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial
from typing import Optional, Sequence

from .core import A_R, CHI_M, Decomposition, Hypergraph, ObjectiveSpec, rank_edge


@dataclass(frozen=True)
class CliqueWitness:
    vertices: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps({"type": "clique", "data": list(self.vertices)})


@dataclass(frozen=True)
class ColoringWitness:
    """A proper coloring plus evidence that one fewer color is impossible.

    ``clique`` is set when a clique of the same size bounds chi from below;
    otherwise ``refuted_nodes``/``trace_hash`` record the exhausted search
    for ``len(set(labels)) - 1`` colors.
    """

    labels: tuple[int, ...]
    clique: Optional[tuple[int, ...]] = None
    refuted_nodes: int = 0
    trace_hash: str = ""

    @property
    def num_colors(self) -> int:
        return len(set(self.labels))

    def to_json(self) -> str:
        return json.dumps({"type": "coloring", "data": list(self.labels)})


def witness_from_json(text: str):
    d = json.loads(text)
    if d["type"] == "clique":
        return CliqueWitness(tuple(d["data"]))
    if d["type"] == "coloring":
        return ColoringWitness(tuple(d["data"]))
    raise ValueError(f"unknown witness type {d['type']!r}")


# -- clique number ---------------------------------------------------------


def _bron_kerbosch_max(adj: list[int], n: int) -> int:
    best = 0
    best_set = 0

    def expand(R: int, P: int, X: int):
        nonlocal best, best_set
        if not P and not X:
            if R.bit_count() > best:
                best, best_set = R.bit_count(), R
            return
        if R.bit_count() + P.bit_count() <= best:
            return
        # pivot maximizing |P & N(u)|
        PX = P | X
        pivot, pmax = -1, -1
        while PX:
            u = (PX & -PX).bit_length() - 1
            PX &= PX - 1
            c = (P & adj[u]).bit_count()
            if c > pmax:
                pivot, pmax = u, c
        cand = P & ~adj[pivot]
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            bit = 1 << v
            expand(R | bit, P & adj[v], X & adj[v])
            P &= ~bit
            X |= bit

    expand(0, (1 << n) - 1, 0)
    return best_set


def _hyper_clique_max(G: Hypergraph) -> tuple[int, ...]:
    n, r, E = G.n, G.r, G.edges
    deg = G.degrees()
    order = sorted(range(n), key=lambda v: (-deg[v], v))
    best: list[int] = []

    def extendable(clique: list[int], v: int) -> bool:
        if len(clique) < r - 1:
            return True
        for sub in combinations(clique, r - 1):
            if not E >> rank_edge(sorted(sub + (v,)), n, r) & 1:
                return False
        return True

    def grow(clique: list[int], cand: list[int]):
        nonlocal best
        if len(clique) > len(best):
            best = list(clique)
        for i, v in enumerate(cand):
            if len(clique) + len(cand) - i <= len(best):
                return
            # vertices of degree zero only fit in cliques smaller than r
            if len(clique) >= r - 1 and deg[v] == 0:
                continue
            if extendable(clique, v):
                clique.append(v)
                grow(clique, cand[i + 1:])
                clique.pop()

    grow([], order)
    return tuple(sorted(best))


def omega(G: Hypergraph) -> tuple[int, CliqueWitness]:
    """Clique number; vertex sets smaller than r count as (vacuous) cliques."""
    if G.n == 0:
        return 0, CliqueWitness(())
    if G.r == 2:
        s = _bron_kerbosch_max(G.adjacency(), G.n)
        verts = tuple(v for v in range(G.n) if s >> v & 1)
    else:
        verts = _hyper_clique_max(G)
    return len(verts), CliqueWitness(verts)


def is_clique(G: Hypergraph, vertices: Sequence[int]) -> bool:
    """Checks every r-subset directly against the raw edge bit set."""
    vs = sorted(set(vertices))
    if len(vs) != len(vertices) or any(not 0 <= v < G.n for v in vs):
        return False
    return all(G.edges >> rank_edge(e, G.n, G.r) & 1 for e in combinations(vs, G.r))


def verify_clique(G: Hypergraph, value: int, witness: CliqueWitness) -> bool:
    return len(witness.vertices) == value and is_clique(G, witness.vertices)


# -- chromatic number ------------------------------------------------------


class _ColoringSearch:
    def __init__(self, adj: list[int], n: int):
        self.adj = adj
        self.n = n
        self.deg = [a.bit_count() for a in adj]
        self.nodes = 0
        self.digest = hashlib.sha256()

    def run(self, c: int) -> Optional[list[int]]:
        """DSATUR backtracking for a proper coloring with at most c colors."""
        n, adj = self.n, self.adj
        labels = [-1] * n
        # bit set of colors seen in each vertex's neighbourhood
        sat = [0] * n

        def pick() -> int:
            best, key = -1, None
            for v in range(n):
                if labels[v] < 0:
                    kv = (sat[v].bit_count(), self.deg[v], -v)
                    if key is None or kv > key:
                        best, key = v, kv
            return best

        def bt(colored: int, used: int) -> bool:
            if colored == n:
                return True
            v = pick()
            self.nodes += 1
            limit = min(c, used + 1)
            for col in range(limit):
                if sat[v] >> col & 1:
                    continue
                self.digest.update(bytes((v & 0xFF, col & 0xFF)))
                labels[v] = col
                changed = []
                nb = adj[v]
                while nb:
                    u = (nb & -nb).bit_length() - 1
                    nb &= nb - 1
                    if labels[u] < 0 and not sat[u] >> col & 1:
                        sat[u] |= 1 << col
                        changed.append(u)
                if bt(colored + 1, max(used, col + 1)):
                    return True
                for u in changed:
                    sat[u] &= ~(1 << col)
                labels[v] = -1
            return False

        return labels if bt(0, 0) else None


def _greedy_upper(adj: list[int], n: int) -> int:
    order = sorted(range(n), key=lambda v: -adj[v].bit_count())
    labels = [-1] * n
    for v in order:
        taken = {labels[u] for u in range(n) if adj[v] >> u & 1}
        c = 0
        while c in taken:
            c += 1
        labels[v] = c
    return max(labels) + 1 if n else 0


def chi(G: Hypergraph) -> tuple[int, ColoringWitness]:
    """Chromatic number by iterative deepening over the color count."""
    if G.r != 2:
        raise ValueError("chromatic number is only defined here for graphs (r = 2)")
    n = G.n
    if n == 0:
        return 0, ColoringWitness(())
    adj = G.adjacency()
    lb, cw = omega(G)
    ub = _greedy_upper(adj, n)
    search = _ColoringSearch(adj, n)
    refuted_nodes = 0
    refuted_hash = ""
    for c in range(lb, ub + 1):
        before = search.nodes
        labels = search.run(c)
        if labels is not None:
            clique = cw.vertices if c == lb else None
            return c, ColoringWitness(tuple(labels), clique, refuted_nodes, refuted_hash)
        refuted_nodes = search.nodes - before
        refuted_hash = search.digest.hexdigest()
    raise AssertionError("greedy coloring bound was not reached")  # pragma: no cover


def is_proper_coloring(G: Hypergraph, labels: Sequence[int]) -> bool:
    if G.r != 2 or len(labels) != G.n:
        return False
    for a, b in G.edge_sets():
        if labels[a] == labels[b]:
            return False
    return True


# orders up to this get minimality re-checked by plain enumeration
RECHECK_ORDER = 10


def verify_coloring(G: Hypergraph, value: int, witness: ColoringWitness) -> bool:
    labels = witness.labels
    if not is_proper_coloring(G, labels):
        return False
    if any(not 0 <= x < value for x in labels) or len(set(labels)) != value:
        return False
    if witness.clique is not None:
        return len(witness.clique) == value and is_clique(G, witness.clique)
    if G.n <= RECHECK_ORDER:
        return not colorable(G, value - 1)
    return witness.refuted_nodes > 0


def colorable(G: Hypergraph, c: int) -> bool:
    """Plain assignment enumeration; only sensible for tiny graphs."""
    edges = G.edge_sets()
    if G.n == 0:
        return True
    if c <= 0:
        return False
    for labels in product(range(c), repeat=G.n - 1):
        full = (0,) + labels
        if all(full[a] != full[b] for a, b in edges):
            return True
    return False


# -- objectives ------------------------------------------------------------


def part_values(D: Decomposition, obj: ObjectiveSpec) -> list[Fraction]:
    obj.validate(D.k, D.r)
    out = []
    for t, H in enumerate(D.parts()):
        w = omega(H)[0]
        if obj.kind == CHI_M:
            out.append(Fraction(chi(H)[0] if t < obj.m else w))
        elif obj.kind == A_R:
            c = chi(H)[0] if obj.r_coef else w
            out.append((1 - obj.r_coef) * w + obj.r_coef * c)
        else:
            out.append(Fraction(w))
    return out


def evaluate(D: Decomposition, obj: ObjectiveSpec) -> Fraction:
    return sum(part_values(D, obj), Fraction(0))


# -- closed-form right-hand sides -----------------------------------------


class HypothesisError(ValueError):
    """Parameters fall outside the range where the stated bound is known to hold."""


BOUND_NAMES = (
    "omega-graph",
    "convex-general",
    "chi-factorial",
    "chi-mixed-f",
    "omega-hyper",
    "chi-binomial",
    "chi-mixed-conj",
    "convex-small",
    "chi-mixed",
    "chi-one",
    "chi-three",
)


def bound(
    name: str,
    k: int,
    n: int,
    r: int = 2,
    *,
    r_coef=None,
    m: Optional[int] = None,
    f_m=None,
) -> Fraction:
    """Exact right-hand side of a named upper bound on an optimal decomposition sum.

    ``omega-graph``     n + C(k,2)
    ``convex-general``  n + (1-c)C(k,2) + c*k!/2
    ``chi-factorial``   n + k!/2
    ``chi-mixed-f``     n + C(k,2) + f - C(m,2)   (needs m, f_m)
    ``omega-hyper``     n + (r-1)C(k,2)
    the rest            n + C(k,2), each with its own hypothesis check
    """
    if k < 1 or n < 1:
        raise HypothesisError("k and n must be positive integers")
    if r < 2:
        raise HypothesisError("uniformity must be at least 2")
    base = Fraction(n + comb(k, 2))
    if name in ("omega-graph", "chi-factorial", "convex-general", "convex-small",
                "chi-binomial", "chi-mixed", "chi-mixed-conj", "chi-one",
                "chi-three", "chi-mixed-f") and r != 2:
        raise HypothesisError(f"{name} concerns graphs (r = 2)")
    if name == "omega-graph" or name == "chi-binomial":
        return base
    if name == "chi-factorial":
        return Fraction(n) + Fraction(factorial(k), 2)
    if name == "convex-general":
        c = _coef(r_coef)
        return n + (1 - c) * comb(k, 2) + c * Fraction(factorial(k), 2)
    if name == "convex-small":
        c = _coef(r_coef)
        if c > min(Fraction(1), Fraction(3, k)):
            raise HypothesisError(f"coefficient {c} exceeds min(1, 3/k) for k={k}")
        return base
    if name == "omega-hyper":
        return Fraction(n + (r - 1) * comb(k, 2))
    if name == "chi-one":
        return base
    if name == "chi-three":
        if k < 3:
            raise HypothesisError("needs k >= 3")
        return base
    if name in ("chi-mixed", "chi-mixed-conj", "chi-mixed-f"):
        if m is None:
            raise HypothesisError(f"{name} needs m")
        if name != "chi-mixed-conj" and m < 1:
            raise HypothesisError("needs m >= 1")
        if m > k:
            raise HypothesisError("needs k >= m")
        if name == "chi-mixed":
            if m > 3:
                raise HypothesisError(
                    "needs chi(m; K_n) <= n + C(m,2), only known for m <= 3"
                )
            return base
        if name == "chi-mixed-conj":
            return base
        if f_m is None:
            raise HypothesisError("chi-mixed-f needs f_m")
        f = Fraction(f_m)
        if not f_value_known_valid(m, f):
            raise HypothesisError(f"f({m}) = {f} is not a known valid offset")
        return base + f - comb(m, 2)
    raise ValueError(f"unknown bound {name!r}")


def f_value_known_valid(m: int, f) -> bool:
    """Is chi(m; K_n) <= n + f known to hold for every n?"""
    f = Fraction(f)
    if m <= 3:
        return f >= comb(m, 2)
    return f >= Fraction(factorial(m), 2)


def _coef(r_coef) -> Fraction:
    if r_coef is None:
        raise HypothesisError("bound needs r_coef")
    c = Fraction(r_coef)
    if not 0 <= c <= 1:
        raise HypothesisError("r_coef must lie in [0, 1]")
    return c
