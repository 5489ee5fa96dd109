"""Uniform hypergraphs, decompositions of complete hypergraphs, and the edge codec.

Edges of K_n^r are indexed by the colex rank of their vertex set, so a
hypergraph is just an integer bit set over ``range(C(n, r))``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence


def rank_edge(vertices: Sequence[int], n: int, r: int) -> int:
    """Colex rank of a sorted r-subset of ``range(n)``: sum of C(s_i, i)."""
    vs = tuple(vertices)
    if len(vs) != r:
        raise ValueError(f"expected {r} vertices, got {len(vs)}")
    for i, v in enumerate(vs):
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
        if i and vs[i - 1] >= v:
            raise ValueError(f"vertices must be strictly increasing: {vs}")
    return sum(comb(v, i + 1) for i, v in enumerate(vs))


def unrank_edge(rank: int, n: int, r: int) -> tuple[int, ...]:
    if not 0 <= rank < comb(n, r):
        raise ValueError(f"rank {rank} out of range for C({n},{r})")
    out = []
    x = n - 1
    for i in range(r, 0, -1):
        while comb(x, i) > rank:
            x -= 1
        out.append(x)
        rank -= comb(x, i)
        x -= 1
    return tuple(reversed(out))


@lru_cache(maxsize=None)
def edge_list(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    """All r-subsets of range(n) in colex order (index == rank)."""
    return tuple(sorted(combinations(range(n), r), key=lambda s: s[::-1]))


@lru_cache(maxsize=None)
def _vertex_edge_masks(n: int, r: int) -> tuple[int, ...]:
    masks = [0] * n
    for idx, e in enumerate(edge_list(n, r)):
        for v in e:
            masks[v] |= 1 << idx
    return tuple(masks)


def clique_mask(vertices: Iterable[int], n: int, r: int) -> int:
    """Bit set of all r-subsets of ``vertices``."""
    vs = sorted(set(vertices))
    mask = 0
    for e in combinations(vs, r):
        mask |= 1 << rank_edge(e, n, r)
    return mask


@dataclass(frozen=True)
class Hypergraph:
    n: int
    r: int
    edges: int = 0

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("uniformity must be at least 2")
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.edges < 0 or self.edges >> comb(self.n, self.r):
            raise ValueError("edge bit set has bits beyond C(n, r)")

    @classmethod
    def complete(cls, n: int, r: int = 2) -> "Hypergraph":
        return cls(n, r, (1 << comb(n, r)) - 1)

    @classmethod
    def empty(cls, n: int, r: int = 2) -> "Hypergraph":
        return cls(n, r, 0)

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[Sequence[int]]) -> "Hypergraph":
        mask = 0
        for e in edges:
            mask |= 1 << rank_edge(sorted(e), n, r)
        return cls(n, r, mask)

    @property
    def order(self) -> int:
        return self.n

    @property
    def size(self) -> int:
        return self.edges.bit_count()

    def edge_sets(self) -> list[tuple[int, ...]]:
        el = edge_list(self.n, self.r)
        return [el[i] for i in range(len(el)) if self.edges >> i & 1]

    def has_edge(self, vertices: Sequence[int]) -> bool:
        return bool(self.edges >> rank_edge(sorted(vertices), self.n, self.r) & 1)

    def degree(self, v: int) -> int:
        return (self.edges & _vertex_edge_masks(self.n, self.r)[v]).bit_count()

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def adjacency(self) -> list[int]:
        """Neighbour bit masks over vertices (graphs only)."""
        if self.r != 2:
            raise ValueError("adjacency masks are defined for graphs only")
        adj = [0] * self.n
        for a, b in self.edge_sets():
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return adj

    def is_complete(self) -> bool:
        return self.edges == (1 << comb(self.n, self.r)) - 1


def induced_with_map(G: Hypergraph, X: Iterable[int]) -> tuple[Hypergraph, tuple[int, ...]]:
    """G[X] relabelled onto 0..|X|-1 in increasing order, plus the old labels."""
    xs = tuple(sorted(set(X)))
    for v in xs:
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} out of range for n={G.n}")
    m = len(xs)
    mask = 0
    for new_rank, e in enumerate(edge_list(m, G.r)):
        old = tuple(xs[i] for i in e)
        if G.edges >> rank_edge(old, G.n, G.r) & 1:
            mask |= 1 << new_rank
    return Hypergraph(m, G.r, mask), xs


def induced(G: Hypergraph, X: Iterable[int]) -> Hypergraph:
    return induced_with_map(G, X)[0]


def minus(G: Hypergraph, X: Iterable[int]) -> Hypergraph:
    drop = set(X)
    for v in drop:
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} out of range for n={G.n}")
    return induced(G, [v for v in range(G.n) if v not in drop])


def positive_vertices(G: Hypergraph) -> tuple[int, ...]:
    vm = _vertex_edge_masks(G.n, G.r)
    return tuple(v for v in range(G.n) if G.edges & vm[v])


def positive_part(G: Hypergraph) -> tuple[Hypergraph, tuple[int, ...]]:
    """Subhypergraph induced on vertices of positive degree, with its vertex map."""
    return induced_with_map(G, positive_vertices(G))


def add_edge(G: Hypergraph, e: Sequence[int]) -> Hypergraph:
    return Hypergraph(G.n, G.r, G.edges | 1 << rank_edge(sorted(e), G.n, G.r))


def remove_edge(G: Hypergraph, e: Sequence[int]) -> Hypergraph:
    return Hypergraph(G.n, G.r, G.edges & ~(1 << rank_edge(sorted(e), G.n, G.r)))


@dataclass(frozen=True)
class Decomposition:
    """A k-decomposition of K_n^r: ``colors[e]`` is the part of edge rank ``e``."""

    n: int
    r: int
    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if self.k < 1:
            raise ValueError("need at least one part")
        if self.r < 2 or self.n < 0:
            raise ValueError("bad (n, r)")
        if len(self.colors) != comb(self.n, self.r):
            raise ValueError(
                f"colors has length {len(self.colors)}, expected C({self.n},{self.r})"
            )
        if any(not 0 <= c < self.k for c in self.colors):
            raise ValueError(f"colors must lie in 0..{self.k - 1}")

    @classmethod
    def uniform(cls, n: int, r: int, k: int, color: int = 0) -> "Decomposition":
        return cls(n, r, k, (color,) * comb(n, r))

    @classmethod
    def from_parts(cls, parts: Sequence[Hypergraph]) -> "Decomposition":
        n, r, k = parts[0].n, parts[0].r, len(parts)
        colors = [-1] * comb(n, r)
        for t, H in enumerate(parts):
            if (H.n, H.r) != (n, r):
                raise ValueError("parts must share n and r")
            for i in range(len(colors)):
                if H.edges >> i & 1:
                    if colors[i] != -1:
                        raise ValueError(f"edge {i} lies in two parts")
                    colors[i] = t
        if -1 in colors:
            raise ValueError("parts do not cover every edge")
        return cls(n, r, k, tuple(colors))

    def part(self, t: int) -> Hypergraph:
        if not 0 <= t < self.k:
            raise IndexError(f"part index {t} out of range for k={self.k}")
        mask = 0
        for i, c in enumerate(self.colors):
            if c == t:
                mask |= 1 << i
        return Hypergraph(self.n, self.r, mask)

    def parts(self) -> list[Hypergraph]:
        masks = [0] * self.k
        for i, c in enumerate(self.colors):
            masks[c] |= 1 << i
        return [Hypergraph(self.n, self.r, m) for m in masks]

    def part_size(self, t: int) -> int:
        return sum(1 for c in self.colors if c == t)

    def move_edge(self, e: int, to: int) -> "Decomposition":
        if not 0 <= to < self.k:
            raise IndexError(f"part index {to} out of range for k={self.k}")
        if not 0 <= e < len(self.colors):
            raise IndexError(f"edge rank {e} out of range")
        colors = list(self.colors)
        colors[e] = to
        return Decomposition(self.n, self.r, self.k, tuple(colors))

    def permute_parts(self, perm: Sequence[int]) -> "Decomposition":
        """Part t becomes part perm[t]."""
        return Decomposition(self.n, self.r, self.k, tuple(perm[c] for c in self.colors))

    def permute_vertices(self, perm: Sequence[int]) -> "Decomposition":
        """Vertex v becomes perm[v]."""
        colors = [0] * len(self.colors)
        for i, e in enumerate(edge_list(self.n, self.r)):
            colors[rank_edge(sorted(perm[v] for v in e), self.n, self.r)] = self.colors[i]
        return Decomposition(self.n, self.r, self.k, tuple(colors))

    # -- serialization ---------------------------------------------------

    def to_json_dict(self, explicit: bool = False) -> dict:
        d = {"n": self.n, "r": self.r, "k": self.k}
        if explicit:
            d["edges"] = [
                {"vertices": list(e), "color": c}
                for e, c in zip(edge_list(self.n, self.r), self.colors)
            ]
        else:
            d["colors"] = list(self.colors)
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "Decomposition":
        n, r, k = int(d["n"]), int(d["r"]), int(d["k"])
        if "colors" in d:
            return cls(n, r, k, tuple(d["colors"]))
        colors = [-1] * comb(n, r)
        for item in d["edges"]:
            colors[rank_edge(sorted(item["vertices"]), n, r)] = int(item["color"])
        if -1 in colors:
            raise ValueError("explicit edge list does not cover K_n^r")
        return cls(n, r, k, tuple(colors))

    def dumps(self, explicit: bool = False) -> str:
        return json.dumps(self.to_json_dict(explicit))

    @classmethod
    def loads(cls, s: str) -> "Decomposition":
        return cls.from_json_dict(json.loads(s))


OMEGA_SUM = "omega"
CHI_M = "chi_m"
A_R = "a_r"


@dataclass(frozen=True)
class ObjectiveSpec:
    """Which per-part sum to maximize.

    ``chi_m``: parts 0..m-1 contribute their chromatic number, the rest their
    clique number. ``a_r``: every part contributes (1 - c)*omega + c*chi with
    the exact rational ``r_coef`` c.
    """

    kind: str = OMEGA_SUM
    m: int = 0
    r_coef: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in (OMEGA_SUM, CHI_M, A_R):
            raise ValueError(f"unknown objective kind {self.kind!r}")
        object.__setattr__(self, "r_coef", Fraction(self.r_coef))
        if self.m < 0:
            raise ValueError("m must be non-negative")
        if not 0 <= self.r_coef <= 1:
            raise ValueError("r_coef must lie in [0, 1]")

    @classmethod
    def omega(cls) -> "ObjectiveSpec":
        return cls(OMEGA_SUM)

    @classmethod
    def chi_m(cls, m: int) -> "ObjectiveSpec":
        return cls(CHI_M, m=m)

    @classmethod
    def a_r(cls, coef) -> "ObjectiveSpec":
        return cls(A_R, r_coef=Fraction(coef))

    @classmethod
    def parse(cls, text: str) -> "ObjectiveSpec":
        """Parse ``omega``, ``chi_m:M`` or ``a_r:P/Q``."""
        text = text.strip()
        if text == "omega":
            return cls.omega()
        kind, _, arg = text.partition(":")
        if kind == "chi_m" and arg:
            return cls.chi_m(int(arg))
        if kind == "a_r" and arg:
            return cls.a_r(Fraction(arg))
        raise ValueError(f"cannot parse objective {text!r}")

    def __str__(self) -> str:
        if self.kind == CHI_M:
            return f"chi_m:{self.m}"
        if self.kind == A_R:
            return f"a_r:{self.r_coef.numerator}/{self.r_coef.denominator}"
        return "omega"

    def needs_chi(self) -> bool:
        return (self.kind == CHI_M and self.m > 0) or (self.kind == A_R and self.r_coef != 0)

    def validate(self, k: int, r: int) -> None:
        if self.kind == CHI_M and self.m > k:
            raise ValueError(f"m={self.m} exceeds k={k}")
        if self.kind in (CHI_M, A_R) and r != 2:
            raise ValueError("chromatic objectives require graphs (r = 2)")

    def part_blocks(self, k: int) -> list[range]:
        """Blocks of part indices the objective treats interchangeably."""
        if self.kind == CHI_M and 0 < self.m < k:
            return [range(0, self.m), range(self.m, k)]
        return [range(0, k)]
