"""Exhaustive, symmetry-reduced branch and bound over k-decompositions.

Edges are coloured in colex order. Colours inside one interchangeable block
are only opened in increasing order (colour c needs c-1 already used), and a
node is pruned when the sum over parts of the table value of
``part mask | all unassigned edges`` cannot reach the incumbent. Clique and
chromatic numbers never drop when edges are added, so that bound is
admissible.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .core import CHI_M, OMEGA_SUM, A_R, Decomposition, ObjectiveSpec, positive_part
from .invariants import evaluate, omega
from .symmetry import lexmin_row, orbit_rows
from .tables import objective_tables

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8
DEFAULT_SPLIT_DEPTH = 4
STORE_CAP = 1 << 22


class SearchBudgetError(RuntimeError):
    """The instance is estimated to exceed the node budget."""


@dataclass
class SearchReport:
    n: int
    r: int
    k: int
    objective: ObjectiveSpec
    optimum: Fraction
    exact: bool
    optimal_decompositions: list[Decomposition]
    complete_optimal_set: bool
    nodes_visited: int
    nodes_pruned: int
    elapsed: float = field(default=0.0, compare=False)

    def to_json_dict(self, with_timing: bool = True) -> dict:
        d = {
            "n": self.n,
            "r": self.r,
            "k": self.k,
            "objective": str(self.objective),
            "optimum": fraction_str(self.optimum),
            "exact": self.exact,
            "complete_optimal_set": self.complete_optimal_set,
            "optimal_decompositions": [list(D.colors) for D in self.optimal_decompositions],
            "nodes_visited": self.nodes_visited,
            "nodes_pruned": self.nodes_pruned,
        }
        if with_timing:
            d["elapsed_seconds"] = round(self.elapsed, 6)
        return d


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("DECOMP_BUDGET")
    return int(raw) if raw else default


def _block_first(k: int, obj: ObjectiveSpec) -> np.ndarray:
    first = np.zeros(k, dtype=np.int32)
    for blk in obj.part_blocks(k):
        for c in blk:
            first[c] = blk.start
    return first


def _prefixes(depth: int, k: int, first: np.ndarray):
    """All colour prefixes of the given length obeying first-use order."""
    out = []
    used = [0] * k
    cur = []

    def rec():
        if len(cur) == depth:
            out.append(np.array(cur, dtype=np.int32))
            return
        for c in range(k):
            if c != first[c] and used[c - 1] == 0:
                continue
            cur.append(c)
            used[c] += 1
            rec()
            used[c] -= 1
            cur.pop()

    rec()
    return out


def decode_codes(codes: np.ndarray, E: int, k: int) -> np.ndarray:
    rows = np.empty((len(codes), E), dtype=np.int8)
    rest = codes.astype(np.uint64).copy()
    for i in range(E - 1, -1, -1):
        rows[:, i] = (rest % np.uint64(k)).astype(np.int8)
        rest //= np.uint64(k)
    return rows


def optimize(
    n: int,
    r: int,
    k: int,
    obj: ObjectiveSpec,
    *,
    budget: Optional[int] = None,
    override: bool = False,
    all_optima: bool = False,
    cap: Optional[int] = None,
    threads: int = 1,
    split_depth: int = DEFAULT_SPLIT_DEPTH,
    prune: bool = True,
    canonical: bool = True,
) -> SearchReport:
    """Exact maximum of the objective over every k-decomposition of K_n^r.

    With ``all_optima`` every optimal colouring is collected and reduced to
    one canonical representative per symmetry class (at most ``cap`` of
    them); otherwise a single canonical optimum is returned. Subtrees below
    ``split_depth`` run as independent tasks, so reports do not depend on
    ``threads``.
    """
    t0 = time.perf_counter()
    obj.validate(k, r)
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    budget = budget_from_env() if budget is None else budget
    E = comb(n, r)
    if not override and k**E > budget:
        raise SearchBudgetError(
            f"k^C(n,r) = {k}^{E} exceeds the node budget {budget}; pass override"
        )
    if k**E >= 2**63:
        raise SearchBudgetError("colour codes would overflow 64 bits")
    vals, part_table, scale = objective_tables(n, r, k, obj)
    first = _block_first(k, obj)
    depth = min(split_depth, E)
    tasks = _prefixes(depth, k, first)

    def run(prefix):
        return kernels.search_subtree(
            vals, part_table, first, E, k, prefix, all_optima, prune, budget, STORE_CAP
        )

    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(p) for p in tasks]

    best = max(res[0] for res in results)
    nodes = sum(res[1] for res in results)
    pruned = sum(res[2] for res in results)
    exhausted = any(res[4] for res in results)
    overflow = any(res[5] for res in results if res[0] == best)
    codes = [res[3] for res in results if res[0] == best and len(res[3])]
    codes = np.concatenate(codes) if codes else np.zeros(0, dtype=np.uint64)
    if not all_optima:
        codes = codes[:1]
    rows = decode_codes(codes, E, k)

    reps = _representatives(rows, n, r, k, obj, cap if all_optima else 1, canonical)
    complete = all_optima and not overflow and not exhausted and (cap is None or len(reps) < cap)
    report = SearchReport(
        n=n, r=r, k=k, objective=obj,
        optimum=Fraction(int(best), scale),
        exact=not exhausted,
        optimal_decompositions=reps,
        complete_optimal_set=complete,
        nodes_visited=int(nodes),
        nodes_pruned=int(pruned),
        elapsed=time.perf_counter() - t0,
    )
    log.debug("optimize n=%d r=%d k=%d %s -> %s (%d nodes)", n, r, k, obj,
              report.optimum, nodes)
    return report


def _representatives(rows, n, r, k, obj, cap, canonical) -> list[Decomposition]:
    if not canonical:
        reps = [tuple(int(c) for c in row) for row in rows]
        reps = sorted(set(reps))
        return [Decomposition(n, r, k, c) for c in reps[:cap]]
    seen: set[bytes] = set()
    found: list[tuple[int, ...]] = []
    for row in rows:
        key = row.tobytes()
        if key in seen:
            continue
        orbit = orbit_rows(row, n, r, k, obj).astype(np.int8)
        seen.update(o.tobytes() for o in orbit)
        found.append(tuple(int(c) for c in lexmin_row(orbit)))
        if cap is not None and len(found) >= cap:
            break
    return [Decomposition(n, r, k, c) for c in sorted(found)]


def naive_optimum(n: int, r: int, k: int, obj: ObjectiveSpec) -> Fraction:
    """Reference maximum by evaluating every colour vector with the solvers."""
    from itertools import product

    E = comb(n, r)
    best = None
    for colors in product(range(k), repeat=E):
        v = evaluate(Decomposition(n, r, k, colors), obj)
        if best is None or v > best:
            best = v
    return best


# -- edge-shift normalization ---------------------------------------------


def _donor_parts(k: int, obj: ObjectiveSpec) -> range:
    m = obj.m if obj.kind == CHI_M else 0
    return range(max(m, 1), k)


def normalize(D: Decomposition, obj: ObjectiveSpec) -> Decomposition:
    """Shift edges from clique-scored parts into part 0 while the sum does not drop.

    Donor parts are those scored by clique number other than part 0. Each
    accepted move adds an edge to part 0, so this terminates.
    """
    if obj.kind not in (OMEGA_SUM, CHI_M):
        raise ValueError("normalize is defined for omega and chi_m objectives")
    obj.validate(D.k, D.r)
    cur = D
    value = evaluate(cur, obj)
    moved = True
    while moved:
        moved = False
        for j in _donor_parts(D.k, obj):
            for e, c in enumerate(cur.colors):
                if c != j:
                    continue
                cand = cur.move_edge(e, 0)
                v = evaluate(cand, obj)
                if v >= value:
                    cur, value, moved = cand, v, True
                    break
            if moved:
                break
    return cur


def check_positive_parts_complete(D: Decomposition, m: int = 0):
    """Whether the positive part of every clique-scored part other than part 0 is complete.

    Checks parts with index >= max(m, 1). Returns ``(ok, violations)`` where
    each violation is ``(part index, missing edge)`` in original labels.
    """
    violations = []
    for j in range(max(m, 1), D.k):
        P, labels = positive_part(D.part(j))
        if P.is_complete():
            continue
        for e in combinations(range(P.n), P.r):
            if not P.has_edge(e):
                violations.append((j, tuple(labels[v] for v in e)))
                break
    return not violations, violations


def swap_parts(D: Decomposition, a: int, b: int) -> Decomposition:
    perm = list(range(D.k))
    perm[a], perm[b] = perm[b], perm[a]
    return D.permute_parts(perm)


def first_part_maximal(decomps: Sequence[Decomposition], obj: ObjectiveSpec) -> list[Decomposition]:
    """Optimal decompositions with the most edges in part 0.

    ``decomps`` are class representatives; each part that the objective lets
    move to position 0 is tried there. Vertex relabelling leaves part sizes
    alone, so this covers the whole optimal set.
    """
    cands = []
    for D in decomps:
        movable = range(obj.m) if obj.kind == CHI_M and obj.m > 0 else range(D.k)
        for p in movable:
            cands.append(D if p == 0 else swap_parts(D, 0, p))
    if not cands:
        return []
    top = max(c.part_size(0) for c in cands)
    out = []
    for c in cands:
        if c.part_size(0) == top and c not in out:
            out.append(c)
    return out
