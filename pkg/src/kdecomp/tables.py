"""Per-edge-mask lookup tables of omega and chi on K_n^r.

``omega_table(n, r)[g]`` is the clique number of the hypergraph whose edge
bit set is ``g``; ``chi_table(n)[g]`` is the chromatic number of graph ``g``.
Both come from a seed array and a mask transform in the kernel.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from . import kernels
from .core import A_R, CHI_M, ObjectiveSpec, clique_mask, edge_list

MAX_TABLE_EDGES = 24


def _check_size(n: int, r: int) -> int:
    E = comb(n, r)
    if E > MAX_TABLE_EDGES:
        raise ValueError(
            f"K_{n}^{r} has {E} edges; tables are limited to {MAX_TABLE_EDGES}"
        )
    return E


@lru_cache(maxsize=8)
def omega_table(n: int, r: int) -> np.ndarray:
    E = _check_size(n, r)
    arr = np.zeros(1 << E, dtype=np.int32)
    for size in range(n + 1):
        for S in combinations(range(n), size):
            g = clique_mask(S, n, r)
            if arr[g] < size:
                arr[g] = size
    kernels.submask_max(arr, E)
    arr.setflags(write=False)
    return arr


def set_partitions(n: int):
    """Restricted growth strings of length n."""
    if n == 0:
        yield ()
        return

    def rec(prefix, mx):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(mx + 2):
            prefix.append(b)
            yield from rec(prefix, max(mx, b))
            prefix.pop()

    yield from rec([0], 0)


@lru_cache(maxsize=8)
def chi_table(n: int) -> np.ndarray:
    E = _check_size(n, 2)
    big = n + 1
    arr = np.full(1 << E, big, dtype=np.int32)
    edges = edge_list(n, 2)
    for labels in set_partitions(n):
        cross = 0
        for i, (a, b) in enumerate(edges):
            if labels[a] != labels[b]:
                cross |= 1 << i
        blocks = (max(labels) + 1) if labels else 0
        if arr[cross] > blocks:
            arr[cross] = blocks
    kernels.supermask_min(arr, E)
    arr.setflags(write=False)
    return arr


def objective_tables(n: int, r: int, k: int, obj: ObjectiveSpec):
    """(vals, part_table, scale): part t scores vals[part_table[t]][mask] / scale."""
    obj.validate(k, r)
    w = omega_table(n, r)
    if obj.kind == CHI_M and obj.m > 0:
        vals = np.stack([chi_table(n), w])
        part_table = np.array([0 if t < obj.m else 1 for t in range(k)], dtype=np.int32)
        return np.ascontiguousarray(vals, dtype=np.int32), part_table, 1
    if obj.kind == A_R and obj.r_coef != 0:
        c = Fraction(obj.r_coef)
        p, q = c.numerator, c.denominator
        combo = (q - p) * w.astype(np.int64) + p * chi_table(n).astype(np.int64)
        if combo.max(initial=0) * k >= 2**62:
            raise ValueError("scaled objective overflows the search kernel")
        vals = combo.astype(np.int64)
        if vals.max(initial=0) < 2**31:
            vals = vals.astype(np.int32)
        else:  # pragma: no cover - absurd denominators
            raise ValueError("coefficient denominator too large for the kernel")
        return vals.reshape(1, -1), np.zeros(k, dtype=np.int32), q
    return w.reshape(1, -1), np.zeros(k, dtype=np.int32), 1
