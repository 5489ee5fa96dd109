"""Vertex and part symmetries of decompositions; canonical forms and orbits."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np

from .core import Decomposition, ObjectiveSpec, edge_list, rank_edge

MAX_CANON_VERTICES = 9


@lru_cache(maxsize=8)
def edge_preimages(n: int, r: int) -> np.ndarray:
    """Row p maps each target edge to its source edge under vertex perm p.

    Row 0 is the identity permutation.
    """
    if n > MAX_CANON_VERTICES:
        raise ValueError(f"canonical forms need n <= {MAX_CANON_VERTICES}")
    edges = edge_list(n, r)
    E = len(edges)
    perms = list(permutations(range(n)))
    out = np.empty((len(perms), E), dtype=np.int32)
    for p, perm in enumerate(perms):
        for i, e in enumerate(edges):
            out[p, rank_edge(sorted(perm[v] for v in e), n, r)] = i
    out.setflags(write=False)
    return out


def block_relabel(rows: np.ndarray, k: int, blocks) -> np.ndarray:
    """Relabel colours so that, within each block, they first appear in increasing order.

    This is the lexicographically least member of each row's orbit under
    permutations of colours that fix every block.
    """
    P, E = rows.shape
    if E == 0:
        return rows.copy()
    first = np.full((P, k), E, dtype=np.int64)
    for c in range(k):
        hit = rows == c
        has = hit.any(axis=1)
        first[has, c] = hit[has].argmax(axis=1)
    mapping = np.empty((P, k), dtype=rows.dtype)
    for blk in blocks:
        cols = np.array(list(blk), dtype=np.int64)
        if cols.size == 0:
            continue
        order = np.argsort(first[:, cols], axis=1, kind="stable")
        # colour cols[order[p, j]] gets label cols[j]
        src = cols[order]
        mapping[np.arange(P)[:, None], src] = cols[None, :]
    return np.take_along_axis(mapping, rows.astype(np.int64), axis=1)


def orbit_rows(colors, n: int, r: int, k: int, obj: ObjectiveSpec) -> np.ndarray:
    """Block-normalized images of a colour vector under every vertex permutation."""
    pre = edge_preimages(n, r)
    base = np.asarray(colors, dtype=np.int8)
    rows = base[pre]
    return block_relabel(rows, k, obj.part_blocks(k))


def lexmin_row(rows: np.ndarray) -> np.ndarray:
    if rows.shape[1] == 0:
        return rows[0]
    idx = np.lexsort(rows.T[::-1])[0]
    return rows[idx]


def canonicalize(D: Decomposition, obj: ObjectiveSpec) -> Decomposition:
    """Least colour vector over vertex relabellings and objective-preserving part swaps."""
    rows = orbit_rows(D.colors, D.n, D.r, D.k, obj)
    return Decomposition(D.n, D.r, D.k, tuple(int(c) for c in lexmin_row(rows)))
