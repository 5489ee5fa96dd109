# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: mask-table transforms and the colouring search."""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint64_t
from libcpp.vector cimport vector

DEF MAXK = 64


def submask_max(int32_t[::1] arr, int E):
    """In place: arr[g] <- max(arr[h] for h submask of g)."""
    cdef Py_ssize_t size = arr.shape[0], base, blk, j, bit
    cdef int32_t* a = &arr[0] if size else NULL
    cdef int32_t lo, hi
    cdef int i
    with nogil:
        for i in range(E):
            bit = (<Py_ssize_t>1) << i
            # blocks of 2*bit: the upper half takes the max with the lower half
            for blk in range(size >> (i + 1)):
                base = blk << (i + 1)
                for j in range(base, base + bit):
                    lo = a[j]
                    hi = a[j + bit]
                    a[j + bit] = hi if hi > lo else lo


def supermask_min(int32_t[::1] arr, int E):
    """In place: arr[g] <- min(arr[h] for h supermask of g)."""
    cdef Py_ssize_t size = arr.shape[0], base, blk, j, bit
    cdef int32_t* a = &arr[0] if size else NULL
    cdef int32_t lo, hi
    cdef int i
    with nogil:
        for i in range(E):
            bit = (<Py_ssize_t>1) << i
            for blk in range(size >> (i + 1)):
                base = blk << (i + 1)
                for j in range(base, base + bit):
                    lo = a[j]
                    hi = a[j + bit]
                    a[j] = lo if lo < hi else hi


cdef struct State:
    int E
    int k
    const int32_t* vals
    Py_ssize_t stride
    const int32_t* tab
    const int32_t* block_first
    uint64_t masks[MAXK]
    int64_t used[MAXK]
    uint64_t full
    bint collect
    bint prune
    int64_t budget
    int64_t store_cap
    int64_t best
    int64_t nodes
    int64_t pruned
    bint exhausted
    bint overflow
    vector[uint64_t]* codes


cdef inline int64_t node_bound(State* s, uint64_t rem) noexcept nogil:
    cdef int64_t total = 0
    cdef int t
    for t in range(s.k):
        total += s.vals[s.tab[t] * s.stride + <Py_ssize_t>(s.masks[t] | rem)]
    return total


cdef inline void take_leaf(State* s, int64_t value, uint64_t code) noexcept nogil:
    if value > s.best:
        s.best = value
        s.codes.clear()
        s.codes.push_back(code)
        s.overflow = False
    elif value == s.best and s.collect:
        if <int64_t>s.codes.size() < s.store_cap:
            s.codes.push_back(code)
        else:
            s.overflow = True


cdef void dfs(State* s, int d, uint64_t code) noexcept nogil:
    cdef int c
    cdef uint64_t bit = (<uint64_t>1) << d
    cdef uint64_t rem = s.full & ~((bit << 1) - 1)
    cdef int64_t b
    for c in range(s.k):
        if c != s.block_first[c] and s.used[c - 1] == 0:
            continue
        if s.nodes >= s.budget:
            s.exhausted = True
            return
        s.nodes += 1
        s.masks[c] |= bit
        s.used[c] += 1
        b = node_bound(s, rem)
        if d + 1 == s.E:
            take_leaf(s, b, code * s.k + c)
        elif s.prune and (b < s.best or (not s.collect and b <= s.best)):
            s.pruned += 1
        else:
            dfs(s, d + 1, code * s.k + c)
        s.masks[c] &= ~bit
        s.used[c] -= 1
        if s.exhausted:
            return


def search_subtree(const int32_t[:, ::1] vals, const int32_t[::1] part_table,
                   const int32_t[::1] block_first, int E, int k,
                   const int32_t[::1] prefix, bint collect, bint prune,
                   int64_t budget, int64_t store_cap, int64_t seed=-1):
    """Depth-first search below a fixed colour prefix.

    Returns (best, nodes, pruned, codes, exhausted, overflow); codes are the
    base-k encodings (first edge most significant) of the best leaves.
    """
    if k > MAXK:
        raise ValueError("too many parts for the compiled kernel")
    cdef State s
    cdef vector[uint64_t] codes
    cdef int t, d
    cdef uint64_t code = 0
    s.E = E
    s.k = k
    s.vals = &vals[0, 0]
    s.stride = vals.shape[1]
    s.tab = &part_table[0]
    s.block_first = &block_first[0]
    for t in range(MAXK):
        s.masks[t] = 0
        s.used[t] = 0
    s.full = ((<uint64_t>1) << E) - 1
    s.collect = collect
    s.prune = prune
    s.budget = budget
    s.store_cap = store_cap
    s.best = seed
    s.nodes = 0
    s.pruned = 0
    s.exhausted = False
    s.overflow = False
    s.codes = &codes
    for d in range(prefix.shape[0]):
        s.masks[prefix[d]] |= (<uint64_t>1) << d
        s.used[prefix[d]] += 1
        code = code * k + <uint64_t>prefix[d]
    with nogil:
        if prefix.shape[0] == E:
            s.nodes = 1
            take_leaf(&s, node_bound(&s, 0), code)
        else:
            dfs(&s, <int>prefix.shape[0], code)
    out = np.empty(codes.size(), dtype=np.uint64)
    cdef uint64_t[::1] ov = out
    cdef Py_ssize_t i
    for i in range(<Py_ssize_t>codes.size()):
        ov[i] = codes[i]
    return s.best, s.nodes, s.pruned, out, bool(s.exhausted), bool(s.overflow)
