"""Pure-Python versions of the compiled kernels (same results, same counters)."""

import numpy as np


def submask_max(arr, E):
    size = arr.shape[0]
    for i in range(E):
        view = arr[:size].reshape(-1, 2, 1 << i)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])


def supermask_min(arr, E):
    size = arr.shape[0]
    for i in range(E):
        view = arr[:size].reshape(-1, 2, 1 << i)
        np.minimum(view[:, 0, :], view[:, 1, :], out=view[:, 0, :])


def search_subtree(vals, part_table, block_first, E, k, prefix, collect, prune,
                   budget, store_cap, seed=-1):
    rows = [vals[t].tolist() for t in range(vals.shape[0])]
    tab = [rows[int(t)] for t in part_table]
    first = [int(x) for x in block_first]
    full = (1 << E) - 1
    masks = [0] * k
    used = [0] * k
    code = 0
    for d, c in enumerate(prefix):
        c = int(c)
        masks[c] |= 1 << d
        used[c] += 1
        code = code * k + c

    st = {"best": int(seed), "nodes": 0, "pruned": 0, "exhausted": False,
          "overflow": False}
    codes = []

    def bound(rem):
        return sum(tab[t][masks[t] | rem] for t in range(k))

    def take_leaf(value, leaf_code):
        if value > st["best"]:
            st["best"] = value
            codes.clear()
            codes.append(leaf_code)
            st["overflow"] = False
        elif value == st["best"] and collect:
            if len(codes) < store_cap:
                codes.append(leaf_code)
            else:
                st["overflow"] = True

    def dfs(d, code):
        bit = 1 << d
        rem = full & ~((bit << 1) - 1)
        for c in range(k):
            if c != first[c] and used[c - 1] == 0:
                continue
            if st["nodes"] >= budget:
                st["exhausted"] = True
                return
            st["nodes"] += 1
            masks[c] |= bit
            used[c] += 1
            b = bound(rem)
            if d + 1 == E:
                take_leaf(b, code * k + c)
            elif prune and (b < st["best"] or (not collect and b <= st["best"])):
                st["pruned"] += 1
            else:
                dfs(d + 1, code * k + c)
            masks[c] &= ~bit
            used[c] -= 1
            if st["exhausted"]:
                return

    if len(prefix) == E:
        st["nodes"] = 1
        take_leaf(bound(0), code)
    else:
        dfs(len(prefix), code)
    return (st["best"], st["nodes"], st["pruned"], np.array(codes, dtype=np.uint64),
            st["exhausted"], st["overflow"])
