"""Compare the compiled kernel with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Times the two mask transforms behind the value tables and a full subtree
search, and checks that both backends return the same result.
"""

import argparse
import time
from fractions import Fraction
from math import comb

import numpy as np

from kdecomp import kernels
from kdecomp.core import ObjectiveSpec
from kdecomp.search import _block_first
from kdecomp.tables import objective_tables


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench_transforms(impls, E, repeat):
    rng = np.random.default_rng(0)
    base = rng.integers(0, 16, 1 << E).astype(np.int32)
    rows = []
    for op in ("submask_max", "supermask_min"):
        results = {}
        for name, impl in impls.items():
            def run(impl=impl):
                arr = base.copy()
                getattr(impl, op)(arr, E)
                return arr
            results[name] = best_of(run, repeat)
        outs = [o for _, o in results.values()]
        same = all(np.array_equal(outs[0], o) for o in outs[1:])
        rows.append((f"{op} E={E}", {k: t for k, (t, _) in results.items()}, same))
    return rows


def bench_search(impls, n, r, k, obj, repeat):
    vals, tab, _ = objective_tables(n, r, k, obj)
    first = _block_first(k, obj)
    E = comb(n, r)
    prefix = np.zeros(0, np.int32)
    results = {}
    for name, impl in impls.items():
        def run(impl=impl):
            best, nodes, pruned, codes, exh, ovf = impl.search_subtree(
                vals, tab, first, E, k, prefix, True, True, 10**12, 1 << 22)
            return best, nodes, pruned, codes.tolist()
        results[name] = best_of(run, repeat)
    outs = [o for _, o in results.values()]
    same = all(o == outs[0] for o in outs[1:])
    label = f"search n={n} r={r} k={k} {obj} ({outs[0][1]} nodes)"
    return label, {k: t for k, (t, _) in results.items()}, same


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small sizes only")
    args = ap.parse_args()

    impls = kernels.backends()
    if "compiled" not in impls:
        print("compiled kernel not built; only the fallback is available")
    names = sorted(impls)
    rows = []
    for E in ((12, 16) if args.quick else (16, 20, 22)):
        rows += bench_transforms(impls, E, args.repeat)
    cases = [(5, 2, 3, ObjectiveSpec.omega()), (4, 2, 4, ObjectiveSpec.a_r(Fraction(3, 4)))]
    if not args.quick:
        cases += [(6, 2, 2, ObjectiveSpec.chi_m(1)), (5, 3, 2, ObjectiveSpec.omega())]
    for n, r, k, obj in cases:
        rows.append(bench_search(impls, n, r, k, obj, args.repeat))

    head = f"{'case':48s}" + "".join(f"{n:>12s}" for n in names) + f"{'speedup':>10s}  same"
    print(head)
    print("-" * len(head))
    for label, times, same in rows:
        cells = "".join(f"{times[n]:11.4f}s" for n in names)
        speed = (times["python"] / times["compiled"]) if len(names) == 2 else float("nan")
        print(f"{label:48s}{cells}{speed:9.1f}x  {'yes' if same else 'NO'}")


if __name__ == "__main__":
    main()
