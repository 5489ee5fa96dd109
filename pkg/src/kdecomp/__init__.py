"""Exact optimal k-decompositions of complete (hyper)graphs for clique and chromatic sums."""
