"""Bound verification suites, step-by-step proof traces, and report writing.

Claim ids
---------
omega-graph      clique sum, graphs:          <= n + C(k,2), tight for n >= C(k,2)
omega-hyper      clique sum, r-uniform:       <= n + (r-1)C(k,2), tight for n >= (r-1)C(k,2)
convex-general   (1-c)omega + c chi sum:      <= n + (1-c)C(k,2) + c k!/2
convex-small     same sum, c <= min(1, 3/k):  <= n + C(k,2)
chi-factorial    chromatic sum:               <= n + k!/2
chi-binomial     chromatic sum (open):        <= n + C(k,2)
chi-mixed        chi on m parts, omega else:  <= n + C(k,2) for m <= 3
chi-mixed-conj   same, any m (open):          <= n + C(k,2)
chi-mixed-f      same with offset f:          <= n + C(k,2) + f - C(m,2)
chi-one          m = 1, tight for n >= C(k,2)
chi-three        m = 3, tight for n >= C(k,2)
perfect-parts    every part of a clique-optimal decomposition has chi == omega
mixed-trace      every step of the edge-shift argument on optimal decompositions
triple-averaging averaging identity over chromatic triples on random decompositions
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .constructions import base_order, construct_extremal
from .core import Decomposition, Hypergraph, ObjectiveSpec, induced, minus, positive_vertices
from .invariants import HypothesisError, bound, chi, evaluate, f_value_known_valid, omega
from .search import (
    SearchBudgetError,
    check_positive_parts_complete,
    first_part_maximal,
    fraction_str,
    normalize,
    optimize,
)

log = logging.getLogger(__name__)

HOLDS = "holds"
EQUALITY = "equality"
VIOLATED = "VIOLATED"
HYPOTHESIS = "hypothesis-not-met"
INCONCLUSIVE = "inconclusive"


@dataclass
class VerificationRecord:
    claim: str
    n: int
    r: int
    k: int
    m: Optional[int]
    r_coef: Optional[Fraction]
    lhs: Optional[Fraction]
    rhs: Optional[Fraction]
    status: str
    witness: str = ""
    f_m: Optional[Fraction] = None
    construction: Optional[Fraction] = None
    nodes: int = 0
    note: str = ""

    CSV_FIELDS = ("claim", "k", "n", "r", "m", "r_coef", "f_m", "lhs", "rhs",
                  "status", "construction", "witness", "note")

    def key(self):
        return (self.claim, self.k, self.n, self.r, self.m or 0,
                self.r_coef or Fraction(0), self.f_m or Fraction(0))

    def row(self) -> dict:
        def fs(x):
            return "" if x is None else fraction_str(x)

        return {
            "claim": self.claim, "k": self.k, "n": self.n, "r": self.r,
            "m": "" if self.m is None else self.m,
            "r_coef": fs(self.r_coef), "f_m": fs(self.f_m),
            "lhs": fs(self.lhs), "rhs": fs(self.rhs), "status": self.status,
            "construction": fs(self.construction), "witness": self.witness,
            "note": self.note,
        }

    def to_json_dict(self) -> dict:
        d = self.row()
        d["nodes_visited"] = self.nodes
        return d


def status_of(lhs: Fraction, rhs: Fraction) -> str:
    if lhs > rhs:
        return VIOLATED
    return EQUALITY if lhs == rhs else HOLDS


# -- claims ----------------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    name: str
    bound_name: Optional[str]
    default_ranges: tuple
    needs_m: bool = False
    needs_coef: bool = False
    tight: bool = False


_GRAPH_RANGES = ({"k": [2], "n": list(range(1, 8))},
                 {"k": [3], "n": list(range(1, 7))},
                 {"k": [4], "n": list(range(1, 6))})

CLAIMS = {
    c.name: c
    for c in [
        Claim("omega-graph", "omega-graph", _GRAPH_RANGES, tight=True),
        Claim("omega-hyper", "omega-hyper",
              ({"k": [2], "n": list(range(1, 6)), "r": [3]},), tight=True),
        Claim("convex-general", "convex-general",
              tuple(dict(d, coef=[Fraction(1, 2), Fraction(1)]) for d in _GRAPH_RANGES),
              needs_coef=True),
        Claim("convex-small", "convex-small", _GRAPH_RANGES, needs_coef=True),
        Claim("chi-factorial", "chi-factorial", _GRAPH_RANGES),
        Claim("chi-binomial", "chi-binomial", _GRAPH_RANGES),
        Claim("chi-mixed", "chi-mixed", _GRAPH_RANGES, needs_m=True),
        Claim("chi-mixed-conj", "chi-mixed-conj", _GRAPH_RANGES, needs_m=True),
        Claim("chi-mixed-f", "chi-mixed-f", _GRAPH_RANGES, needs_m=True),
        Claim("chi-one", "chi-one", _GRAPH_RANGES, tight=True),
        Claim("chi-three", "chi-three", _GRAPH_RANGES[1:], tight=True),
        Claim("perfect-parts", None,
              ({"k": [2], "n": list(range(3, 7))}, {"k": [3], "n": list(range(3, 6))})),
        Claim("mixed-trace", None,
              ({"k": [2], "n": list(range(1, 8)), "m": [0, 1]},
               {"k": [3], "n": list(range(3, 7)), "m": [0, 1]})),
        Claim("triple-averaging", None,
              ({"k": [4, 5], "n": [5, 6]},)),
    ]
}


def claim_objective(claim: str, k: int, m: Optional[int], coef: Optional[Fraction]) -> ObjectiveSpec:
    if claim in ("omega-graph", "omega-hyper", "perfect-parts"):
        return ObjectiveSpec.omega()
    if claim in ("convex-general", "convex-small"):
        return ObjectiveSpec.a_r(coef)
    if claim in ("chi-factorial", "chi-binomial"):
        return ObjectiveSpec.chi_m(k)
    if claim == "chi-one":
        return ObjectiveSpec.chi_m(1)
    if claim == "chi-three":
        return ObjectiveSpec.chi_m(3)
    return ObjectiveSpec.chi_m(m)


def f_presets(m: int) -> list[Fraction]:
    """Offsets f with chi(m; K_n) <= n + f known for every n."""
    if m == 0:
        return [Fraction(0)]
    vals = {Fraction(factorial(m), 2)}
    if m <= 3:
        vals.add(Fraction(comb(m, 2)))
    return sorted(vals)


# -- ranges ----------------------------------------------------------------

_RANGE_ITEM = re.compile(r"^\s*(\w+)\s*=\s*([^,]+?)\s*$")


def parse_range(text: str) -> dict:
    """``"k=2..3,n=1..6,m=1,coef=3/4"`` -> {"k": [2, 3], "n": [1..6], ...}.

    Values are single numbers, ``a..b`` integer spans, or ``a|b|c`` lists.
    """
    out: dict = {}
    for part in text.split(","):
        if not part.strip():
            continue
        mt = _RANGE_ITEM.match(part)
        if not mt:
            raise ValueError(f"bad range item {part!r}")
        key, val = mt.group(1), mt.group(2)
        if key == "r_coef":
            key = "coef"
        if key not in ("k", "n", "r", "m", "coef", "f"):
            raise ValueError(f"unknown range key {key!r}")
        if ".." in val:
            lo, hi = val.split("..")
            vals = list(range(int(lo), int(hi) + 1))
        else:
            vals = [v for v in val.split("|")]
        if key in ("coef", "f"):
            out[key] = [Fraction(v) for v in vals]
        else:
            out[key] = [int(v) for v in vals]
    return out


def expand(ranges: dict, claim: Claim) -> list[dict]:
    ks = ranges.get("k", [2])
    ns = ranges.get("n", [1])
    rs = ranges.get("r", [2])
    out = []
    for k, n, r in product(ks, ns, rs):
        ms = ranges.get("m", list(range(1, k + 1)) if claim.needs_m else [None])
        if claim.needs_coef:
            default = [min(Fraction(1), Fraction(3, k))] if claim.name == "convex-small" else [Fraction(1, 2)]
            coefs = ranges.get("coef", default)
        else:
            coefs = [None]
        for m, c in product(ms, coefs):
            if claim.needs_m and m is not None and m > k:
                continue
            out.append({"k": k, "n": n, "r": r, "m": m, "coef": c, "f": ranges.get("f")})
    return out


# -- the searches ----------------------------------------------------------


class _Runner:
    """Memoizes optimize calls within one suite run."""

    def __init__(self, budget=None, threads=1, out_dir=None):
        self.budget = budget
        self.threads = threads
        self.out_dir = Path(out_dir) if out_dir else None
        self._cache = {}

    def optimize(self, n, r, k, obj, all_optima=False):
        key = (n, r, k, str(obj), all_optima)
        if key not in self._cache:
            try:
                self._cache[key] = optimize(n, r, k, obj, budget=self.budget,
                                            threads=self.threads, all_optima=all_optima)
            except SearchBudgetError as exc:
                self._cache[key] = exc
        return self._cache[key]

    def write_witness(self, name: str, D: Decomposition) -> str:
        if self.out_dir is None:
            return ""
        rel = Path("witnesses") / f"{name}.json"
        path = self.out_dir / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(D.to_json_dict(), sort_keys=True) + "\n")
        return rel.as_posix()


def _inst_name(claim, inst, f=None) -> str:
    s = f"{claim}_k{inst['k']}_n{inst['n']}_r{inst['r']}"
    if inst.get("m") is not None:
        s += f"_m{inst['m']}"
    if inst.get("coef") is not None:
        s += "_c" + fraction_str(inst["coef"]).replace("/", "-")
    if f is not None:
        s += "_f" + fraction_str(f).replace("/", "-")
    return s


def _bound_record(claim: Claim, inst: dict, f, runner: _Runner) -> VerificationRecord:
    k, n, r, m, coef = inst["k"], inst["n"], inst["r"], inst["m"], inst["coef"]
    rec = VerificationRecord(claim.name, n, r, k, m, coef, None, None, HYPOTHESIS, f_m=f)
    try:
        rhs = bound(claim.bound_name, k, n, r, r_coef=coef, m=m, f_m=f)
    except HypothesisError as exc:
        rec.note = str(exc)
        return rec
    rec.rhs = rhs
    obj = claim_objective(claim.name, k, m, coef)
    try:
        obj.validate(k, r)
    except ValueError as exc:
        rec.note = str(exc)
        return rec
    res = runner.optimize(n, r, k, obj)
    if isinstance(res, Exception):
        rec.status, rec.note = INCONCLUSIVE, str(res)
        return rec
    rec.nodes = res.nodes_visited
    if not res.exact:
        rec.status, rec.lhs = INCONCLUSIVE, res.optimum
        rec.note = "node budget exhausted; lhs is a lower bound"
        return rec
    rec.lhs = res.optimum
    rec.status = status_of(res.optimum, rhs)
    if res.optimal_decompositions:
        rec.witness = runner.write_witness(_inst_name(claim.name, inst, f),
                                           res.optimal_decompositions[0])
    if claim.tight:
        n0 = base_order(k, r)
        if n >= n0:
            rec.construction = evaluate(construct_extremal(k, r, n), obj)
            if rec.construction != rhs or rec.lhs != rhs:
                rec.note = "expected equality with the extremal construction"
    return rec


def verify_bound(claim: str, ranges: Optional[dict] = None, *, out_dir=None, budget=None,
                 threads: int = 1, stop_on_violation: bool = True,
                 runner: Optional[_Runner] = None) -> list[VerificationRecord]:
    """One record per instance of ``claim`` over the parameter grid ``ranges``."""
    c = CLAIMS[claim]
    runner = runner or _Runner(budget, threads, out_dir)
    grids = [ranges] if ranges else list(c.default_ranges)
    records = []
    for grid in grids:
        for inst in expand(grid, c):
            if c.name == "perfect-parts":
                recs = [perfect_parts_record(inst["k"], inst["n"], runner)]
            elif c.name == "mixed-trace":
                recs = mixed_trace_records(inst, runner)
            elif c.name == "triple-averaging":
                recs = [averaging_record(inst["k"], inst["n"])]
            elif c.name == "chi-mixed-f":
                fs = inst["f"] or f_presets(inst["m"])
                recs = [_bound_record(c, inst, f, runner) for f in fs]
            else:
                recs = [_bound_record(c, inst, None, runner)]
            records.extend(recs)
            if stop_on_violation and any(rec.status == VIOLATED for rec in recs):
                return sorted(records, key=VerificationRecord.key)
    return sorted(records, key=VerificationRecord.key)


# -- chi == omega on the parts of clique-optimal decompositions ------------


def verify_perfect_parts(k: int, n: int, *, budget=None, threads=1) -> list[VerificationRecord]:
    """One record per optimal class: lhs = max over its parts of chi - omega."""
    runner = _Runner(budget, threads)
    rec_all = perfect_parts_record(k, n, runner, per_class=True)
    return rec_all


def perfect_parts_record(k, n, runner, per_class=False):
    rec = VerificationRecord("perfect-parts", n, 2, k, None, None, None, Fraction(0), HYPOTHESIS)
    if n < comb(k, 2) or n < 1:
        rec.note = "needs n >= C(k,2)"
        return [rec] if per_class else rec
    res = runner.optimize(n, 2, k, ObjectiveSpec.omega(), all_optima=True)
    if isinstance(res, Exception) or not res.exact or not res.complete_optimal_set:
        rec.status = INCONCLUSIVE
        rec.note = str(res) if isinstance(res, Exception) else "incomplete optimal set"
        return [rec] if per_class else rec
    rec.nodes = res.nodes_visited
    per = []
    for idx, D in enumerate(res.optimal_decompositions):
        gap = max(chi(H)[0] - omega(H)[0] for H in D.parts())
        r = VerificationRecord("perfect-parts", n, 2, k, None, None, Fraction(gap),
                               Fraction(0), VIOLATED if gap else EQUALITY)
        r.witness = runner.write_witness(f"perfect-parts_k{k}_n{n}_opt{idx}", D)
        per.append(r)
        if gap and rec.status != VIOLATED:
            rec.witness = r.witness
    worst = max(r.lhs for r in per)
    rec.lhs = worst
    rec.status = VIOLATED if worst > 0 else EQUALITY
    rec.note = f"{len(per)} optimal classes"
    return per if per_class else rec


# -- step trace of the edge-shift argument ---------------------------------


@dataclass
class TraceStep:
    name: str
    lhs: Fraction
    rhs: Fraction
    relation: str = "<="

    @property
    def ok(self) -> bool:
        if self.relation == "=":
            return self.lhs == self.rhs
        return self.lhs <= self.rhs


@dataclass
class TraceReport:
    m: int
    f_m: Fraction
    X: tuple[int, ...]
    steps: list[TraceStep] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps)

    def failures(self) -> list[TraceStep]:
        return [s for s in self.steps if not s.ok]


def _support_sets(D: Decomposition, parts: Sequence[int]) -> dict:
    """Positive vertex sets of the given parts; an edgeless part stands in with
    min(n, r-1) vertices, the size of its vacuous clique, taken from the union
    of the others when possible so the union is unchanged."""
    sets = {j: set(positive_vertices(D.part(j))) for j in parts}
    union = set().union(*sets.values()) if sets else set()
    need = min(D.n, D.r - 1)
    pool = sorted(union) if len(union) >= need else list(range(D.n))
    for j in parts:
        if not sets[j]:
            sets[j] = set(pool[:need])
    return sets


def mixed_sum_trace(D: Decomposition, m: int, f_m=0) -> TraceReport:
    """Check every inequality of the edge-shift argument numerically on ``D``.

    ``D`` must already satisfy the positive-part completeness conclusion for
    ``m`` (see ``check_positive_parts_complete``). For ``m = 0`` the trace
    follows the clique-only chain, which keeps part 0 out of the union.
    """
    ok, bad = check_positive_parts_complete(D, m)
    if not ok:
        raise ValueError(f"positive parts are not complete: {bad}")
    if m > D.k:
        raise ValueError("m exceeds k")
    if m == 0:
        return _clique_chain(D)
    if D.r != 2:
        raise ValueError("chromatic steps need graphs (r = 2)")
    f = Fraction(f_m)
    n, k = D.n, D.k
    parts = D.parts()
    omega_parts = list(range(m, k))
    supp = _support_sets(D, omega_parts)
    X = sorted(set().union(*supp.values())) if supp else []
    rep = TraceReport(m, f, tuple(X))
    add = rep.steps.append

    chi_out = [chi(minus(parts[j], X))[0] for j in range(m)]
    add(TraceStep("leftovers", Fraction(sum(chi_out)), n - len(X) + f))
    chi_in = []
    for j in range(m):
        GX = induced(parts[j], X)
        add(TraceStep(f"positive-order-in-X[{j}]", Fraction(len(positive_vertices(GX))),
                      Fraction(k - m)))
        cx = chi(GX)[0]
        chi_in.append(cx)
        add(TraceStep(f"chi-in-X[{j}]", Fraction(cx), Fraction(k - m)))
    chis = [chi(parts[j])[0] for j in range(m)]
    for j in range(m):
        add(TraceStep(f"subadditivity[{j}]", Fraction(chis[j]),
                      Fraction(chi_out[j] + chi_in[j])))
    add(TraceStep("chi-chunk", Fraction(sum(chis)), n - len(X) + f + m * (k - m)))
    omegas = [omega(parts[i])[0] for i in omega_parts]
    for i, w in zip(omega_parts, omegas):
        add(TraceStep(f"omega-is-support[{i}]", Fraction(w), Fraction(len(supp[i])), "="))
    add(TraceStep("omega-sum", Fraction(sum(omegas)), Fraction(len(X) + comb(k - m, 2))))
    add(TraceStep("binomial-identity", Fraction(comb(k - m, 2) + m * (k - m)),
                  Fraction(comb(k, 2) - comb(m, 2)), "="))
    add(TraceStep("final", Fraction(sum(chis) + sum(omegas)),
                  n + comb(k, 2) + f - comb(m, 2)))
    return rep


def _clique_chain(D: Decomposition) -> TraceReport:
    n, k, r = D.n, D.k, D.r
    parts = D.parts()
    others = list(range(1, k))
    supp = _support_sets(D, others)
    X = sorted(set().union(*supp.values())) if supp else []
    rep = TraceReport(0, Fraction(0), tuple(X))
    add = rep.steps.append
    G0 = parts[0]
    w0 = omega(G0)[0]
    w_out = omega(minus(G0, X))[0]
    G0X = induced(G0, X)
    w_in = omega(G0X)[0]
    cap = (r - 1) * (k - 1)
    add(TraceStep("split", Fraction(w0), Fraction(w_out + w_in)))
    add(TraceStep("outside", Fraction(w_out), Fraction(n - len(X))))
    if r == 2:
        # for hypergraphs part 0 may span supports inside X; only the clique bound survives
        add(TraceStep("positive-order-in-X[0]", Fraction(len(positive_vertices(G0X))),
                      Fraction(cap)))
    add(TraceStep("omega-in-X[0]", Fraction(w_in), Fraction(cap)))
    omegas = [omega(parts[i])[0] for i in others]
    for i, w in zip(others, omegas):
        add(TraceStep(f"omega-is-support[{i}]", Fraction(w), Fraction(len(supp[i])), "="))
    add(TraceStep("omega-sum", Fraction(sum(omegas)), Fraction(len(X) + (r - 1) * comb(k - 1, 2))))
    add(TraceStep("binomial-identity", Fraction(cap + (r - 1) * comb(k - 1, 2)),
                  Fraction((r - 1) * comb(k, 2)), "="))
    add(TraceStep("final", Fraction(w0 + sum(omegas)), Fraction(n + (r - 1) * comb(k, 2))))
    return rep


def shifted_optima(n, r, k, obj, runner=None):
    """Optimal decompositions with part 0 as large as possible, shifted to a fixed point."""
    runner = runner or _Runner()
    res = runner.optimize(n, r, k, obj, all_optima=True)
    if isinstance(res, Exception):
        raise res
    if not res.exact or not res.complete_optimal_set:
        raise SearchBudgetError("optimal set incomplete")
    return res, [normalize(D, obj) for D in first_part_maximal(res.optimal_decompositions, obj)]


def mixed_trace_records(inst: dict, runner: _Runner) -> list[VerificationRecord]:
    k, n, r, m = inst["k"], inst["n"], inst["r"], inst["m"] or 0
    obj = ObjectiveSpec.chi_m(m) if m else ObjectiveSpec.omega()
    out = []
    fs = inst.get("f") or f_presets(m)
    try:
        res, top = shifted_optima(n, r, k, obj, runner)
    except SearchBudgetError as exc:
        return [VerificationRecord("mixed-trace", n, r, k, m, None, None, Fraction(0),
                                   INCONCLUSIVE, note=str(exc))]
    decomps = sorted({normalize(D, obj) for D in res.optimal_decompositions} | set(top),
                     key=lambda D: D.colors)
    for f in fs:
        failures = 0
        names = []
        for D in decomps:
            tr = mixed_sum_trace(D, m, f)
            bad = tr.failures()
            failures += len(bad)
            names += [s.name for s in bad]
        rec = VerificationRecord("mixed-trace", n, r, k, m, None, Fraction(failures),
                                 Fraction(0), VIOLATED if failures else EQUALITY,
                                 f_m=f if m else None, nodes=res.nodes_visited)
        rec.note = f"{len(decomps)} decompositions" + (
            "; failed: " + " ".join(sorted(set(names))) if names else "")
        out.append(rec)
    return out


# -- averaging over chromatic triples ------------------------------------


@dataclass
class AveragingReport:
    identity_lhs: Fraction
    identity_rhs: Fraction
    averaged: Fraction
    bound: Fraction
    monotone: list[tuple[Fraction, Fraction, Fraction]]

    @property
    def identity_ok(self) -> bool:
        return self.identity_lhs == self.identity_rhs

    @property
    def inequality_ok(self) -> bool:
        return self.averaged <= self.bound

    @property
    def monotone_ok(self) -> bool:
        return all(a <= b for _, a, b in self.monotone)

    @property
    def ok(self) -> bool:
        return self.identity_ok and self.inequality_ok and self.monotone_ok


def triple_averaging(D: Decomposition, s_values: Optional[Sequence] = None) -> AveragingReport:
    """Sum the chi-on-three-parts objective over every choice of three parts.

    Checks that the total equals C(k-1,2)*sum(chi) + C(k-1,3)*sum(omega), that
    the averaged form is at most n + C(k,2), and that the convex sum with any
    coefficient s <= 3/k is at most the one at 3/k.
    """
    if D.r != 2:
        raise ValueError("needs graphs (r = 2)")
    k, n = D.k, D.n
    if k <= 3:
        raise ValueError("needs k > 3")
    parts = D.parts()
    w = [omega(H)[0] for H in parts]
    c = [chi(H)[0] for H in parts]
    sw, sc = sum(w), sum(c)
    total = 0
    for T in combinations(range(k), 3):
        total += sum(c[j] if j in T else w[j] for j in range(k))
    rhs = comb(k - 1, 2) * sc + comb(k - 1, 3) * sw
    top = Fraction(3, k)
    avg = (1 - top) * sw + top * sc
    if s_values is None:
        s_values = [top * i / 6 for i in range(7)]
    mono = []
    for s in s_values:
        s = Fraction(s)
        mono.append((s, (1 - s) * sw + s * sc, avg))
    return AveragingReport(Fraction(total), Fraction(rhs), avg, Fraction(n + comb(k, 2)), mono)


def random_decomposition(n: int, r: int, k: int, rng: np.random.Generator) -> Decomposition:
    return Decomposition(n, r, k, tuple(int(x) for x in rng.integers(0, k, comb(n, r))))


def averaging_record(k: int, n: int, draws: int = 1000, seed: int = 0) -> VerificationRecord:
    rng = np.random.default_rng([seed, k, n])
    fails = 0
    for _ in range(draws):
        if not triple_averaging(random_decomposition(n, 2, k, rng)).ok:
            fails += 1
    return VerificationRecord("triple-averaging", n, 2, k, None, Fraction(3, k),
                              Fraction(fails), Fraction(0), VIOLATED if fails else EQUALITY,
                              note=f"{draws} random decompositions, seed {seed}")


# -- cross-checks and reports ---------------------------------------------


def cross_check_mixed(records: Sequence[VerificationRecord]) -> list[str]:
    """If chi-binomial holds at k = m for n <= N, chi-mixed-conj at m must hold for n <= N."""
    ok_status = (HOLDS, EQUALITY)
    base: dict = {}
    for rec in records:
        if rec.claim == "chi-binomial":
            base.setdefault(rec.k, {})[rec.n] = rec.status in ok_status
    problems = []
    for rec in records:
        if rec.claim != "chi-mixed-conj" or rec.m is None or rec.m not in base:
            continue
        upto = base[rec.m]
        if all(upto.get(x, False) for x in range(1, rec.n + 1)) and rec.status not in ok_status:
            problems.append(f"chi-mixed-conj k={rec.k} n={rec.n} m={rec.m} is {rec.status}")
    return problems


def records_csv(records: Sequence[VerificationRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=VerificationRecord.CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for rec in records:
        w.writerow(rec.row())
    return buf.getvalue()


def records_json(records: Sequence[VerificationRecord]) -> str:
    return json.dumps([rec.to_json_dict() for rec in records], indent=2, sort_keys=True) + "\n"


def exit_code(records: Sequence[VerificationRecord]) -> int:
    if any(r.status == VIOLATED for r in records):
        return 1
    if any(r.status == INCONCLUSIVE for r in records):
        return 2
    return 0


def run_suite(claims: Sequence[str], ranges: Optional[dict] = None, out_dir=None, *,
              budget=None, threads: int = 1) -> tuple[list[VerificationRecord], int]:
    """Run claims in order, stop at the first violation, write summary.csv and detail.json."""
    runner = _Runner(budget, threads, out_dir)
    records: list[VerificationRecord] = []
    for claim in claims:
        recs = verify_bound(claim, ranges, runner=runner)
        records.extend(recs)
        if any(r.status == VIOLATED for r in recs):
            break
    problems = cross_check_mixed(records)
    for p in problems:
        log.error("cross-check: %s", p)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "summary.csv").write_text(records_csv(records))
        (out / "detail.json").write_text(records_json(records))
        bad = [r for r in records if r.status == VIOLATED]
        if bad and bad[0].witness:
            src = out / bad[0].witness
            (out / "counterexample.json").write_text(src.read_text())
    code = exit_code(records)
    if problems and code == 0:
        code = 1
    return records, code
