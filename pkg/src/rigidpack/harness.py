"""Desk-scale checks of the spectral packing statement, the uniqueness of the
extremal graph in its class, and the algebraic-connectivity conditions."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Iterator

import numpy as np

from . import graph6
from .errors import BudgetExceeded, HypothesisViolation
from .graph import ExtremalParams, Graph, build_extremal, class_size, enumerate_class
from .iso import canonical_form, is_isomorphic
from .matroid_union import pack_rigid_and_trees
from .spectral import DEFAULT_MARGIN, DEFAULT_TOL, Comparison, algebraic_connectivity, compare, spectral_radius

MIN_THEOREM_DELTA = 6
CLASS_BUDGET = 100_000
CDG_MAX_N = 40
REJECTION_CAP = 10_000


class Verdict(str, Enum):
    CONSISTENT = "consistent"
    COUNTEREXAMPLE = "counterexample"
    VACUOUS = "vacuous"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class VerificationRecord:
    graph_id: str
    params: ExtremalParams
    lambda1: float
    threshold: float
    above_threshold: Comparison
    packed: bool
    is_extremal_iso: bool
    is_extremal_labeled: bool
    verdict: Verdict

    def to_json(self) -> dict[str, Any]:
        return {
            "graph6": self.graph_id,
            "n": self.params.n,
            "delta": self.params.delta,
            "k": self.params.k,
            "lambda1": self.lambda1,
            "threshold": self.threshold,
            "above_threshold": self.above_threshold.value,
            "packed": self.packed,
            "is_extremal_iso": self.is_extremal_iso,
            "is_extremal_labeled": self.is_extremal_labeled,
            "verdict": self.verdict.value,
        }


def _classify(cmp: Comparison, packed: bool, iso: bool, in_scope: bool) -> Verdict:
    if cmp is Comparison.BELOW:
        return Verdict.VACUOUS
    if packed or iso:
        return Verdict.CONSISTENT
    if not in_scope or cmp is Comparison.INDISTINGUISHABLE:
        return Verdict.INDETERMINATE
    return Verdict.COUNTEREXAMPLE


def check_hypotheses(g: Graph, p: ExtremalParams, strict: bool = True) -> bool:
    """Raise on inputs the statement does not cover; return whether the
    ``delta >= 6`` part holds (only relevant with ``strict=False``)."""
    if g.n != p.n:
        raise HypothesisViolation(f"graph has {g.n} vertices, params say n={p.n}")
    if g.min_degree() != p.delta:
        raise HypothesisViolation(f"graph has minimum degree {g.min_degree()}, params say delta={p.delta}")
    if not p.in_regime:
        raise HypothesisViolation(f"k={p.k} exceeds delta/4 = {p.delta / 4}")
    if p.delta < MIN_THEOREM_DELTA:
        if strict:
            raise HypothesisViolation(f"delta={p.delta} < {MIN_THEOREM_DELTA}")
        return False
    return True


class _Threshold:
    """Per-parameter cache of the extremal graph, its spectral radius and
    canonical form."""

    def __init__(self, p: ExtremalParams, tol: float):
        self.graph = build_extremal(p)
        self.value = spectral_radius(self.graph, tol).value
        self.form = canonical_form(self.graph)


_THRESHOLDS: dict[tuple[ExtremalParams, float], _Threshold] = {}


def _threshold(p: ExtremalParams, tol: float) -> _Threshold:
    key = (p, tol)
    if key not in _THRESHOLDS:
        _THRESHOLDS[key] = _Threshold(p, tol)
    return _THRESHOLDS[key]


def verify_main_theorem(
    g: Graph,
    p: ExtremalParams,
    tol: float = DEFAULT_TOL,
    margin: float = DEFAULT_MARGIN,
    strict: bool = True,
) -> VerificationRecord:
    """Compare lambda_1(g) with the extremal threshold, attempt the packing
    with k rigid factors and floor((delta-4k)/2) trees, and classify."""
    in_scope = check_hypotheses(g, p, strict)
    thr = _threshold(p, tol)
    lam = spectral_radius(g, tol).value
    cmp = compare(lam, thr.value, margin)
    cert = pack_rigid_and_trees(g, p.k, p.ell)
    iso = g.m == thr.graph.m and canonical_form(g) == thr.form
    return VerificationRecord(
        graph_id=graph6.encode(g),
        params=p,
        lambda1=lam,
        threshold=thr.value,
        above_threshold=cmp,
        packed=cert.packed,
        is_extremal_iso=iso,
        is_extremal_labeled=g == thr.graph,
        verdict=_classify(cmp, cert.packed, iso, in_scope),
    )


@dataclass
class SetExtremalReport:
    params: ExtremalParams
    members: int
    extremal_value: float
    best_value: float
    best_non_iso_value: float | None
    separation: float | None
    unique: bool
    indistinguishable: bool
    iso_classes: int | None
    ranking: list[tuple[float, int, bool]] = field(default_factory=list)  # (lambda1, index, iso)

    def to_json(self) -> dict[str, Any]:
        doc = asdict(self)
        doc["params"] = asdict(self.params)
        return doc


def verify_set_extremal(
    p: ExtremalParams,
    dedup: bool = False,
    tol: float = DEFAULT_TOL,
    margin: float = DEFAULT_MARGIN,
    budget: int = CLASS_BUDGET,
) -> SetExtremalReport:
    """Spectral radius over every labelled member of the class; checks that
    the maximum sits only on copies of the extremal graph, with the stated
    margin to every other member."""
    size = class_size(p)
    if size > budget:
        raise BudgetExceeded(f"class has {size} labelled members, budget is {budget}")
    thr = _threshold(p, tol)
    ext_degrees = sorted(thr.graph.degrees())
    ranking = []
    forms: set[str] = set()
    for idx, g in enumerate(enumerate_class(p)):
        lam = spectral_radius(g, tol).value
        if dedup:
            forms.add(canonical_form(g))
        iso = sorted(g.degrees()) == ext_degrees and canonical_form(g) == thr.form
        ranking.append((lam, idx, iso))
    ranking.sort(key=lambda r: (-r[0], r[1]))
    best = ranking[0][0]
    others = [lam for lam, _, iso in ranking if not iso]
    best_other = max(others) if others else None
    sep = None if best_other is None else thr.value - best_other
    indistinct = sep is not None and abs(sep) <= margin
    unique = ranking[0][2] and (sep is None or sep > margin)
    return SetExtremalReport(
        params=p,
        members=size,
        extremal_value=thr.value,
        best_value=best,
        best_non_iso_value=best_other,
        separation=sep,
        unique=unique,
        indistinguishable=indistinct,
        iso_classes=len(forms) if dedup else None,
        ranking=ranking,
    )


@dataclass(frozen=True)
class CdgReport:
    k: int
    mu2: float
    condition1: bool
    condition2: bool
    condition3: bool
    corollary_holds: bool
    packed_k_rigid: bool
    failing_vertex: int | None
    failing_pair: tuple[int, int] | None

    @property
    def all_conditions(self) -> bool:
        return self.condition1 and self.condition2 and self.condition3

    @property
    def counterexample(self) -> bool:
        return (self.all_conditions or self.corollary_holds) and not self.packed_k_rigid

    def to_json(self) -> dict[str, Any]:
        doc = asdict(self)
        doc["counterexample"] = self.counterexample
        return doc


def _mu2(g: Graph, tol: float) -> float:
    return algebraic_connectivity(g, tol).mu2 if g.n >= 2 else 0.0


def check_cdg_conditions(g: Graph, k: int, tol: float = DEFAULT_TOL, max_n: int = CDG_MAX_N) -> CdgReport:
    """Evaluate the three algebraic-connectivity conditions (whole graph,
    every vertex deletion, every pair deletion) and the single-inequality
    corollary, then run the k-rigid packing for comparison."""
    if k < 1 or g.min_degree() < 6 * k:
        raise HypothesisViolation(f"need minimum degree >= 6k = {6 * k}, got {g.min_degree()}")
    if g.n > max_n:
        raise BudgetExceeded(f"pair deletions need O(n^2) eigensolves; n={g.n} exceeds {max_n}")
    d = g.min_degree()
    mu2 = _mu2(g, tol)
    c1 = mu2 > (6 * k - 1) / (d + 1)
    fail_v = None
    for u in range(g.n):
        h = g.delete_vertices([u])
        if not _mu2(h, tol) > (4 * k - 1) / (h.min_degree() + 1):
            fail_v = u
            break
    fail_p = None
    for v in range(g.n):
        for w in range(v + 1, g.n):
            h = g.delete_vertices([v, w])
            if not _mu2(h, tol) > (2 * k - 1) / (h.min_degree() + 1):
                fail_p = (v, w)
                break
        if fail_p is not None:
            break
    corollary = mu2 > 2 + (2 * k - 1) / (d - 1)
    cert = pack_rigid_and_trees(g, k, 0)
    return CdgReport(
        k=k,
        mu2=mu2,
        condition1=c1,
        condition2=fail_v is None,
        condition3=fail_p is None,
        corollary_holds=corollary,
        packed_k_rigid=cert.packed,
        failing_vertex=fail_v,
        failing_pair=fail_p,
    )


def _sample_exact_min_degree(n: int, delta: int, rng: np.random.Generator, cap: int) -> Graph:
    p = (delta + 1) / n
    iu, ju = np.triu_indices(n, 1)
    for attempt in range(cap):
        mask = rng.random(iu.size) < p
        deg = np.bincount(iu[mask], minlength=n) + np.bincount(ju[mask], minlength=n)
        dmin = int(deg.min())
        if dmin == delta:
            return Graph(n, zip(iu[mask].tolist(), ju[mask].tolist()))
        if dmin < delta and (attempt + 1) % 20 == 0:
            p = min(p + 0.01, 1.0)
    raise BudgetExceeded(f"no graph with minimum degree exactly {delta} after {cap} rejections")


def sample_graphs(p: ExtremalParams, trials: int, seed: int, cap: int = REJECTION_CAP) -> Iterator[Graph]:
    """Random graphs of order n with minimum degree exactly delta; trial i
    draws from its own stream seeded by (seed, i)."""
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        yield _sample_exact_min_degree(p.n, p.delta, rng, cap)


def sample_and_verify(
    p: ExtremalParams,
    trials: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    margin: float = DEFAULT_MARGIN,
    cap: int = REJECTION_CAP,
) -> list[VerificationRecord]:
    return [verify_main_theorem(g, p, tol, margin) for g in sample_graphs(p, trials, seed, cap)]


def summarize(records: list[VerificationRecord]) -> dict[str, Any]:
    counts = {v.value: 0 for v in Verdict}
    for r in records:
        counts[r.verdict.value] += 1
    return {"records": len(records), "verdicts": counts, "counterexamples": counts[Verdict.COUNTEREXAMPLE.value]}


def is_extremal(g: Graph, p: ExtremalParams) -> bool:
    return is_isomorphic(g, build_extremal(p))
