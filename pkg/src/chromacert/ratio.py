"""Desk-scale verification of the counting-ratio ingredients.

Everything here is exact: probabilities and expectations are Fractions
obtained by full enumeration of colouring spaces, and the closed-form
estimator is bracketed with directed-rounding intervals so that inequality
checks cannot pass (or fail) through rounding.

The quantities, for a graph G with list assignment L and a distinguished
vertex v drawn uniformly over colourings c of G - v:

* the ratio |C_L(G)| / |C_L(G-v)| and its identity with E[|L_c(v)|];
* the event that a neighbour u retains at most t usable colours, and the
  bound |F| <= t * |C_L(G-v-u)|;
* the expected number of such blocked neighbours against t*deg(v)/ell;
* conditioned on a colouring of G - v - N(v), the exact conditional
  expectation of the number of colours of v that survive, against the
  closed-form pessimistic estimator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .coloring import (
    ColoringSampler,
    ListAssignment,
    count_list_colorings,
    enumerate_list_colorings,
    residual_list,
)
from .graphs import Graph, is_triangle_free
from .intervals import CertifiedInterval


class ZeroDenominatorError(ZeroDivisionError):
    """G - v admits no colouring, so the ratio is undefined."""


class NotTriangleFreeError(ValueError):
    """The conditional-independence computation requires triangle-freeness."""


def _residual_size(g: Graph, L: ListAssignment, c: dict, v: int) -> int:
    used = {c[u] for u in g.neighbors(v) if u in c}
    return len(L[v] - used)


def _count_excluding(g: Graph, L: ListAssignment, drop: set[int]) -> int:
    keep = [v for v in range(g.n) if v not in drop]
    total = 0
    # reuse the component counter through an induced-subgraph view
    from .graphs import induced_subgraph

    h, remap = induced_subgraph(g, keep)
    sub = ListAssignment({remap[v]: L[v] for v in keep})
    return count_list_colorings(h, sub)


def color_count_ratio(g: Graph, L: ListAssignment, v: int) -> Fraction:
    """Exact |C_L(G)| / |C_L(G-v)|."""
    L.require_cover(g)
    denom = _count_excluding(g, L, {v})
    if denom == 0:
        raise ZeroDenominatorError(f"G - {v} admits no colouring")
    return Fraction(count_list_colorings(g, L), denom)


@dataclass
class SelfReducibilityReport:
    passed: bool
    count_full: int
    residual_sum: int


def self_reducibility_check(g: Graph, L: ListAssignment, v: int) -> SelfReducibilityReport:
    """Verify |C_L(G)| = sum over c in C_L(G-v) of |L_c(v)| by enumeration."""
    L.require_cover(g)
    others = [u for u in range(g.n) if u != v]
    total = 0
    for c in enumerate_list_colorings(g, L, restrict_to=others):
        total += _residual_size(g, L, c, v)
    full = count_list_colorings(g, L)
    return SelfReducibilityReport(passed=(full == total), count_full=full, residual_sum=total)


@dataclass
class FewColorsReport:
    f_size: int
    bound: int
    passed: bool


def few_colors_event_check(g: Graph, L: ListAssignment, v: int, u: int, t: int) -> FewColorsReport:
    """Enumerate F = {c in C_L(G-v) : |L_c(u)| <= t} and check
    |F| <= t * |C_L(G-v-u)|."""
    L.require_cover(g)
    if not g.has_edge(u, v):
        raise ValueError(f"{u} is not a neighbour of {v}")
    others = [w for w in range(g.n) if w != v]
    f_size = 0
    for c in enumerate_list_colorings(g, L, restrict_to=others):
        if _residual_size(g, L, c, u) <= t:
            f_size += 1
    bound = t * _count_excluding(g, L, {v, u})
    return FewColorsReport(f_size=f_size, bound=bound, passed=(f_size <= bound))


@dataclass
class ExpectedBlockedReport:
    expectation: Fraction
    bound: Fraction
    status: str  # "pass" | "fail" | "hypothesis-not-met"


def expected_blocked(g: Graph, L: ListAssignment, v: int, t: int, ell: Fraction) -> ExpectedBlockedReport:
    """E[t_v] where t_v counts neighbours u of v with |L_c(u)| <= t, against
    t*deg(v)/ell.

    The bound presumes the counting hypothesis on G - v (every further
    vertex-deleted ratio is >= ell); the hypothesis is verified by direct
    computation and the report says "hypothesis-not-met" instead of
    pass/fail when it does not hold.
    """
    L.require_cover(g)
    ell = Fraction(ell)
    denom = _count_excluding(g, L, {v})
    if denom == 0:
        raise ZeroDenominatorError(f"G - {v} admits no colouring")
    others = [w for w in range(g.n) if w != v]
    nbrs = g.neighbors(v)
    acc = 0
    for c in enumerate_list_colorings(g, L, restrict_to=others):
        acc += sum(1 for u in nbrs if _residual_size(g, L, c, u) <= t)
    expectation = Fraction(acc, denom)
    bound = Fraction(t * g.degree(v)) / ell

    hypothesis = True
    for u in others:
        sub = _count_excluding(g, L, {v, u})
        if Fraction(denom) < ell * sub:
            hypothesis = False
            break
    if not hypothesis:
        status = "hypothesis-not-met"
    else:
        status = "pass" if expectation <= bound else "fail"
    return ExpectedBlockedReport(expectation=expectation, bound=bound, status=status)


# ---------------------------------------------------------------------------
# the pessimistic estimator
# ---------------------------------------------------------------------------


def pessimistic_bound_interval(
    k_v: int, blocked, deg_v: int, t: int, prec: int = 96
) -> CertifiedInterval:
    """Certified enclosure of (k-B) * (t/(t+1)) ** ((t+1)(deg-B)/(k-B)),
    clamped to 0 when k <= B.

    ``blocked`` may be rational; with blocked = t*deg/ell this is exactly the
    left-hand side of the arithmetic Property (P) inequality.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    blocked = Fraction(blocked)
    if blocked < 0:
        raise ValueError("blocked must be non-negative")
    z = Fraction(k_v) - blocked
    if z <= 0:
        # the convex extension of the estimator is 0 here
        return CertifiedInterval.from_int(0, prec)
    exponent = Fraction(t + 1) * (Fraction(deg_v) - blocked) / z
    base = CertifiedInterval.from_fraction(Fraction(t, t + 1), prec)
    power = base.pow_fraction(exponent)
    return power.mul(CertifiedInterval.from_fraction(z, prec))


def pessimistic_lower_bound(k_v: int, blocked, deg_v: int, t: int, prec: int = 96) -> Fraction:
    """Directed-rounding lower endpoint of the estimator enclosure."""
    return pessimistic_bound_interval(k_v, blocked, deg_v, t, prec).lower


@dataclass
class ConditionalRow:
    c0: dict
    weight: int  # product of residual-list sizes; 0 when no extension exists
    expected_available: Optional[Fraction]
    blocked_union: frozenset
    bound: Optional[CertifiedInterval]
    passed: Optional[bool]


@dataclass
class ConditionalExpectationReport:
    rows: list[ConditionalRow]
    expected_available: Fraction
    ratio: Fraction
    identity_holds: bool
    all_bounds_hold: bool
    skipped_null: int


def conditional_expectation_check(
    g: Graph, L: ListAssignment, v: int, t: int = 1
) -> ConditionalExpectationReport:
    """For every c0 colouring G0 = G - v - N(v): exact E[X | c0] against the
    clamped pessimistic estimator, plus the identity E[X] = ratio.

    Triangle-freeness makes the neighbours of v pairwise non-adjacent, so
    conditioned on c0 their colours are independent and uniform on their
    residual lists; E[X | c0] then has the exact closed form
    sum over j in L(v) of prod over u with j in L_c0(u) of (1 - 1/|L_c0(u)|).
    Rows whose weight is zero (some residual list empty) carry no conditional
    law and are skipped in the bound check.
    """
    L.require_cover(g)
    if not is_triangle_free(g):
        raise NotTriangleFreeError("neighbourhood of v must be independent")
    nbrs = g.neighbors(v)
    k_v = len(L[v])
    deg_v = g.degree(v)
    g0_vertices = [w for w in range(g.n) if w != v and w not in nbrs]

    rows: list[ConditionalRow] = []
    num = Fraction(0)
    den = 0
    skipped = 0
    all_ok = True
    for c0 in enumerate_list_colorings(g, L, restrict_to=g0_vertices):
        residuals = {u: residual_list(g, L, c0, u) for u in nbrs}
        weight = 1
        for r in residuals.values():
            weight *= len(r)
        if weight == 0:
            skipped += 1
            rows.append(
                ConditionalRow(c0=c0, weight=0, expected_available=None,
                               blocked_union=frozenset(), bound=None, passed=None)
            )
            continue
        ex = Fraction(0)
        for j in L[v]:
            p = Fraction(1)
            for u in nbrs:
                if j in residuals[u]:
                    p *= Fraction(len(residuals[u]) - 1, len(residuals[u]))
            ex += p
        blocked = frozenset().union(
            *(residuals[u] for u in nbrs if len(residuals[u]) <= t)
        ) if nbrs else frozenset()
        bound = pessimistic_bound_interval(k_v, len(blocked), deg_v, t)
        # sound direction: compare against the upper end of the enclosure
        ok = ex >= bound.upper
        all_ok = all_ok and ok
        rows.append(
            ConditionalRow(c0=c0, weight=weight, expected_available=ex,
                           blocked_union=blocked, bound=bound, passed=ok)
        )
        num += ex * weight
        den += weight

    if den == 0:
        raise ZeroDenominatorError(f"G - {v} admits no colouring")
    expected = num / den
    ratio = color_count_ratio(g, L, v)
    return ConditionalExpectationReport(
        rows=rows,
        expected_available=expected,
        ratio=ratio,
        identity_holds=(expected == ratio),
        all_bounds_hold=all_ok,
        skipped_null=skipped,
    )


# ---------------------------------------------------------------------------
# Monte Carlo cross-check and the assembled report
# ---------------------------------------------------------------------------


@dataclass
class MonteCarloReport:
    samples: int
    estimate_available: Fraction
    exact_available: Optional[Fraction]
    neighbour_low_estimates: dict
    neighbour_low_exact: Optional[dict]


def monte_carlo_ratio(
    g: Graph, L: ListAssignment, v: int, t: int, samples: int, seed: int
) -> MonteCarloReport:
    """Estimate E[|L_c(v)|] and each P(|L_c(u)| <= t) by exact uniform
    sampling of C_L(G-v); exact values are attached when enumeration is
    feasible."""
    L.require_cover(g)
    from .graphs import induced_subgraph

    keep = [w for w in range(g.n) if w != v]
    h, remap = induced_subgraph(g, keep)
    sub = ListAssignment({remap[w]: L[w] for w in keep})
    sampler = ColoringSampler(h, sub)
    inv = {i: w for w, i in remap.items()}
    rng = random.Random(seed)
    nbrs = g.neighbors(v)
    acc = 0
    low = {u: 0 for u in nbrs}
    for _ in range(samples):
        cs = sampler.sample(rng)
        c = {inv[i]: col for i, col in cs.items()}
        acc += _residual_size(g, L, c, v)
        for u in nbrs:
            if _residual_size(g, L, c, u) <= t:
                low[u] += 1
    estimate = Fraction(acc, samples)
    low_est = {u: Fraction(low[u], samples) for u in nbrs}

    exact = None
    low_exact = None
    denom = sampler.total
    acc = 0
    lowx = {u: 0 for u in nbrs}
    for cs in enumerate_list_colorings(h, sub):
        c = {inv[i]: col for i, col in cs.items()}
        acc += _residual_size(g, L, c, v)
        for u in nbrs:
            if _residual_size(g, L, c, u) <= t:
                lowx[u] += 1
    exact = Fraction(acc, denom)
    low_exact = {u: Fraction(lowx[u], denom) for u in nbrs}
    return MonteCarloReport(
        samples=samples,
        estimate_available=estimate,
        exact_available=exact,
        neighbour_low_estimates=low_est,
        neighbour_low_exact=low_exact,
    )


@dataclass
class RatioExperiment:
    g: Graph
    L: ListAssignment
    v: int
    t: int
    ell: Fraction

    def __post_init__(self):
        if not (0 <= self.v < self.g.n):
            raise ValueError("distinguished vertex outside the graph")
        if self.t < 1:
            raise ValueError("t must be >= 1")
        self.ell = Fraction(self.ell)


@dataclass
class RatioReport:
    ratio: Fraction
    expected_available: Fraction
    neighbour_low_probabilities: dict
    expected_blocked: Fraction
    estimator_value: Fraction
    identity_holds: bool = field(default=True)

    def to_json_dict(self) -> dict:
        def frac(x: Fraction) -> dict:
            return {"num": str(x.numerator), "den": str(x.denominator)}

        return {
            "ratio": frac(self.ratio),
            "expected_available": frac(self.expected_available),
            "neighbour_low_probabilities": {
                str(u): frac(p) for u, p in sorted(self.neighbour_low_probabilities.items())
            },
            "expected_blocked": frac(self.expected_blocked),
            "estimator_value": frac(self.estimator_value),
            "identity_holds": self.identity_holds,
        }


def run_ratio_experiment(exp: RatioExperiment) -> RatioReport:
    """Assemble the exact report for one (G, L, v, t, ell) instance."""
    g, L, v, t = exp.g, exp.L, exp.v, exp.t
    L.require_cover(g)
    denom = _count_excluding(g, L, {v})
    if denom == 0:
        raise ZeroDenominatorError(f"G - {v} admits no colouring")
    others = [w for w in range(g.n) if w != v]
    nbrs = g.neighbors(v)
    avail_acc = 0
    low = {u: 0 for u in nbrs}
    blocked_acc = 0
    for c in enumerate_list_colorings(g, L, restrict_to=others):
        avail_acc += _residual_size(g, L, c, v)
        cnt = 0
        for u in nbrs:
            if _residual_size(g, L, c, u) <= t:
                low[u] += 1
                cnt += 1
        blocked_acc += cnt
    expected_available = Fraction(avail_acc, denom)
    ratio = Fraction(count_list_colorings(g, L), denom)
    estimator = pessimistic_lower_bound(
        len(L[v]), Fraction(t * g.degree(v)) / exp.ell, g.degree(v), t
    )
    return RatioReport(
        ratio=ratio,
        expected_available=expected_available,
        neighbour_low_probabilities={u: Fraction(low[u], denom) for u in nbrs},
        expected_blocked=Fraction(blocked_acc, denom),
        estimator_value=estimator,
        identity_holds=(ratio == expected_available),
    )
