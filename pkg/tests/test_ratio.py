import random
from fractions import Fraction
from itertools import product

import pytest

from chromacert.coloring import ListAssignment, count_list_colorings
from chromacert.graphs import Graph, cycle_graph, path_graph, star_graph
from chromacert.ratio import (
    NotTriangleFreeError,
    ZeroDenominatorError,
    color_count_ratio,
    conditional_expectation_check,
    expected_blocked,
    few_colors_event_check,
    monte_carlo_ratio,
    pessimistic_bound_interval,
    pessimistic_lower_bound,
    run_ratio_experiment,
    RatioExperiment,
    self_reducibility_check,
)

from conftest import random_graph, random_lists


def test_ratio_c5_is_five_fourths():
    # numerator 30 by the cycle chromatic polynomial; denominator is the
    # path P4 with 3-lists: 3*2*2*2 = 24
    c5 = cycle_graph(5)
    L = ListAssignment.uniform(c5, [1, 2, 3])
    assert color_count_ratio(c5, L, 0) == Fraction(5, 4)


def test_ratio_trivial_examples():
    single = Graph(1, [])
    assert color_count_ratio(single, ListAssignment({0: {1, 2}}), 0) == 2
    edge = Graph(2, [(0, 1)])
    L = ListAssignment({0: {1, 2}, 1: {1, 2}})
    assert color_count_ratio(edge, L, 0) == 1


def test_ratio_zero_denominator():
    edge = Graph(2, [(0, 1)])
    L = ListAssignment({0: {1}, 1: set()})
    with pytest.raises(ZeroDenominatorError):
        color_count_ratio(edge, L, 0)


def test_self_reducibility_examples():
    c5 = cycle_graph(5)
    rep = self_reducibility_check(c5, ListAssignment.uniform(c5, [1, 2, 3]), 0)
    assert rep.passed and rep.count_full == 30 and rep.residual_sum == 30
    # empty list at v: both sides zero
    edge = Graph(2, [(0, 1)])
    rep = self_reducibility_check(edge, ListAssignment({0: set(), 1: {1}}), 0)
    assert rep.passed and rep.count_full == 0
    s3 = star_graph(3)
    rep = self_reducibility_check(s3, ListAssignment.uniform(s3, [1, 2]), 0)
    assert rep.passed


def test_self_reducibility_random(connected_upto_6):
    rng = random.Random(31)
    for g in rng.sample(list(connected_upto_6), 40):
        L = random_lists(rng, g.n)
        v = rng.randrange(g.n)
        assert self_reducibility_check(g, L, v).passed


def test_few_colors_path_example():
    # path v-u-w with L(u)=L(w)={1,2}: both colourings of u-w leave u one
    # colour, so F has both; the bound is t * |C(edge minus u)| = 1*2
    path = path_graph(3)  # 0-1-2, take v=0, u=1, w=2
    L = ListAssignment({0: {5}, 1: {1, 2}, 2: {1, 2}})
    rep = few_colors_event_check(path, L, 0, 1, 1)
    assert (rep.f_size, rep.bound, rep.passed) == (2, 2, True)


def test_few_colors_isolated_neighbour():
    # u isolated in G - v keeps its full list
    edge = Graph(2, [(0, 1)])
    L = ListAssignment({0: {1, 2}, 1: {1, 2, 3}})
    rep = few_colors_event_check(edge, L, 0, 1, 1)
    assert rep.f_size == 0 and rep.passed


def test_few_colors_c5():
    c5 = cycle_graph(5)
    L = ListAssignment.uniform(c5, [1, 2, 3])
    rep = few_colors_event_check(c5, L, 0, 1, 1)
    assert rep.f_size == 0 and rep.passed


def test_few_colors_requires_neighbour():
    with pytest.raises(ValueError):
        few_colors_event_check(path_graph(3), ListAssignment.uniform(path_graph(3), [1]), 0, 2, 1)


def test_few_colors_bound_random(connected_upto_6):
    # the bound |F| <= t|C(G-v-u)| is unconditional
    rng = random.Random(32)
    for g in rng.sample([g for g in connected_upto_6 if g.num_edges()], 60):
        L = random_lists(rng, g.n, min_size=1, max_size=3)
        edges = g.edges
        v, u = edges[rng.randrange(len(edges))]
        for t in (1, 2):
            assert few_colors_event_check(g, L, v, u, t).passed


def test_expected_blocked_c5():
    c5 = cycle_graph(5)
    L = ListAssignment.uniform(c5, [1, 2, 3])
    rep = expected_blocked(c5, L, 0, 1, Fraction(5, 4))
    assert rep.expectation == 0
    assert rep.bound == Fraction(2) / Fraction(5, 4)
    assert rep.status == "pass"


def test_expected_blocked_single_edge():
    edge = Graph(2, [(0, 1)])
    L = ListAssignment({0: {1, 2}, 1: {1, 2, 3}})
    rep = expected_blocked(edge, L, 0, 2, 1)
    assert rep.expectation == 0 and rep.bound == 2 and rep.status == "pass"


def test_expected_blocked_path_equality():
    path = path_graph(3)
    L = ListAssignment({0: {5}, 1: {1, 2}, 2: {1, 2}})
    rep = expected_blocked(path, L, 0, 1, 1)
    assert rep.expectation == 1 and rep.bound == 1 and rep.status == "pass"


def test_expected_blocked_hypothesis_gate():
    # with a huge ell the induction hypothesis fails and the verdict says so
    path = path_graph(3)
    L = ListAssignment({0: {5}, 1: {1, 2}, 2: {1, 2}})
    rep = expected_blocked(path, L, 0, 1, Fraction(100))
    assert rep.status == "hypothesis-not-met"


# -- the pessimistic estimator ------------------------------------------------


def test_pessimistic_examples():
    # 3 * (1/2)^(4/3) = 1.19055...
    lo = pessimistic_lower_bound(3, 0, 2, 1)
    assert abs(float(lo) - 3 * 0.5 ** (4 / 3)) < 1e-6
    iv = pessimistic_bound_interval(3, 0, 2, 1)
    assert iv.upper - iv.lower < Fraction(1, 10**9)
    assert pessimistic_lower_bound(5, 0, 0, 1) == 5
    # k == blocked: clamp to zero by convention
    assert pessimistic_lower_bound(4, 4, 10, 1) == 0
    assert pessimistic_lower_bound(4, 6, 10, 1) == 0


def test_pessimistic_rational_blocked_matches_property_p_shape():
    # with blocked = t*delta/ell this is the quadruplet inequality's left side
    from chromacert.property_p import property_p_single
    from chromacert.coloring import KSpec

    delta, ell, t = 524, 8, 1
    k = KSpec.half()(delta)
    iv = pessimistic_bound_interval(k, Fraction(t * delta, ell), delta, t, prec=128)
    assert iv.surely_ge(ell) == (
        property_p_single(delta, ell, t, KSpec.half()).verdict == "certified-true"
    )
    assert abs(float(iv.lower) - 8.07435) < 1e-3  # cross-checked numerically


def test_pessimistic_monotonicity_grid():
    # nondecreasing in k, nonincreasing in blocked and degree, on the
    # regime deg >= k > blocked where the estimator is used
    vals = {}
    for k in range(3, 8):
        for blocked in range(0, 3):
            for deg in range(k, k + 6):
                for t in (1, 2):
                    vals[(k, blocked, deg, t)] = pessimistic_lower_bound(k, blocked, deg, t)
    for (k, b, d, t), v in vals.items():
        if (k + 1, b, d, t) in vals:
            assert vals[(k + 1, b, d, t)] >= v - Fraction(1, 10**20)
        if (k, b + 1, d, t) in vals:
            assert vals[(k, b + 1, d, t)] <= v + Fraction(1, 10**20)
        if (k, b, d + 1, t) in vals:
            assert vals[(k, b, d + 1, t)] <= v + Fraction(1, 10**20)


# -- conditional expectations ---------------------------------------------------


def brute_conditional_expectation(g, L, v, c0):
    """Oracle: enumerate the independent neighbour choices directly."""
    from chromacert.coloring import residual_list

    nbrs = g.neighbors(v)
    residuals = [sorted(residual_list(g, L, c0, u)) for u in nbrs]
    if any(not r for r in residuals):
        return None
    total = Fraction(0)
    count = 0
    for combo in product(*residuals):
        total += len(L[v] - set(combo))
        count += 1
    return total / count


def test_conditional_expectation_c5_example():
    c5 = cycle_graph(5)
    L = ListAssignment.uniform(c5, [1, 2, 3])
    rep = conditional_expectation_check(c5, L, 0, 1)
    assert rep.identity_holds and rep.ratio == Fraction(5, 4)
    assert rep.all_bounds_hold
    for row in rep.rows:
        assert row.expected_available == Fraction(5, 4)
        assert row.blocked_union == frozenset()
    # 4 equally likely neighbour pairs: available sizes 1,1,1,2
    assert rep.rows[0].weight == 4


def test_conditional_expectation_star_equality():
    s3 = star_graph(3)
    L = ListAssignment.uniform(s3, [1, 2])
    rep = conditional_expectation_check(s3, L, 0, 1)
    assert rep.ratio == Fraction(1, 4)
    assert len(rep.rows) == 1
    row = rep.rows[0]
    assert row.expected_available == Fraction(1, 4)
    # bound is 2*(1/2)^3 = 1/4: equality
    assert row.bound.lower <= Fraction(1, 4) <= row.bound.upper
    assert rep.all_bounds_hold


def test_conditional_expectation_degree_zero():
    g = Graph(2, [])
    L = ListAssignment({0: {1, 2, 3}, 1: {1}})
    rep = conditional_expectation_check(g, L, 0, 1)
    assert rep.ratio == 3 and rep.identity_holds and rep.all_bounds_hold


def test_conditional_expectation_rejects_triangles():
    from chromacert.graphs import complete_graph

    g = complete_graph(3)
    with pytest.raises(NotTriangleFreeError):
        conditional_expectation_check(g, ListAssignment.uniform(g, [1, 2, 3]), 0, 1)


def test_conditional_expectation_closed_form_matches_bruteforce():
    rng = random.Random(33)
    from chromacert.graphs import is_triangle_free

    done = 0
    while done < 25:
        g = random_graph(rng, rng.randrange(3, 6), 0.45)
        if not is_triangle_free(g):
            continue
        L = random_lists(rng, g.n, min_size=2, max_size=3)
        v = rng.randrange(g.n)
        rep = conditional_expectation_check(g, L, v, 1)
        from chromacert.coloring import enumerate_list_colorings

        g0 = [w for w in range(g.n) if w != v and w not in g.neighbors(v)]
        idx = 0
        for c0 in enumerate_list_colorings(g, L, restrict_to=g0):
            oracle = brute_conditional_expectation(g, L, v, c0)
            row = rep.rows[idx]
            if oracle is None:
                assert row.weight == 0
            else:
                assert row.expected_available == oracle
            idx += 1
        done += 1


def test_jensen_direction():
    # convexity gives: average of clamped bounds >= clamped bound at the
    # average blocked count
    rng = random.Random(34)
    from chromacert.graphs import is_triangle_free

    done = 0
    while done < 15:
        g = random_graph(rng, rng.randrange(3, 6), 0.5)
        if not is_triangle_free(g):
            continue
        L = random_lists(rng, g.n, min_size=1, max_size=3)
        v = max(range(g.n), key=g.degree)
        try:
            rep = conditional_expectation_check(g, L, v, 1)
        except ZeroDenominatorError:
            continue
        live = [r for r in rep.rows if r.weight > 0]
        if not live:
            continue
        k_v = len(L[v])
        avg_bound = sum(r.bound.lower for r in live) / len(live)
        avg_blocked = Fraction(sum(len(r.blocked_union) for r in live), len(live))
        at_avg = pessimistic_bound_interval(k_v, avg_blocked, g.degree(v), 1)
        assert avg_bound >= at_avg.lower - Fraction(1, 10**12)
        done += 1


# -- Monte Carlo and the assembled report --------------------------------------


def test_monte_carlo_close_to_exact():
    c5 = cycle_graph(5)
    L = ListAssignment.uniform(c5, [1, 2, 3])
    rep = monte_carlo_ratio(c5, L, 0, 1, samples=10_000, seed=5)
    assert rep.exact_available == Fraction(5, 4)
    assert abs(rep.estimate_available - Fraction(5, 4)) < Fraction(5, 100)
    for u in (1, 4):
        assert rep.neighbour_low_exact[u] == 0
        assert rep.neighbour_low_estimates[u] == 0


def test_monte_carlo_degenerate_vertex():
    g = Graph(1, [])
    L = ListAssignment({0: {1, 2, 3}})
    rep = monte_carlo_ratio(g, L, 0, 1, samples=50, seed=1)
    assert rep.estimate_available == 3 and rep.exact_available == 3


def test_run_ratio_experiment_report():
    c5 = cycle_graph(5)
    L = ListAssignment.uniform(c5, [1, 2, 3])
    exp = RatioExperiment(c5, L, 0, 1, Fraction(5, 4))
    rep = run_ratio_experiment(exp)
    assert rep.ratio == Fraction(5, 4) == rep.expected_available
    assert rep.identity_holds
    assert rep.expected_blocked == 0
    d = rep.to_json_dict()
    assert d["ratio"] == {"num": "5", "den": "4"}
    assert set(d["neighbour_low_probabilities"]) == {"1", "4"}
