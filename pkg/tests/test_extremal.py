"""Layered instance generators, named graphs, lifts, and tightness families."""

import math
import random
from fractions import Fraction as F

import pytest

from spanorm.extremal import (
    LayeredInstance,
    build_from_lp,
    build_lcr,
    build_skewed,
    build_tightness,
    named_girth_graph,
    random_bipartite_lift,
)
from spanorm.graph_core import Graph, girth, girth_at_least, lp_norm
from spanorm.greedy import greedy_spanner, verify_stretch
from spanorm.lb_lp import (
    LcrParams,
    SKEW_LEFT,
    SKEW_RIGHT,
    build_model,
    derive_lcr,
    minimal_spanner_primal,
    solve,
)


class TestNamedGraphs:
    @pytest.mark.parametrize(
        "name,n,degree,girth_value",
        [
            ("petersen", 10, 3, 5),
            ("heawood", 14, 3, 6),
            ("mcgee", 24, 3, 7),
            ("robertson", 19, 4, 5),
            ("tutte_coxeter", 30, 3, 8),
            ("pg2_2", 14, 3, 6),
            ("pg2_3", 26, 4, 6),
            ("pg2_4", 42, 5, 6),
            ("pg2_5", 62, 6, 6),
        ],
    )
    def test_documented_triples(self, name, n, degree, girth_value):
        g = named_girth_graph(name)
        assert g.n == n
        assert set(g.degrees()) == {degree}
        assert girth(g) == girth_value

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            named_girth_graph("nosuch")

    def test_pg2_2_is_heawood_sized(self):
        assert named_girth_graph("pg2_2").n == named_girth_graph("heawood").n


class TestLifts:
    def test_girth_and_regularity(self):
        g = random_bipartite_lift(120, 4, 6, seed=3)
        assert set(g.degrees()) == {4}
        assert girth_at_least(g, 6)

    def test_deterministic(self):
        a = random_bipartite_lift(80, 3, 8, seed=17)
        b = random_bipartite_lift(80, 3, 8, seed=17)
        assert a.edges == b.edges


class TestBuildLcr:
    def test_111_p2_sizes(self):
        inst = build_lcr(LcrParams(1, 1, 1), 2.0, 16)
        assert inst.layer_sizes == (256, 16, 16, 256)

    def test_c0_form(self):
        inst = build_lcr(LcrParams(1, 0, 1), 2.0, 8)
        assert inst.layer_sizes == (8, 1, 8)
        # one central vertex joined to both sides: norm is Theta(side size)
        assert inst.spanner_norm(2.0) == pytest.approx(math.sqrt(2 * 8 + 16**2), rel=1e-12)

    def test_stretch_verified_exhaustively_small(self):
        for params, p, size in [
            (LcrParams(1, 1, 1), 2.0, 8),
            (LcrParams(2, 0, 2), 1.3, 8),
            (LcrParams(0, 1, 2), 10.0, 8),
            (LcrParams(2, 1, 2), 2.0, 4),
        ]:
            inst = build_lcr(params, p, size)
            assert verify_stretch(inst.host_graph(), inst.spanner(), inst.t)
            assert inst.verify()

    def test_virtual_counts_match_materialized(self):
        # same instance, degree multisets from rules vs from the real graph
        for params, p, size in [
            (LcrParams(1, 1, 1), 2.0, 12),
            (LcrParams(2, 1, 2), 2.0, 5),
            (LcrParams(0, 1, 2), 10.0, 9),
            (LcrParams(2, 0, 2), 1.3, 9),
        ]:
            inst = build_lcr(params, p, size)
            from collections import Counter

            assert inst.spanner_degree_counts() == Counter(inst.spanner().degrees())
            host = inst.host_graph()
            assert inst.host_degree_counts() == Counter(host.degrees())

    def test_equal_contribution_within_rounding(self):
        inst = build_lcr(LcrParams(2, 1, 2), 2.0, 32)
        p = 2.0
        sizes = inst.layer_sizes
        contribs = []
        for i, gap in enumerate(inst.gaps, start=1):
            a, b = sizes[i - 1], sizes[i]
            if gap.kind == "contract":
                contribs.append(b * (a / b) ** p)
            elif gap.kind == "expand":
                contribs.append(a * (b / a) ** p)
            else:
                contribs.append(a * gap.d**p)
        lo, hi = min(contribs), max(contribs)
        assert hi <= lo * 2**p * (1 + 1e-9)

    def test_sampled_check_matches_bfs_small(self):
        inst = build_lcr(LcrParams(1, 1, 1), 2.0, 6)
        spanner = inst.spanner()
        from spanorm.graph_core import shortest_paths

        base_t = inst.offsets[inst.t]
        for u in range(inst.layer_sizes[0]):
            dist = shortest_paths(spanner, u)
            for w in range(inst.layer_sizes[-1]):
                assert (dist[base_t + w] <= inst.t) == inst.spans_pair(u, w)

    def test_measured_exponents_close_at_scale(self):
        params = derive_lcr(2.0, 3)
        inst = build_lcr(params, 2.0, 64)
        m = inst.measured()
        assert abs(m["lambda_measured"] - inst.predicted["lambda_predicted"]) <= 0.1
        assert abs(m["ell_measured"] - inst.predicted["ell_predicted"]) <= 0.1

    def test_huge_instance_is_virtual(self):
        inst = build_lcr(LcrParams(0, 1, 2), 10.0, 512)
        assert inst.virtual
        assert inst.n > 10**7
        with pytest.raises(ValueError):
            inst.spanner()
        assert inst.verify(samples=500)


class TestBuildSkewed:
    def test_zero_skew_identical(self):
        plain = build_lcr(LcrParams(1, 1, 1), 2.0, 16)
        skew = build_skewed(LcrParams(1, 1, 1, skew=SKEW_RIGHT), 2.0, 16, 0.0)
        assert plain.layer_sizes == skew.layer_sizes
        assert plain.spanner().edges == skew.spanner().edges

    def test_full_skew_reaches_adjacent_shape(self):
        # d~ = center**(1/(C+1)) reproduces (L, C+1, R-1) layer for layer
        full = build_skewed(LcrParams(1, 1, 1, skew=SKEW_RIGHT), 2.0, 64, 0.5)
        target = build_lcr(LcrParams(1, 2, 0), 2.0, 64)
        assert full.layer_sizes == target.layer_sizes

    def test_intermediate_lambda_between_endpoints(self):
        lo = build_skewed(LcrParams(1, 1, 1, skew=SKEW_RIGHT), 2.0, 64, 0.0)
        mid = build_skewed(LcrParams(1, 1, 1, skew=SKEW_RIGHT), 2.0, 64, 0.25)
        hi = build_skewed(LcrParams(1, 1, 1, skew=SKEW_RIGHT), 2.0, 64, 0.5)
        lam = lambda inst: inst.measured()["lambda_measured"]
        assert lam(hi) < lam(mid) < lam(lo)

    def test_skew_exponent_out_of_range(self):
        with pytest.raises(ValueError):
            build_skewed(LcrParams(1, 1, 1, skew=SKEW_RIGHT), 2.0, 64, 0.9)

    def test_left_skew_verifies(self):
        inst = build_skewed(LcrParams(2, 1, 1, skew=SKEW_LEFT), 2.0, 16, 0.3)
        assert inst.verify()
        assert verify_stretch(inst.host_graph(), inst.spanner(), inst.t)

    def test_right_skew_verifies(self):
        inst = build_skewed(LcrParams(0, 1, 2, skew=SKEW_RIGHT), 5.0, 25, 0.4)
        assert inst.verify()
        assert verify_stretch(inst.host_graph(), inst.spanner(), inst.t)


class TestBuildFromLp:
    def _optimum(self):
        primal = minimal_spanner_primal(LcrParams(1, 1, 1), F(2), F(1))
        return {k: float(v) for k, v in primal.items()}

    def test_trivial_solution(self):
        sol = {"nu0": 0.0, "nu1": 0.0, "delta1": 0.0, "Delta": 0.0, "ell": 0.0}
        inst = build_from_lp(sol, 64, seed=1, t=1)
        assert inst.layer_sizes == (1, 1)
        assert inst.verify()

    def test_optimum_instance(self):
        inst = build_from_lp(self._optimum(), 1024, seed=7, t=3, p=2.0)
        assert inst.layer_sizes == (102, 10, 10, 102)
        assert inst.verify()
        n = 1024
        # host norm carries the density within the w.h.p. slack; spanner norm
        # stays within a log factor of n**ell
        assert inst.host_norm(2.0) >= n ** (0.9 * 1.0)
        assert inst.spanner_norm(2.0) <= 8 * math.log(n) * n**0.5

    def test_seeded_determinism(self):
        a = build_from_lp(self._optimum(), 1024, seed=7, t=3)
        b = build_from_lp(self._optimum(), 1024, seed=7, t=3)
        assert a.spanner().edges == b.spanner().edges
        c = build_from_lp(self._optimum(), 1024, seed=8, t=3)
        assert a.layer_sizes == c.layer_sizes
        assert a.spanner().edges != c.spanner().edges
        assert c.verify()


class TestTightness:
    def test_case_i_star_plus_path(self):
        g = build_tightness(2, 3.0, 100, 50)
        assert g.n == 100 and g.m == 99
        h = greedy_spanner(g, 3)
        assert h.kept_edges == g.edges  # trees are their own spanners
        assert abs(lp_norm(g, 3.0) / 50 - 1) < 1.0  # within factor 2

    def test_case_ii_clique_plus_star(self):
        g = build_tightness(2, 3.0, 100, 400)
        assert g.n == 89 + 100 + 1
        norm = lp_norm(g, 3.0)
        assert 200 <= norm <= 800
        h = greedy_spanner(g, 3)
        star_edges = [e for e in g.edges if e[0] == 89]
        assert set(star_edges) <= set(h.kept_edges)

    def test_case_iii_high_girth_subgraph(self):
        base = named_girth_graph("pg2_3")
        lam = lp_norm(base, 1.0)
        g = build_tightness(2, 1.0, 26, lam)
        assert set(g.edges) == set(base.edges)
        h = greedy_spanner(g, 3)
        assert set(h.kept_edges) == set(g.edges)

    def test_case_iii_pruned(self):
        base = named_girth_graph("pg2_4")
        lam = 0.6 * lp_norm(base, 1.3)
        g = build_tightness(2, 1.3, 42, lam)
        assert lam / 2 <= lp_norm(g, 1.3) <= lam * (1 + 1e-9)
        assert girth_at_least(g, 5)

    def test_case_iv_clique_plus_girth_graph(self):
        g = build_tightness(2, 1.2, 60, 700)
        norm = lp_norm(g, 1.2)
        assert 350 <= norm <= 1400

    def test_k3_supply(self):
        g = build_tightness(3, 1.0, 30, lp_norm(named_girth_graph("tutte_coxeter"), 1.0))
        h = greedy_spanner(g, 5)
        assert set(h.kept_edges) == set(g.edges)

    def test_unknown_k(self):
        with pytest.raises(ValueError):
            build_tightness(4, 1.0, 100, 100)


def test_fuzz_layered_instances_verify():
    # random derived shapes at random sizes: construction must verify and
    # measure close to its own ideal prediction
    import random as _random

    rng = _random.Random(99)
    for _ in range(25):
        t = rng.randint(2, 6)
        p = rng.choice([1.3, 1.8, 2.0, 2.5, 3.0, 5.0, 10.0])
        params = derive_lcr(p, t)
        center = rng.choice([4, 6, 9])
        inst = build_lcr(params, p, center)
        if inst.n > 300_000:
            continue
        small = inst.layer_sizes[0] * inst.layer_sizes[-1] <= 20_000
        assert inst.spans_pair(0, inst.layer_sizes[-1] - 1)
        if small and not inst.virtual:
            assert inst.verify(samples=300, seed=rng.randrange(1 << 20)), (p, t, center)
        m = inst.measured()
        assert abs(m["ell_measured"] - inst.predicted["ell_predicted"]) <= 0.15
        assert abs(m["lambda_measured"] - inst.predicted["lambda_predicted"]) <= 0.15


def test_fuzz_skewed_instances_verify():
    import random as _random

    rng = _random.Random(123)
    for _ in range(15):
        C = rng.randint(1, 2)
        L = rng.randint(0, 2)
        R = rng.randint(1, 2)
        skew = SKEW_RIGHT if (L == 0 or rng.random() < 0.5) else SKEW_LEFT
        if skew == SKEW_LEFT and L == 0:
            L = 1
        params = LcrParams(L, C, R, skew=skew)
        exponent = rng.uniform(0.0, 1.0 / (C + 1))
        inst = build_skewed(params, 2.0, rng.choice([9, 16]), exponent)
        if inst.n > 300_000 or inst.virtual:
            continue
        if inst.layer_sizes[0] * inst.layer_sizes[-1] <= 20_000:
            assert inst.verify(), (params, exponent)
        else:
            assert inst.verify(samples=300), (params, exponent)
