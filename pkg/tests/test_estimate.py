import math

import numpy as np
import pytest
from scipy.stats import binom

import oracles
from uppertail.bounds import exact_mean
from uppertail.estimate import (
    clean_config_point_lower,
    conditioned_tail,
    edge_count_histogram,
    enumerate_clean_configs,
    exact_point_mass,
    exact_tail,
    mc_tail,
    planted_tail,
    wilson_interval,
)
from uppertail.families import FamilySpec, Witness, build, build_ap, build_schur, interval_witness
from uppertail.hypergraph import CapacityError, Hypergraph, VertexSet

AP4 = build_ap(4, 3)


class TestWilson:
    def test_extremes_clamped(self):
        lo, hi = wilson_interval(0, 100)
        assert lo == 0.0 and 0.0 < hi < 0.1
        lo, hi = wilson_interval(100, 100)
        assert 0.9 < lo < 1.0 and hi == 1.0

    def test_contains_point_estimate(self):
        for hits, total in ((1, 10), (37, 200), (999, 1000)):
            lo, hi = wilson_interval(hits, total)
            assert lo <= hits / total <= hi

    def test_narrows_with_samples(self):
        w1 = wilson_interval(50, 100)
        w2 = wilson_interval(5000, 10000)
        assert (w2[1] - w2[0]) < (w1[1] - w1[0])

    def test_validation(self):
        with pytest.raises(ValueError):
            wilson_interval(1, 0)
        with pytest.raises(ValueError):
            wilson_interval(5, 4)


class TestHistogram:
    def test_matches_oracle(self):
        for h, n in ((build_ap(8, 3), 8), (build_schur(8), 8)):
            hist = edge_count_histogram(h)
            edges = [tuple(e) for e in h.edges]
            want = oracles.size_value_histogram(edges, n)
            for j in range(n + 1):
                for x in range(h.num_edges + 1):
                    assert hist[j, x] == want.get((j, x), 0)

    def test_row_sums_binomial(self):
        h = build_ap(9, 3)
        hist = edge_count_histogram(h)
        for j in range(10):
            assert hist[j].sum() == math.comb(9, j)

    def test_workers_identical(self):
        from uppertail import estimate

        h = build_schur(11)
        a = edge_count_histogram(h).copy()
        estimate._HIST_CACHE.clear()
        b = edge_count_histogram(h, workers=3)
        assert np.array_equal(a, b)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            edge_count_histogram(build_ap(27, 3))


class TestExact:
    def test_frozen_quarter_example(self):
        est = exact_tail(AP4, 0.5, 1.0)
        assert est.p_hat == pytest.approx(3.0 / 16.0, rel=1e-15)
        assert est.ci_low == est.p_hat == est.ci_high
        assert est.method == "exact" and est.samples == 16

    def test_threshold_extremes(self):
        assert exact_tail(AP4, 0.3, 0.0).p_hat == pytest.approx(1.0, rel=1e-12)
        assert exact_tail(AP4, 0.3, -2.5).p_hat == pytest.approx(1.0, rel=1e-12)
        assert exact_tail(AP4, 0.3, AP4.num_edges + 0.5).p_hat == 0.0

    def test_matches_naive_random(self):
        rng = np.random.default_rng(12)
        for _ in range(6):
            n = int(rng.integers(6, 11))
            h = build_schur(n) if rng.random() < 0.5 else build_ap(n, 3)
            edges = [tuple(e) for e in h.edges]
            hist = oracles.size_value_histogram(edges, n)
            p = float(rng.choice([0.2, 0.45, 0.7]))
            for thr in (1.0, 2.0, 3.5):
                want = oracles.tail_from_histogram(hist, n, p, thr)
                got = exact_tail(h, p, thr).p_hat
                assert got == pytest.approx(want, rel=1e-11, abs=1e-15)

    def test_point_mass_sums_to_one(self):
        h = build_schur(9)
        total = math.fsum(exact_point_mass(h, 0.4, m) for m in range(h.num_edges + 1))
        assert total == pytest.approx(1.0, rel=1e-12)
        assert exact_point_mass(h, 0.4, -1) == 0.0
        assert exact_point_mass(h, 0.4, h.num_edges + 1) == 0.0

    def test_tail_is_point_mass_suffix(self):
        h = build_ap(8, 3)
        for thr in (1, 3, 5):
            suffix = math.fsum(
                exact_point_mass(h, 0.35, m) for m in range(thr, h.num_edges + 1)
            )
            assert exact_tail(h, 0.35, float(thr)).p_hat == pytest.approx(
                suffix, rel=1e-12, abs=1e-16
            )


class TestMonteCarlo:
    def test_same_seed_reproduces(self):
        h = build_ap(14, 3)
        a = mc_tail(h, 0.3, 2.0, 4000, seed=5)
        b = mc_tail(h, 0.3, 2.0, 4000, seed=5)
        assert a == b

    def test_worker_count_invariant(self):
        h = build_ap(14, 3)
        single = mc_tail(h, 0.3, 2.0, 20000, seed=6, workers=1)
        multi = mc_tail(h, 0.3, 2.0, 20000, seed=6, workers=4)
        assert single == multi

    def test_interval_covers_exact(self):
        h = build_ap(12, 3)
        exact = exact_tail(h, 0.3, 2.0).p_hat
        est = mc_tail(h, 0.3, 2.0, 30000, seed=7)
        assert est.ci_low <= exact <= est.ci_high

    def test_validation(self):
        with pytest.raises(ValueError):
            mc_tail(AP4, 1.2, 1.0, 10, seed=0)
        with pytest.raises(ValueError):
            mc_tail(AP4, 0.5, 1.0, 0, seed=0)


class TestPlanted:
    def test_empty_witness_equals_mc(self):
        h = build_ap(10, 3)
        w = Witness(h, VertexSet(10, 0), 0.0, 0.0)
        a = planted_tail(h, 0.4, 2.0, 5000, seed=8, witness=w)
        b = mc_tail(h, 0.4, 2.0, 5000, seed=8)
        assert a.p_hat == b.p_hat
        assert (a.ci_low, a.ci_high) == (b.ci_low, b.ci_high)

    def test_full_witness_saturates(self):
        h = build_ap(6, 3)
        w = Witness(h, VertexSet(6, (1 << 6) - 1), 6.0, float(h.num_edges))
        est = planted_tail(h, 0.5, float(h.num_edges), 100, seed=9, witness=w)
        assert est.p_hat == pytest.approx(0.5**6, rel=1e-15)
        assert est.extra["conditional_hits"] == 100

    def test_never_exceeds_exact(self):
        spec = FamilySpec("ap", 12, 3)
        h = build(spec)
        p, t = 0.3, 2.0
        mu = exact_mean(h, p)
        exact = exact_tail(h, p, mu + t).p_hat
        w = interval_witness(spec, math.ceil(mu + t))
        for seed in (10, 11, 12):
            est = planted_tail(h, p, mu + t, 20000, seed=seed, witness=w)
            assert est.p_hat <= exact + 1e-12

    def test_witness_universe_check(self):
        w = Witness(AP4, VertexSet(4, 0b0111), 3.0, 1.0)
        h6 = build_ap(6, 3)
        with pytest.raises(ValueError):
            planted_tail(h6, 0.5, 1.0, 10, seed=0, witness=w)


class TestConditioned:
    def test_reports_m_and_factor(self):
        h = build_ap(10, 3)
        est = conditioned_tail(h, 0.3, 1.0, 2000, seed=13)
        assert est.extra["m"] == 3  # 10 * 0.3
        assert est.extra["binomial_factor"] == pytest.approx(
            float(binom.sf(2, 10, 0.3)), rel=1e-12
        )

    def test_trivial_threshold_gives_factor(self):
        h = build_ap(10, 3)
        est = conditioned_tail(h, 0.3, 0.0, 500, seed=14)
        assert est.p_hat == pytest.approx(est.extra["binomial_factor"], rel=1e-12)

    def test_never_exceeds_exact(self):
        h = build_schur(12)
        p = 0.25
        mu = exact_mean(h, p)
        thr = mu + 2.0
        exact = exact_tail(h, p, thr).p_hat
        for eps in (0.0, 0.5):
            est = conditioned_tail(h, p, thr, 20000, seed=15, eps=eps)
            assert est.p_hat <= exact + 1e-12

    def test_eps_too_large(self):
        with pytest.raises(ValueError):
            conditioned_tail(AP4, 0.9, 1.0, 10, seed=0, eps=0.5)


class TestCleanConfigs:
    def test_ap4_m1_frozen(self):
        configs = enumerate_clean_configs(AP4, 1)
        assert [(c.edge_ids, c.vertex_bits) for c in configs] == [
            ((0,), 0b0111),
            ((1,), 0b1110),
        ]

    def test_ap4_m2_overlapping_config(self):
        configs = enumerate_clean_configs(AP4, 2)
        assert [(c.edge_ids, c.vertex_bits) for c in configs] == [((0, 1), 0b1111)]

    def test_ap4_point_lower_is_exact(self):
        # Both single-edge configurations are vertex disjoint unions of one
        # edge, so the clean bound equals Pr(X = 1) = 2 p^3 (1 - p).
        for p in (0.2, 0.5):
            lower = clean_config_point_lower(AP4, p, 1)
            assert lower == pytest.approx(2 * p**3 * (1 - p), rel=1e-12)
            assert exact_point_mass(AP4, p, 1) == pytest.approx(lower, rel=1e-12)

    def test_m_zero_equals_point_mass(self):
        h = build_schur(10)
        for p in (0.15, 0.3):
            assert clean_config_point_lower(h, p, 0) == pytest.approx(
                exact_point_mass(h, p, 0), rel=1e-12
            )

    def test_disjoint_filter(self):
        # The lone clean 2-configuration of AP(4,3) shares vertices, so the
        # disjoint-only bound is zero but the unfiltered one is positive.
        assert clean_config_point_lower(AP4, 0.4, 2) == 0.0
        assert clean_config_point_lower(AP4, 0.4, 2, disjoint_only=False) > 0.0

    def test_lower_bounds_exact_on_families(self):
        for h in (build_ap(10, 3), build_schur(10)):
            for p in (0.1, 0.25):
                for m in (0, 1, 2):
                    lower = clean_config_point_lower(h, p, m)
                    assert exact_point_mass(h, p, m) >= lower * (1 - 1e-9)

    def test_combination_budget(self):
        h = build_ap(24, 3)
        with pytest.raises(CapacityError):
            enumerate_clean_configs(h, 5)

    def test_closed_form_fallback_matches_exact_mode(self):
        # Force the n > 26 branch with padding vertices; the closed-form
        # product must stay below the exact per-config probability.
        base = build_schur(9)
        padded = Hypergraph(3, 30, base.edges)
        for p in (0.2, 0.4):
            exact_small = clean_config_point_lower(base, p, 1)
            fallback = clean_config_point_lower(padded, p, 1)
            assert fallback <= exact_small * (1 + 1e-12)
            assert fallback > 0.0