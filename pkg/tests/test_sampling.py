import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import resist_sketch as rs
from conftest import connected_graphs
from oracles import materialized_sampler_product


def plan_for(g, r=500, seed=0, beta=1.0, epsilon=0.5):
    prof = rs.spectral_profile(rs.incidence_factors(g))
    p = rs.leverage_probabilities(prof, beta=beta)
    return rs.SamplingPlan(
        probabilities=p, beta=beta, epsilon=epsilon, c0=1.0, r=r, seed=seed
    )


class TestSampleCount:
    def test_known_values(self):
        assert rs.sample_count(30, 0.5) == 33169
        assert rs.sample_count(2, 0.9) == 702

    def test_monotone_in_beta(self):
        assert rs.sample_count(10, 0.5, beta=0.5) >= rs.sample_count(10, 0.5, beta=1.0)

    def test_monotone_in_epsilon(self):
        assert rs.sample_count(10, 0.3) > rs.sample_count(10, 0.6)

    def test_log_argument_guard(self):
        # 36 c0^2 n / (beta eps) must exceed 1
        with pytest.raises(rs.ParameterError, match="36"):
            rs.sample_count(1, 0.9, beta=1.0, c0=0.005)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(n=0, epsilon=0.5),
            dict(n=5, epsilon=0.0),
            dict(n=5, epsilon=1.0),
            dict(n=5, epsilon=0.5, beta=0.0),
            dict(n=5, epsilon=0.5, beta=1.0001),
            dict(n=5, epsilon=0.5, c0=0.0),
        ],
    )
    def test_rejects_bad_parameters(self, kwargs):
        with pytest.raises(rs.ParameterError):
            rs.sample_count(**kwargs)

    @given(
        st.integers(min_value=2, max_value=500),
        st.floats(min_value=0.01, max_value=0.99),
    )
    @settings(max_examples=80, deadline=None)
    def test_formula(self, n, epsilon):
        import math

        x = 36.0 * n / epsilon
        assert rs.sample_count(n, epsilon) == math.ceil(2.0 * x * math.log(x))


class TestSamplingPlan:
    def test_validates_probabilities(self):
        with pytest.raises(rs.ParameterError, match="sum"):
            rs.SamplingPlan(
                probabilities=np.array([0.6, 0.6]),
                beta=1.0, epsilon=0.5, c0=1.0, r=10, seed=0,
            )
        with pytest.raises(rs.ParameterError, match="non-negative"):
            rs.SamplingPlan(
                probabilities=np.array([1.5, -0.5]),
                beta=1.0, epsilon=0.5, c0=1.0, r=10, seed=0,
            )

    def test_validates_scalars(self):
        p = np.array([1.0])
        for kwargs in (
            dict(beta=0.0), dict(epsilon=1.0), dict(c0=-1.0),
            dict(r=0), dict(seed=-1), dict(seed=2**64),
        ):
            full = dict(beta=1.0, epsilon=0.5, c0=1.0, r=10, seed=0)
            full.update(kwargs)
            with pytest.raises(rs.ParameterError):
                rs.SamplingPlan(probabilities=p, **full)

    def test_probabilities_are_copied_and_frozen(self):
        p = np.array([0.5, 0.5])
        plan = rs.SamplingPlan(probabilities=p, beta=1.0, epsilon=0.5, c0=1.0, r=5, seed=0)
        p[0] = 0.9
        assert plan.probabilities[0] == 0.5
        with pytest.raises(ValueError):
            plan.probabilities[0] = 0.1


class TestDrawSamples:
    def test_degenerate_distribution(self):
        plan = rs.SamplingPlan(
            probabilities=np.array([1.0, 0.0, 0.0]),
            beta=1.0, epsilon=0.5, c0=1.0, r=200, seed=3,
        )
        assert np.all(rs.draw_samples(plan) == 0)

    def test_deterministic(self, triangle):
        plan = plan_for(triangle, r=1000, seed=42)
        np.testing.assert_array_equal(rs.draw_samples(plan), rs.draw_samples(plan))

    def test_seed_changes_sequence(self, triangle):
        a = rs.draw_samples(plan_for(triangle, r=1000, seed=1))
        b = rs.draw_samples(plan_for(triangle, r=1000, seed=2))
        assert not np.array_equal(a, b)

    def test_uniform_band(self):
        # ±4 sigma band around r/3 for three equally likely edges
        plan = rs.SamplingPlan(
            probabilities=np.ones(3) / 3,
            beta=1.0, epsilon=0.5, c0=1.0, r=30000, seed=20260818,
        )
        counts = np.bincount(rs.draw_samples(plan), minlength=3)
        assert counts.sum() == 30000
        assert np.all(counts >= 9600) and np.all(counts <= 10400)

    def test_zero_probability_edges_never_drawn(self):
        p = np.array([0.25, 0.0, 0.75, 0.0])
        plan = rs.SamplingPlan(probabilities=p, beta=1.0, epsilon=0.5, c0=1.0, r=5000, seed=11)
        counts = np.bincount(rs.draw_samples(plan), minlength=4)
        assert counts[1] == 0 and counts[3] == 0

    def test_trailing_zero_probability_with_short_cdf(self):
        # force cumulative rounding shortfall; overflow draws must land on
        # the last edge with mass, not on the trailing zero-probability one
        p = np.full(7, 1.0 / 7.0)
        p = np.append(p, 0.0)
        p = p / p.sum()
        plan = rs.SamplingPlan(probabilities=p, beta=1.0, epsilon=0.5, c0=1.0, r=100000, seed=5)
        counts = np.bincount(rs.draw_samples(plan), minlength=8)
        assert counts[7] == 0


class TestBuildSparsifier:
    def test_single_edge_is_exact(self, single_edge):
        factors = rs.incidence_factors(single_edge)
        plan = plan_for(single_edge, r=17, seed=9)
        system = rs.build_sparsifier(factors, plan)
        np.testing.assert_allclose(
            system.laplacian.toarray(),
            rs.laplacian_of(single_edge).toarray(),
            atol=1e-14,
        )
        assert system.distinct_edges == 1

    def test_matches_materialized_operator(self, triangle):
        factors = rs.incidence_factors(triangle)
        plan = plan_for(triangle, r=400, seed=99)
        system = rs.build_sparsifier(factors, plan)
        reference = materialized_sampler_product(
            factors.incidence.toarray(),
            factors.weights,
            plan.probabilities,
            system.samples,
        )
        np.testing.assert_allclose(system.laplacian.toarray(), reference, atol=1e-12)

    def test_aggregated_weights(self, triangle):
        factors = rs.incidence_factors(triangle)
        plan = plan_for(triangle, r=300, seed=4)
        system = rs.build_sparsifier(factors, plan)
        counts = np.bincount(system.samples, minlength=3)
        for i, w in system.aggregated.items():
            expected = factors.weights[i] * counts[i] / (plan.r * plan.probabilities[i])
            assert w == pytest.approx(expected, rel=1e-14)

    def test_plan_graph_mismatch(self, triangle, single_edge):
        plan = plan_for(single_edge)
        with pytest.raises(rs.ParameterError, match="edges"):
            rs.build_sparsifier(rs.incidence_factors(triangle), plan)

    def test_bit_identical_for_fixed_seed(self, triangle):
        factors = rs.incidence_factors(triangle)
        plan = plan_for(triangle, r=800, seed=123)
        a = rs.build_sparsifier(factors, plan)
        b = rs.build_sparsifier(factors, plan)
        np.testing.assert_array_equal(a.samples, b.samples)
        assert (a.laplacian != b.laplacian).nnz == 0
        assert a.aggregated == b.aggregated

    @given(connected_graphs(), st.integers(min_value=1, max_value=2000),
           st.integers(min_value=0, max_value=2**32))
    @settings(max_examples=40, deadline=None)
    def test_sparsifier_invariants(self, g, r, seed):
        factors = rs.incidence_factors(g)
        plan = plan_for(g, r=r, seed=seed)
        system = rs.build_sparsifier(factors, plan)
        lap = system.laplacian.toarray()
        scale = max(1.0, np.abs(lap).max())
        assert np.max(np.abs(lap @ np.ones(g.n))) <= 1e-10 * scale
        assert np.max(np.abs(lap - lap.T)) == 0.0
        assert np.linalg.eigvalsh(lap).min() >= -1e-10 * scale
        assert system.distinct_edges <= min(r, g.m)
        assert system.nnz <= g.n + 2 * r
        assert len(system.samples) == r

    def test_unbiased_mean(self, triangle):
        # trial mean over 500 draws at r=1000 lands entrywise within 0.05
        factors = rs.incidence_factors(triangle)
        L = rs.laplacian_of(triangle).toarray()
        plan0 = plan_for(triangle, r=1000)
        acc = np.zeros_like(L)
        trials = 500
        for t in range(trials):
            plan = dataclasses.replace(plan0, seed=rs.trial_seed(77, t))
            acc += rs.build_sparsifier(factors, plan).laplacian.toarray()
        assert np.max(np.abs(acc / trials - L)) <= 0.05


class TestConcentrationCheck:
    def test_single_edge_zero_deviation(self, single_edge):
        prof = rs.spectral_profile(rs.incidence_factors(single_edge))
        plan = plan_for(single_edge, r=50, seed=2)
        assert rs.concentration_check(prof.basis, plan) == 0.0

    def test_equals_singular_value_deviation(self, triangle):
        prof = rs.spectral_profile(rs.incidence_factors(triangle))
        plan = plan_for(triangle, r=400, seed=99)
        samples = rs.draw_samples(plan)
        S = np.zeros((triangle.m, plan.r))
        for t, i in enumerate(samples):
            S[i, t] = 1.0 / np.sqrt(plan.r * plan.probabilities[i])
        sv = np.linalg.svd(S.T @ prof.basis, compute_uv=False)
        expected = float(np.max(np.abs(sv**2 - 1.0)))
        got = rs.concentration_check(prof.basis, plan, samples=samples)
        assert got == pytest.approx(expected, abs=1e-12)

    def test_redrawing_matches_reuse(self, triangle):
        prof = rs.spectral_profile(rs.incidence_factors(triangle))
        plan = plan_for(triangle, r=600, seed=31)
        system = rs.build_sparsifier(rs.incidence_factors(triangle), plan)
        assert rs.concentration_check(prof.basis, plan) == rs.concentration_check(
            prof.basis, plan, samples=system.samples
        )

    def test_shape_mismatch_rejected(self, triangle, single_edge):
        prof = rs.spectral_profile(rs.incidence_factors(single_edge))
        plan = plan_for(triangle)
        with pytest.raises(rs.ParameterError, match="basis"):
            rs.concentration_check(prof.basis, plan)
