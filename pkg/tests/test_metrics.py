"""Metric tests against brute-force permutation oracles and algebraic identities."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bimix.metrics import (
    empirical_tau_gamma,
    error_rate,
    hamm_rc,
    home_base,
    mixed_proportion,
    separation_margins,
    theoretical_rate,
)
from bimix.model import ModelSpec, build_omega, make_planted_memberships
from bimix.sampler import EdgeDistribution, RandomSource, sample_adjacency

from test_model import P1


def oracle_min_perm(est, ref):
    """Brute force: materialize every permutation matrix and take the best."""
    k = est.shape[1]
    best = math.inf
    for perm in itertools.permutations(range(k)):
        P = np.zeros((k, k))
        for col, row in enumerate(perm):
            P[row, col] = 1.0
        best = min(best, float(np.abs(est @ P - ref).sum()))
    return best


def random_stochastic(rng, n, k):
    return rng.dirichlet(np.ones(k), size=n)


class TestErrorRate:
    def test_exact_match_is_zero(self):
        pi = make_planted_memberships(6, 2, 2)
        assert error_rate(pi, pi, pi, pi) == 0.0

    def test_column_swap_absorbed(self):
        pi = make_planted_memberships(6, 2, 2)
        swapped = pi[:, ::-1]
        assert error_rate(swapped, pi, swapped, pi) == 0.0

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(0)
        for _ in range(40):
            est = random_stochastic(rng, 6, 3)
            ref = random_stochastic(rng, 6, 3)
            got = error_rate(est, ref, est, ref)
            assert got == oracle_min_perm(est, ref) / 6.0

    def test_matches_oracle_up_to_k5(self):
        rng = np.random.default_rng(5)
        for k in (2, 3, 4, 5):
            est = random_stochastic(rng, 8, k)
            ref = random_stochastic(rng, 8, k)
            assert error_rate(est, ref, est, ref) == oracle_min_perm(est, ref) / 8.0

    def test_symmetric_under_simultaneous_permutation(self):
        rng = np.random.default_rng(6)
        est = random_stochastic(rng, 7, 3)
        ref = random_stochastic(rng, 7, 3)
        base = error_rate(est, ref, est, ref)
        for perm in itertools.permutations(range(3)):
            p = list(perm)
            # summation order changes with the layout, so equality is to rounding
            got = error_rate(est[:, p], ref[:, p], est[:, p], ref[:, p])
            assert got == pytest.approx(base, rel=1e-12)

    def test_bounded_by_two(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            est = random_stochastic(rng, 5, 2)
            ref = random_stochastic(rng, 5, 2)
            v = error_rate(est, ref, est, ref)
            assert 0.0 <= v <= 2.0

    def test_shape_mismatch(self):
        with pytest.raises(ValueError, match="shape mismatch"):
            error_rate(np.eye(2), np.eye(3), np.eye(2), np.eye(2))

    def test_permutation_limit(self):
        big = np.eye(11)
        with pytest.raises(ValueError, match="limit"):
            error_rate(big, big, big, big)


class TestHammRC:
    def test_identical_sides_zero(self):
        pi = make_planted_memberships(8, 2, 2)
        assert hamm_rc(pi, pi) == 0.0

    def test_permuted_columns_zero(self):
        rng = np.random.default_rng(2)
        pi = random_stochastic(rng, 7, 3)
        assert hamm_rc(pi, pi[:, [2, 0, 1]]) == 0.0

    def test_matches_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            a = random_stochastic(rng, 5, 3)
            b = random_stochastic(rng, 5, 3)
            assert hamm_rc(a, b) == oracle_min_perm(a, b) / 5.0

    @given(st.integers(min_value=2, max_value=4), st.integers(min_value=2, max_value=9))
    @settings(max_examples=40, deadline=None)
    def test_zero_for_any_permutation(self, k, n):
        rng = np.random.default_rng(n * 10 + k)
        pi = random_stochastic(rng, n, k)
        perm = rng.permutation(k)
        assert hamm_rc(pi, pi[:, perm]) == 0.0


class TestHomeBase:
    def test_pure_rows(self):
        pi = make_planted_memberships(6, 3, 2)
        np.testing.assert_array_equal(home_base(pi), [0, 0, 1, 1, 2, 2])

    def test_tie_goes_to_smaller_label(self):
        assert home_base(np.array([[0.5, 0.5]]))[0] == 0

    def test_agrees_with_linear_scan(self):
        rng = np.random.default_rng(4)
        pi = random_stochastic(rng, 20, 4)
        labels = home_base(pi)
        for i in range(20):
            best, arg = -1.0, None
            for k in range(4):
                if pi[i, k] > best:
                    best, arg = pi[i, k], k
            assert labels[i] == arg


class TestMixedProportion:
    def test_all_pure_is_zero(self):
        pi = make_planted_memberships(4, 2, 2)
        assert mixed_proportion(pi) == 0.0

    def test_all_uniform_is_one(self):
        pi = np.full((5, 2), 0.5)
        assert mixed_proportion(pi) == 1.0

    def test_threshold_range_enforced(self):
        pi = np.full((5, 2), 0.5)
        with pytest.raises(ValueError):
            mixed_proportion(pi, threshold=0.5)
        with pytest.raises(ValueError):
            mixed_proportion(pi, threshold=1.0)

    def test_counts_boundary_as_mixed(self):
        pi = np.array([[0.8, 0.2], [0.9, 0.1]])
        assert mixed_proportion(pi, threshold=0.8) == 0.5


class TestTheoreticalRate:
    def _spec(self, n_r, n_c, dist, rho):
        return ModelSpec(P=P1, rho=rho, Pi_r=make_planted_memberships(n_r, 2, 2),
                         Pi_c=make_planted_memberships(n_c, 2, 2), dist=dist)

    def test_doubling_n_decreases_bounds(self):
        small = self._spec(40, 40, EdgeDistribution.bernoulli(), 0.5)
        big = self._spec(80, 80, EdgeDistribution.bernoulli(), 0.5)
        rs, cs = theoretical_rate(small)
        rb, cb = theoretical_rate(big)
        assert rb < rs and cb < cs
        # ratio follows the closed form: sqrt(log(4n) / (2 log(2n)))
        expected = math.sqrt(math.log(160) / (2 * math.log(80)))
        assert rb / rs == pytest.approx(expected, rel=1e-12)

    def test_sqrt_rho_scaling(self):
        quarter = self._spec(50, 60, EdgeDistribution.bernoulli(), 0.25)
        full = self._spec(50, 60, EdgeDistribution.bernoulli(), 1.0)
        rq, cq = theoretical_rate(quarter)
        rf, cf = theoretical_rate(full)
        assert rf == pytest.approx(rq / 2.0, rel=1e-12)
        assert cf == pytest.approx(cq / 2.0, rel=1e-12)

    def test_exponential_is_rho_free(self):
        a = self._spec(50, 60, EdgeDistribution.exponential(), 2.0)
        b = self._spec(50, 60, EdgeDistribution.exponential(), 50.0)
        assert theoretical_rate(a) == pytest.approx(theoretical_rate(b), rel=1e-12)

    def test_depends_on_spectrum_not_sign_pattern(self):
        pos = self._spec(40, 40, EdgeDistribution.normal(1.0), 2.0)
        # flip signs without changing singular values
        flipped = ModelSpec(P=pos.P @ np.diag([1.0, -1.0]), rho=2.0, Pi_r=pos.Pi_r,
                            Pi_c=pos.Pi_c, dist=pos.dist)
        assert theoretical_rate(flipped) == pytest.approx(theoretical_rate(pos), rel=1e-12)

    def test_singular_connectivity_rejected(self):
        ones = np.ones((2, 2))
        spec = ModelSpec(P=ones, rho=0.5, Pi_r=make_planted_memberships(6, 2, 2),
                         Pi_c=make_planted_memberships(6, 2, 2),
                         dist=EdgeDistribution.bernoulli())
        with pytest.raises(ValueError, match="sigma_K"):
            theoretical_rate(spec)


class TestSeparationMargins:
    def test_bernoulli_plugin(self):
        m = separation_margins(EdgeDistribution.bernoulli(), 30.0, 1.0, 300, tau=1.0)
        assert m.magnitude_margin == pytest.approx(29.0)
        assert m.gap_margin == pytest.approx(29.0)

    def test_signed_plugin(self):
        m = separation_margins(EdgeDistribution.signed(), 45.0, 5.0, 300, tau=2.0)
        assert m.gap_margin == pytest.approx(20.0)
        # magnitude condition reduces to n/log(n) >= tau^2, satisfied at n=300
        assert m.magnitude_margin == pytest.approx(300 / math.log(300) - 4.0)
        assert m.magnitude_margin > 0

    def test_exponential_equal_alphas_zero_gap(self):
        m = separation_margins(EdgeDistribution.exponential(), 10.0, 10.0, 300, tau=1.5)
        assert m.gap_margin == 0.0

    def test_binomial_m1_matches_bernoulli(self):
        b = separation_margins(EdgeDistribution.bernoulli(), 12.0, 3.0, 200, tau=1.0)
        m1 = separation_margins(EdgeDistribution.binomial(1), 12.0, 3.0, 200, tau=1.0)
        assert (b.magnitude_margin, b.gap_margin) == (m1.magnitude_margin, m1.gap_margin)

    def test_normal_magnitude_uses_variance(self):
        m = separation_margins(EdgeDistribution.normal(2.0), -30.0, 5.0, 100, tau=3.0)
        assert m.magnitude_margin == pytest.approx(2.0 * 100 / math.log(100) - 9.0)
        assert m.gap_margin == pytest.approx(25.0 / 3.0)

    def test_uniform_divides_by_three(self):
        m = separation_margins(EdgeDistribution.uniform(), 60.0, 10.0, 300, tau=2.0)
        expected = 60.0**2 * math.log(300) / (3 * 300) - 4.0
        assert m.magnitude_margin == pytest.approx(expected)

    def test_logistic_magnitude(self):
        m = separation_margins(EdgeDistribution.logistic(0.5), 10.0, -2.0, 400, tau=1.0)
        expected = math.pi**2 * 0.25 * 400 / (3 * math.log(400)) - 1.0
        assert m.magnitude_margin == pytest.approx(expected)

    def test_alpha_domain_enforced(self):
        with pytest.raises(ValueError):
            separation_margins(EdgeDistribution.bernoulli(), -1.0, 3.0, 300, tau=1.0)
        with pytest.raises(ValueError):
            separation_margins(EdgeDistribution.poisson(), 0.0, 3.0, 300, tau=1.0)
        with pytest.raises(ValueError):
            separation_margins(EdgeDistribution.signed(), 80.0, 3.0, 300, tau=2.0)


class TestEmpiricalTauGamma:
    def test_exact_expectation_gives_zero(self):
        omega = np.array([[0.4, 0.6], [0.2, 0.8]])
        assert empirical_tau_gamma(omega, omega, 0.5) == (0.0, 0.0)

    def test_bernoulli_bounded_by_one(self):
        spec = ModelSpec(P=P1, rho=0.9, Pi_r=make_planted_memberships(30, 2, 5),
                         Pi_c=make_planted_memberships(20, 2, 4),
                         dist=EdgeDistribution.bernoulli())
        omega = build_omega(spec)
        A = sample_adjacency(omega, spec.dist, RandomSource(21))
        tau_hat, gamma_hat = empirical_tau_gamma(A, omega, spec.rho)
        assert 0.0 < tau_hat <= 1.0
        assert gamma_hat <= 1.0 / spec.rho + 1e-12

    def test_signed_bounded_by_two(self):
        spec = ModelSpec(P=np.array([[1.0, -0.2], [0.3, -0.8]]), rho=0.9,
                         Pi_r=make_planted_memberships(30, 2, 5),
                         Pi_c=make_planted_memberships(20, 2, 4),
                         dist=EdgeDistribution.signed())
        omega = build_omega(spec)
        A = sample_adjacency(omega, spec.dist, RandomSource(22))
        tau_hat, _ = empirical_tau_gamma(A, omega, spec.rho)
        assert tau_hat <= 2.0

    def test_requires_positive_rho(self):
        with pytest.raises(ValueError):
            empirical_tau_gamma(np.eye(2), np.eye(2), 0.0)
