"""Model construction, validation and expectation-matrix tests."""

import math

import numpy as np
import pytest

from bimix.model import (
    InvalidModelError,
    ModelSpec,
    block_sign_class,
    block_violations,
    build_omega,
    make_planted_memberships,
    make_standard_two_block,
    membership_violations,
    validate_model,
)
from bimix.sampler import EdgeDistribution

P1 = np.array([[1.0, 0.2], [0.3, 0.8]])


def random_valid_spec(rng, n_r, n_c, K, dist=None, rho=0.7):
    """Random spec: one pure row per community, dirichlet mixed rows."""

    def memberships(n):
        pi = rng.dirichlet(np.ones(K), size=n)
        for k in range(K):
            pi[k] = 0.0
            pi[k, k] = 1.0
        return pi

    P = rng.uniform(0.1, 1.0, (K, K))
    P = P + np.eye(K)  # keep the matrix comfortably nonsingular
    P = P / np.abs(P).max()
    return ModelSpec(
        P=P,
        rho=rho,
        Pi_r=memberships(n_r),
        Pi_c=memberships(n_c),
        dist=dist or EdgeDistribution.bernoulli(),
    )


class TestBuildOmega:
    def test_identity_memberships_reproduce_connectivity(self):
        spec = ModelSpec(P=P1, rho=1.0, Pi_r=np.eye(2), Pi_c=np.eye(2),
                         dist=EdgeDistribution.bernoulli())
        np.testing.assert_array_equal(build_omega(spec), P1)

    def test_scaled_two_by_two(self):
        spec = ModelSpec(P=P1, rho=0.5, Pi_r=np.eye(2), Pi_c=np.eye(2),
                         dist=EdgeDistribution.bernoulli())
        np.testing.assert_allclose(build_omega(spec), [[0.5, 0.1], [0.15, 0.4]], atol=1e-15)

    def test_rank_is_exactly_k(self):
        rng = np.random.default_rng(7)
        spec = random_valid_spec(rng, n_r=40, n_c=30, K=3)
        omega = build_omega(spec)
        sv = np.linalg.svd(omega, compute_uv=False)  # full-decomposition oracle
        assert sv[3] / sv[0] < 1e-10

    def test_linear_in_rho(self):
        rng = np.random.default_rng(8)
        spec = random_valid_spec(rng, n_r=25, n_c=20, K=2, rho=0.3)
        doubled = ModelSpec(P=spec.P, rho=0.6, Pi_r=spec.Pi_r, Pi_c=spec.Pi_c, dist=spec.dist)
        np.testing.assert_allclose(build_omega(doubled), 2.0 * build_omega(spec), rtol=1e-14)

    def test_invalid_spec_raises_naming_violation(self):
        bad_pi = np.array([[0.9, 0.0], [0.0, 1.0], [0.5, 0.5]])  # row 0 sums to 0.9
        spec = ModelSpec(P=P1, rho=0.5, Pi_r=bad_pi, Pi_c=np.eye(2),
                         dist=EdgeDistribution.bernoulli())
        with pytest.raises(InvalidModelError, match="row 0 sums"):
            build_omega(spec)


class TestPlantedMemberships:
    def test_tiny_example(self):
        pi = make_planted_memberships(4, 2, 1)
        np.testing.assert_array_equal(pi, [[1, 0], [0, 1], [0.5, 0.5], [0.5, 0.5]])

    def test_blocked_layout(self):
        pi = make_planted_memberships(200, 2, 50)
        np.testing.assert_array_equal(pi[:50], np.tile([1.0, 0.0], (50, 1)))
        np.testing.assert_array_equal(pi[50:100], np.tile([0.0, 1.0], (50, 1)))
        np.testing.assert_array_equal(pi[100:], np.full((100, 2), 0.5))

    @pytest.mark.parametrize("n,K,n_pure", [(6, 2, 1), (30, 3, 4), (50, 4, 5), (12, 2, 6)])
    def test_invariants(self, n, K, n_pure):
        pi = make_planted_memberships(n, K, n_pure)
        assert membership_violations(pi, K=K, ground_truth=True) == []
        # exactly K * n_pure pure rows for K >= 2
        pure = np.sum(np.any(pi == 1.0, axis=1))
        assert pure == K * n_pure
        sv = np.linalg.svd(pi, compute_uv=False)
        assert sv[K - 1] > 1e-10 * sv[0]

    def test_overfull_raises(self):
        with pytest.raises(InvalidModelError, match="exceeds"):
            make_planted_memberships(5, 2, 3)


class TestStandardTwoBlock:
    def test_positive_pair(self):
        P, rho = make_standard_two_block(300, 30.0, 10.0)
        assert rho == pytest.approx(30.0 * math.log(300) / 300, rel=1e-15)
        np.testing.assert_allclose(P, [[1.0, 1 / 3], [1 / 3, 1.0]], rtol=1e-15)

    def test_equal_magnitude_raises(self):
        with pytest.raises(InvalidModelError, match="singular"):
            make_standard_two_block(300, 2.0, 2.0)
        with pytest.raises(InvalidModelError, match="singular"):
            make_standard_two_block(300, -5.0, 5.0)

    def test_negative_alpha_in(self):
        P, rho = make_standard_two_block(300, -50.0, 10.0)
        # recompute the normalization by hand
        assert rho == pytest.approx(50.0 * math.log(300) / 300, rel=1e-15)
        assert P[0, 0] == -1.0 and P[1, 1] == -1.0
        assert np.abs(P).max() == 1.0
        np.testing.assert_allclose(
            rho * P, np.array([[-50.0, 10.0], [10.0, -50.0]]) * math.log(300) / 300, rtol=1e-14
        )

    def test_grid_roundtrip_property(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            a_in, a_out = rng.uniform(-40, 40, size=2)
            if abs(a_in) == abs(a_out):
                continue
            n = int(rng.integers(10, 500))
            P, rho = make_standard_two_block(n, a_in, a_out)
            assert np.abs(P).max() == pytest.approx(1.0, abs=1e-12)
            expected = np.array([[a_in, a_out], [a_out, a_in]]) * math.log(n) / n
            np.testing.assert_allclose(rho * P, expected, atol=1e-12)

    def test_small_n_rejected(self):
        with pytest.raises(InvalidModelError, match="at least 3"):
            make_standard_two_block(2, 3.0, 1.0)


class TestValidateModel:
    def test_valid_spec_empty_report(self):
        spec = ModelSpec(P=P1, rho=0.5, Pi_r=make_planted_memberships(8, 2, 2),
                         Pi_c=make_planted_memberships(6, 2, 1), dist=EdgeDistribution.bernoulli())
        assert validate_model(spec) == []

    def test_row_stochasticity_named(self):
        bad = np.array([[0.9, 0.0], [0.0, 1.0], [0.5, 0.5]])
        spec = ModelSpec(P=P1, rho=0.5, Pi_r=bad, Pi_c=np.eye(2),
                         dist=EdgeDistribution.bernoulli())
        report = validate_model(spec)
        assert any("sums to" in msg for msg in report)

    def test_sign_class_mismatch_named(self):
        P_neg = np.array([[1.0, -0.2], [0.3, -0.8]])
        spec = ModelSpec(P=P_neg, rho=0.5, Pi_r=np.eye(2), Pi_c=np.eye(2),
                         dist=EdgeDistribution.bernoulli())
        report = validate_model(spec)
        assert any("sign class" in msg and "bernoulli" in msg for msg in report)

    def test_poisson_requires_strictly_positive(self):
        P_zero = np.array([[1.0, 0.0], [0.3, 0.8]])
        spec = ModelSpec(P=P_zero, rho=1.0, Pi_r=np.eye(2), Pi_c=np.eye(2),
                         dist=EdgeDistribution.poisson())
        assert any("strictly-positive" in msg for msg in validate_model(spec))

    def test_rho_interval_violation_named(self):
        spec = ModelSpec(P=P1, rho=1.5, Pi_r=np.eye(2), Pi_c=np.eye(2),
                         dist=EdgeDistribution.bernoulli())
        assert any("rho" in msg and "interval" in msg for msg in validate_model(spec))

    def test_missing_pure_row_named(self):
        no_pure = np.array([[0.8, 0.2], [0.2, 0.8], [0.5, 0.5]])
        spec = ModelSpec(P=P1, rho=0.5, Pi_r=no_pure, Pi_c=np.eye(2),
                         dist=EdgeDistribution.bernoulli())
        assert any("no pure row" in msg for msg in validate_model(spec))

    def test_k_exceeds_node_count(self):
        spec = ModelSpec(P=np.eye(3), rho=0.5, Pi_r=make_planted_memberships(3, 3, 1),
                         Pi_c=make_planted_memberships(2, 2, 1), dist=EdgeDistribution.bernoulli())
        assert any("exceeds" in msg or "columns" in msg for msg in validate_model(spec))


class TestSignClass:
    def test_classes(self):
        assert block_sign_class(np.array([[1.0, 0.2], [0.3, 0.8]])) == "strictly-positive"
        assert block_sign_class(np.array([[1.0, 0.0], [0.3, 0.8]])) == "nonnegative"
        assert block_sign_class(np.array([[1.0, -0.2], [0.3, 0.8]])) == "any-real"

    def test_block_violations(self):
        assert block_violations(P1) == []
        assert any("maximum absolute" in m for m in block_violations(P1 * 0.5))
        singular = np.array([[1.0, 1.0], [1.0, 1.0]])
        assert any("rank" in m for m in block_violations(singular))
