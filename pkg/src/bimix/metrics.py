"""Evaluation metrics and theory-side diagnostics for membership estimates.

The matrix l1 norm used throughout is the entrywise absolute sum, so the
per-node normalization below yields the average l1 discrepancy of a node's
membership vector.  Permutation minimization enumerates all K! column
permutations, which is ample at desk scale.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .model import ModelSpec
from .sampler import EdgeDistribution, distribution_gamma

PERMUTATION_LIMIT = 10
SINGULAR_TOL = 1e-12


def _check_pair(est: np.ndarray, ref: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    est = np.asarray(est, dtype=float)
    ref = np.asarray(ref, dtype=float)
    if est.shape != ref.shape:
        raise ValueError(f"shape mismatch: {est.shape} vs {ref.shape}")
    if est.ndim != 2:
        raise ValueError(f"expected 2-d matrices, got shape {est.shape}")
    if est.shape[1] > PERMUTATION_LIMIT:
        raise ValueError(f"K={est.shape[1]} exceeds the permutation-search limit {PERMUTATION_LIMIT}")
    return est, ref


def _min_permutation_l1(est: np.ndarray, ref: np.ndarray) -> float:
    k = est.shape[1]
    best = math.inf
    for perm in itertools.permutations(range(k)):
        total = float(np.abs(est[:, perm] - ref).sum())
        if total < best:
            best = total
    return best


def error_rate(
    Pi_r_hat: np.ndarray, Pi_r: np.ndarray, Pi_c_hat: np.ndarray, Pi_c: np.ndarray
) -> float:
    """Worst side of the permutation-minimized, node-averaged l1 discrepancy.

    Row and column sides minimize over column permutations independently;
    each side's entrywise absolute sum is divided by its node count.
    """
    Pi_r_hat, Pi_r = _check_pair(Pi_r_hat, Pi_r)
    Pi_c_hat, Pi_c = _check_pair(Pi_c_hat, Pi_c)
    row = _min_permutation_l1(Pi_r_hat, Pi_r) / Pi_r.shape[0]
    col = _min_permutation_l1(Pi_c_hat, Pi_c) / Pi_c.shape[0]
    return max(row, col)


def hamm_rc(Pi_r_hat: np.ndarray, Pi_c_hat: np.ndarray) -> float:
    """Permutation-minimized l1 distance between row and column memberships.

    Zero for an undirected network; large values flag heavy asymmetry
    between row-side and column-side community structure.
    """
    Pi_r_hat, Pi_c_hat = _check_pair(Pi_r_hat, Pi_c_hat)
    return _min_permutation_l1(Pi_r_hat, Pi_c_hat) / Pi_r_hat.shape[0]


def home_base(Pi_hat: np.ndarray) -> np.ndarray:
    """Per-node community of largest weight; ties break toward the smaller label."""
    Pi_hat = np.asarray(Pi_hat, dtype=float)
    return np.argmax(Pi_hat, axis=1)


def mixed_proportion(Pi_hat: np.ndarray, threshold: float = 0.8) -> float:
    """Fraction of nodes whose largest membership weight is at most ``threshold``."""
    Pi_hat = np.asarray(Pi_hat, dtype=float)
    k = Pi_hat.shape[1]
    if not (1.0 / k < threshold < 1.0):
        raise ValueError(f"threshold must lie in (1/K, 1) = (1/{k}, 1), got {threshold}")
    return float(np.mean(Pi_hat.max(axis=1) <= threshold))


def theoretical_rate(spec: ModelSpec) -> tuple[float, float]:
    """Per-node error-bound expressions, without the hidden constant.

    Row bound: K^2 sqrt(gamma log(n_r + n_c)) / (sigma_K(P) sqrt(rho n_c));
    the column bound swaps in n_r.  gamma is the distribution's normalized
    noise level, so e.g. the exponential law makes both bounds rho-free.
    """
    sv = np.linalg.svd(spec.P, compute_uv=False)
    sigma_k = float(sv[-1])
    if sigma_k < SINGULAR_TOL:
        raise ValueError(f"sigma_K of the connectivity matrix is {sigma_k!r}, below {SINGULAR_TOL}")
    gamma = distribution_gamma(spec.dist, spec.rho)
    k2 = spec.K**2
    log_term = math.sqrt(gamma * math.log(spec.n_r + spec.n_c))
    row = k2 * log_term / (sigma_k * math.sqrt(spec.rho * spec.n_c))
    col = k2 * log_term / (sigma_k * math.sqrt(spec.rho * spec.n_r))
    return row, col


@dataclass(frozen=True)
class SeparationMargins:
    """Slack in the two-part separation condition of a two-community grid point.

    ``magnitude_margin`` is the kind-specialized left side of the magnitude
    inequality minus tau^2; ``gap_margin`` is ||alpha_in| - |alpha_out||
    divided by tau.  Margins are reported, never thresholded: how much slack
    counts as "comfortably separated" has no universal constant.
    """

    magnitude_margin: float
    gap_margin: float


def _check_alpha_domain(dist: EdgeDistribution, alpha: float, n: int) -> None:
    limit = n / math.log(n)
    kind = dist.kind
    if kind == "bernoulli" and not (0.0 <= alpha <= limit):
        raise ValueError(f"bernoulli alpha must lie in [0, n/log(n)] = [0, {limit:g}], got {alpha}")
    if kind in ("poisson", "exponential") and not alpha > 0.0:
        raise ValueError(f"{kind} alpha must be positive, got {alpha}")
    if kind == "binomial" and not (0.0 < alpha <= dist.m * limit):
        raise ValueError(
            f"binomial alpha must lie in (0, m*n/log(n)] = (0, {dist.m * limit:g}], got {alpha}"
        )
    if kind == "uniform" and not alpha >= 0.0:
        raise ValueError(f"uniform alpha must be nonnegative, got {alpha}")
    if kind == "signed" and not abs(alpha) < limit:
        raise ValueError(f"signed alpha must satisfy |alpha| < n/log(n) = {limit:g}, got {alpha}")


def separation_margins(
    dist: EdgeDistribution, alpha_in: float, alpha_out: float, n: int, tau: float
) -> SeparationMargins:
    """Margins of the kind-specialized separation condition at one grid point.

    The magnitude condition's left side substitutes the kind's noise level
    at ``rho = max(|alpha_in|, |alpha_out|) * log(n) / n``: it is
    max(|alpha_in|, |alpha_out|) for bernoulli/poisson/binomial,
    sigma2 * n / log(n) for normal, max(alpha^2) * log(n) / n for
    exponential (divided by 3 for uniform), pi^2 beta^2 n / (3 log n) for
    logistic, and n / log(n) for the signed law.  Canonical tau values are 1
    (bernoulli), m (binomial) and 2 (signed); for unbounded laws pass a
    plug-in estimate.
    """
    n = int(n)
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    if not tau > 0.0:
        raise ValueError(f"tau must be positive, got {tau}")
    alpha_in, alpha_out = float(alpha_in), float(alpha_out)
    _check_alpha_domain(dist, alpha_in, n)
    _check_alpha_domain(dist, alpha_out, n)

    log_n = math.log(n)
    peak = max(abs(alpha_in), abs(alpha_out))
    kind = dist.kind
    if kind in ("bernoulli", "poisson", "binomial"):
        magnitude = peak
    elif kind == "normal":
        magnitude = dist.sigma2 * n / log_n
    elif kind == "exponential":
        magnitude = peak**2 * log_n / n
    elif kind == "uniform":
        magnitude = peak**2 * log_n / (3.0 * n)
    elif kind == "logistic":
        magnitude = math.pi**2 * dist.beta**2 * n / (3.0 * log_n)
    else:  # signed
        magnitude = n / log_n
    return SeparationMargins(
        magnitude_margin=magnitude - tau**2,
        gap_margin=abs(abs(alpha_in) - abs(alpha_out)) / tau,
    )


def empirical_tau_gamma(A: np.ndarray, omega: np.ndarray, rho: float) -> tuple[float, float]:
    """Single-sample plug-in estimates of the deviation bound and noise level.

    tau_hat is the largest absolute deviation of A from its expectation;
    gamma_hat is the largest squared deviation divided by rho.  Both are
    plug-ins from one realization, not expectations.
    """
    A = np.asarray(A, dtype=float)
    omega = np.asarray(omega, dtype=float)
    if A.shape != omega.shape:
        raise ValueError(f"shape mismatch: {A.shape} vs {omega.shape}")
    if not rho > 0.0:
        raise ValueError(f"rho must be positive, got {rho}")
    dev = np.abs(A - omega)
    tau_hat = float(dev.max())
    gamma_hat = float((dev**2).max() / rho)
    return tau_hat, gamma_hat
