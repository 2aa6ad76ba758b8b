"""Generative model parameters for overlapping bipartite weighted networks.

The expectation of the adjacency matrix is ``rho * Pi_r @ P @ Pi_c.T``: the
membership matrices Pi_r (rows) and Pi_c (columns) are row stochastic with
rank K, the K x K connectivity matrix P has unit maximum absolute entry and
full rank, and rho > 0 scales the whole expectation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sampler import EdgeDistribution, admissible_rho_interval, required_sign_class

# sigma_K must exceed RANK_RTOL * sigma_1 for a matrix to count as rank K
RANK_RTOL = 1e-10
ROW_SUM_ATOL = 1e-12
UNIT_MAX_ATOL = 1e-12
PURE_ROW_ATOL = 1e-12

_SIGN_CLASS_ORDER = {"any-real": 0, "nonnegative": 1, "strictly-positive": 2}


class InvalidModelError(ValueError):
    """Model parameters violate a structural constraint."""


def block_sign_class(P: np.ndarray) -> str:
    """Tightest sign class satisfied by every entry of P."""
    P = np.asarray(P, dtype=float)
    if np.all(P > 0.0):
        return "strictly-positive"
    if np.all(P >= 0.0):
        return "nonnegative"
    return "any-real"


def _rank_deficient(M: np.ndarray, k: int) -> bool:
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[0] == 0.0:
        return True
    return len(sv) < k or sv[k - 1] <= RANK_RTOL * sv[0]


def membership_violations(
    pi: np.ndarray, K: int | None = None, ground_truth: bool = False, name: str = "membership"
) -> list[str]:
    """Check one membership matrix; returns one message per violated invariant.

    With ``ground_truth=True`` every community must own at least one pure row
    (a row whose weight on that community is 1).
    """
    pi = np.asarray(pi, dtype=float)
    if pi.ndim != 2:
        return [f"{name}: expected a 2-d matrix, got shape {pi.shape}"]
    n, k = pi.shape
    out = []
    if K is not None and k != K:
        out.append(f"{name}: has {k} columns, expected K={K}")
    if not np.all(np.isfinite(pi)):
        out.append(f"{name}: contains non-finite entries")
        return out
    if np.any(pi < 0.0) or np.any(pi > 1.0):
        out.append(f"{name}: entries must lie in [0, 1]")
    sums = pi.sum(axis=1)
    off = np.abs(sums - 1.0)
    if np.any(off > ROW_SUM_ATOL):
        i = int(np.argmax(off))
        out.append(f"{name}: row {i} sums to {sums[i]!r}, must be 1 within {ROW_SUM_ATOL:g}")
    if _rank_deficient(pi, k):
        out.append(f"{name}: rank below the community count {k}")
    if ground_truth:
        for community in range(k):
            if not np.any(pi[:, community] >= 1.0 - PURE_ROW_ATOL):
                out.append(f"{name}: community {community} has no pure row")
    return out


def block_violations(P: np.ndarray, name: str = "block matrix") -> list[str]:
    """Check the connectivity matrix; returns one message per violated invariant."""
    P = np.asarray(P, dtype=float)
    out = []
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        return [f"{name}: must be square, got shape {P.shape}"]
    if not np.all(np.isfinite(P)):
        out.append(f"{name}: contains non-finite entries")
        return out
    if abs(np.max(np.abs(P)) - 1.0) > UNIT_MAX_ATOL:
        out.append(f"{name}: maximum absolute entry is {np.max(np.abs(P))!r}, must equal 1")
    if _rank_deficient(P, P.shape[0]):
        out.append(f"{name}: rank below {P.shape[0]}")
    return out


@dataclass(frozen=True)
class ModelSpec:
    """Complete parameter bundle: connectivity, scale, memberships, edge law."""

    P: np.ndarray
    rho: float
    Pi_r: np.ndarray
    Pi_c: np.ndarray
    dist: EdgeDistribution

    def __post_init__(self):
        object.__setattr__(self, "P", np.asarray(self.P, dtype=float))
        object.__setattr__(self, "Pi_r", np.asarray(self.Pi_r, dtype=float))
        object.__setattr__(self, "Pi_c", np.asarray(self.Pi_c, dtype=float))
        object.__setattr__(self, "rho", float(self.rho))

    @property
    def n_r(self) -> int:
        return self.Pi_r.shape[0]

    @property
    def n_c(self) -> int:
        return self.Pi_c.shape[0]

    @property
    def K(self) -> int:
        return self.P.shape[0]


def validate_model(spec: ModelSpec) -> list[str]:
    """Report every violated model invariant; an empty list means valid."""
    out = []
    out += membership_violations(spec.Pi_r, K=spec.K, ground_truth=True, name="Pi_r")
    out += membership_violations(spec.Pi_c, K=spec.K, ground_truth=True, name="Pi_c")
    out += block_violations(spec.P)
    if spec.K > min(spec.n_r, spec.n_c):
        out.append(f"K={spec.K} exceeds min(n_r, n_c)={min(spec.n_r, spec.n_c)}")
    interval = admissible_rho_interval(spec.dist)
    if not interval.contains(spec.rho):
        out.append(f"rho={spec.rho!r} outside admissible interval {interval} for {spec.dist.kind}")
    required = required_sign_class(spec.dist)
    actual = block_sign_class(spec.P)
    if _SIGN_CLASS_ORDER[actual] < _SIGN_CLASS_ORDER[required]:
        out.append(
            f"block matrix sign class {actual!r} incompatible with {spec.dist.kind} "
            f"(requires {required!r} entries)"
        )
    return out


def require_valid(spec: ModelSpec) -> None:
    violations = validate_model(spec)
    if violations:
        raise InvalidModelError("; ".join(violations))


def build_omega(spec: ModelSpec) -> np.ndarray:
    """Expectation adjacency matrix ``rho * Pi_r @ P @ Pi_c.T`` (rank exactly K)."""
    require_valid(spec)
    return spec.rho * (spec.Pi_r @ spec.P @ spec.Pi_c.T)


def make_planted_memberships(n: int, K: int, n_pure_per_community: int) -> np.ndarray:
    """Planted membership matrix: pure blocks first, then uniformly mixed rows.

    Rows are laid out community by community: community k owns the pure rows
    k*n_pure .. (k+1)*n_pure - 1, and every remaining row carries the uniform
    weight vector (1/K, ..., 1/K).
    """
    n, K, n_pure = int(n), int(K), int(n_pure_per_community)
    if K < 1 or n < 1 or n_pure < 1:
        raise InvalidModelError("n, K and n_pure_per_community must be positive")
    if K * n_pure > n:
        raise InvalidModelError(
            f"K * n_pure_per_community = {K * n_pure} exceeds the node count n = {n}"
        )
    pi = np.full((n, K), 1.0 / K)
    for k in range(K):
        pi[k * n_pure : (k + 1) * n_pure, :] = 0.0
        pi[k * n_pure : (k + 1) * n_pure, k] = 1.0
    return pi


def make_standard_two_block(n: int, alpha_in: float, alpha_out: float) -> tuple[np.ndarray, float]:
    """Two-community connectivity from an (alpha_in, alpha_out) grid point.

    The scaled connectivity ``rho * P`` equals
    ``[[alpha_in, alpha_out], [alpha_out, alpha_in]] * log(n) / n``, split so
    that ``rho = max(|alpha_in|, |alpha_out|) * log(n) / n`` and P has unit
    maximum absolute entry.  Equal magnitudes make the matrix singular and
    are rejected.
    """
    n = int(n)
    if n < 3:
        raise InvalidModelError(f"n must be at least 3, got {n}")
    alpha_in, alpha_out = float(alpha_in), float(alpha_out)
    if not (math.isfinite(alpha_in) and math.isfinite(alpha_out)):
        raise InvalidModelError("alpha_in and alpha_out must be finite")
    scale = max(abs(alpha_in), abs(alpha_out))
    if abs(alpha_in) == abs(alpha_out):
        raise InvalidModelError(
            f"|alpha_in| = |alpha_out| = {scale} makes the scaled connectivity singular"
        )
    rho = scale * math.log(n) / n
    P = np.array([[alpha_in, alpha_out], [alpha_out, alpha_in]]) / scale
    return P, rho
