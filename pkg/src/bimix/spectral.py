"""Deterministic truncated singular value decomposition and community-count estimation.

The decomposition is a full LAPACK bidiagonalization SVD truncated to the
top K triples; working on the matrix directly (rather than its Gram matrix)
keeps small singular values accurate to machine precision relative to the
largest one.  Left singular vectors are oriented so their largest absolute
entry is positive, making serialized output reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

RATIO_FLOOR_RTOL = 1e-12


@dataclass(frozen=True)
class TruncatedSVD:
    """Top-K singular triple: orthonormal columns, nonincreasing values."""

    left: np.ndarray
    singular_values: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Best rank-K approximation ``left @ diag(values) @ right.T``."""
        return (self.left * self.singular_values) @ self.right.T


def _validate_input(A: np.ndarray, k: int, what: str) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix contains non-finite entries")
    if not (1 <= k <= min(A.shape)):
        raise ValueError(f"{what}={k} out of range [1, {min(A.shape)}]")
    return A


def _apply_sign_convention(U: np.ndarray, V: np.ndarray) -> None:
    for j in range(U.shape[1]):
        i = int(np.argmax(np.abs(U[:, j])))  # argmax ties break toward lower index
        if U[i, j] < 0.0:
            U[:, j] *= -1.0
            V[:, j] *= -1.0


def top_k_svd(A: np.ndarray, K: int) -> TruncatedSVD:
    """Top-K singular value decomposition of a dense matrix.

    Raises on non-finite input or K outside [1, min(n_r, n_c)]; LAPACK
    convergence failures propagate as LinAlgError.
    """
    A = _validate_input(A, K, "K")
    U, sv, Vt = np.linalg.svd(A, full_matrices=False)
    U = U[:, :K].copy()
    V = Vt[:K].T.copy()
    _apply_sign_convention(U, V)
    return TruncatedSVD(left=U, singular_values=sv[:K].copy(), right=V)


def singular_values(A: np.ndarray, k_max: int) -> np.ndarray:
    """Top ``k_max`` singular values of A, nonincreasing."""
    A = _validate_input(A, k_max, "k_max")
    return np.linalg.svd(A, compute_uv=False)[:k_max]


def estimate_k_eigengap(sigmas, method: str = "difference") -> int:
    """Community count suggested by the largest drop in the singular spectrum.

    ``difference`` maximizes sigma_k - sigma_{k+1}; ``ratio`` maximizes
    sigma_k / sigma_{k+1} with the denominator floored at 1e-12 * sigma_1.
    Ties break toward the smaller count.
    """
    sigmas = np.asarray(sigmas, dtype=float)
    if sigmas.ndim != 1 or len(sigmas) < 2:
        raise ValueError("need at least 2 singular values")
    if not sigmas[0] > 0.0:
        raise ValueError("leading singular value must be positive")
    if np.any(np.diff(sigmas) > RATIO_FLOOR_RTOL * sigmas[0]):
        raise ValueError("singular values must be nonincreasing")
    if method == "difference":
        gaps = sigmas[:-1] - sigmas[1:]
    elif method == "ratio":
        floor = RATIO_FLOOR_RTOL * sigmas[0]
        gaps = sigmas[:-1] / np.maximum(sigmas[1:], floor)
    else:
        raise ValueError(f"unknown method {method!r}; expected 'difference' or 'ratio'")
    return int(np.argmax(gaps)) + 1
