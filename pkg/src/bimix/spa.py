"""Successive projection: greedy selection of the rows spanning a simplex.

On input X = Pi @ B with row-stochastic Pi holding at least one pure row per
community and nonsingular B, the selected rows are exactly pure rows, one
per community.  Selection repeatedly takes the row with the largest residual
norm and deflates every row against it.
"""

from __future__ import annotations

import numpy as np

# residual norms at or below RESIDUAL_RTOL times the initial maximum norm
# signal rank deficiency
RESIDUAL_RTOL = 1e-12


class RankDeficientInputError(ValueError):
    """The residual collapsed before the requested number of selections."""


def spa(X: np.ndarray, K: int) -> tuple[int, ...]:
    """Select K vertex rows of X, in selection order.

    Ties in the maximum residual norm break toward the lowest row index.
    Raises RankDeficientInputError when the residual matrix runs out of mass
    before K rows are chosen.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("matrix contains non-finite entries")
    n = X.shape[0]
    K = int(K)
    if not (1 <= K <= n):
        raise ValueError(f"K={K} out of range [1, {n}]")

    R = X.copy()
    norms = np.sqrt((R * R).sum(axis=1))
    floor = RESIDUAL_RTOL * norms.max()
    selected: list[int] = []
    directions: list[np.ndarray] = []
    for _ in range(K):
        norms = np.sqrt((R * R).sum(axis=1))
        j = int(np.argmax(norms))  # first maximum: lowest-index tie rule
        if norms[j] <= floor:
            raise RankDeficientInputError(
                f"residual collapsed after {len(selected)} of {K} selections"
            )
        u = R[j].copy()
        # re-orthogonalize against earlier directions to limit drift
        for _ in range(2):
            for d in directions:
                u -= (u @ d) * d
        u /= np.linalg.norm(u)
        R -= np.outer(R @ u, u)
        directions.append(u)
        selected.append(j)
    return tuple(selected)


def vertex_matrix(X: np.ndarray, idx) -> np.ndarray:
    """Stack the cited rows of X in the given order."""
    X = np.asarray(X, dtype=float)
    idx = list(idx)
    for i in idx:
        if not (0 <= int(i) < X.shape[0]):
            raise IndexError(f"row index {i} out of range [0, {X.shape[0] - 1}]")
    return X[np.asarray(idx, dtype=int)].copy()
