"""DiSP: spectral estimation of row and column memberships from an adjacency matrix.

Pipeline: top-K SVD of A; vertex hunting on the rows of each singular-vector
matrix; inversion against the selected vertex rows; clamp negatives to zero;
normalize each row to sum 1.  Running it on the exact expectation matrix
recovers the planted memberships up to a column permutation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelSpec, build_omega
from .spa import spa, vertex_matrix
from .spectral import top_k_svd

COND_LIMIT = 1e12
DEGENERATE_ROW_TOL = 1e-12


class IllPosedFitError(RuntimeError):
    """The selected vertex rows are too close to singular to invert."""


@dataclass(frozen=True)
class FitResult:
    """Estimated memberships plus fit diagnostics."""

    Pi_r_hat: np.ndarray
    Pi_c_hat: np.ndarray
    singular_values: np.ndarray
    pure_rows: tuple[int, ...]
    pure_cols: tuple[int, ...]
    cond_row_vertices: float
    cond_col_vertices: float


def memberships_from_embedding(X: np.ndarray, K: int | None = None):
    """Vertex hunting plus simplex inversion on the rows of an embedding.

    Returns (memberships, selected vertex rows, condition number of the
    vertex matrix).  Rows whose clamped weights sum below ``1e-12`` get the
    uniform vector, since they carry no usable sign information.
    """
    X = np.asarray(X, dtype=float)
    k = X.shape[1] if K is None else int(K)
    idx = spa(X, k)
    B = vertex_matrix(X, idx)
    cond = float(np.linalg.cond(B))
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise IllPosedFitError(
            f"vertex matrix condition number {cond:.3e} exceeds {COND_LIMIT:.0e}"
        )
    # solve Y B = X column-block-wise instead of forming an explicit inverse
    Y = np.linalg.solve(B.T, X.T).T
    Y = np.maximum(Y, 0.0)
    sums = Y.sum(axis=1)
    degenerate = sums < DEGENERATE_ROW_TOL
    pi = np.empty_like(Y)
    pi[degenerate] = 1.0 / k
    ok = ~degenerate
    pi[ok] = Y[ok] / sums[ok, None]
    return pi, idx, cond


def disp(A: np.ndarray, K: int) -> FitResult:
    """Estimate row and column memberships of a bipartite weighted network."""
    tsvd = top_k_svd(A, K)
    pi_r, pure_rows, cond_r = memberships_from_embedding(tsvd.left, K)
    pi_c, pure_cols, cond_c = memberships_from_embedding(tsvd.right, K)
    return FitResult(
        Pi_r_hat=pi_r,
        Pi_c_hat=pi_c,
        singular_values=tsvd.singular_values,
        pure_rows=pure_rows,
        pure_cols=pure_cols,
        cond_row_vertices=cond_r,
        cond_col_vertices=cond_c,
    )


def ideal_disp(spec: ModelSpec) -> FitResult:
    """Fit on the exact expectation matrix; recovery is exact up to permutation."""
    return disp(build_omega(spec), spec.K)
