"""Serialization: dense CSV matrices, sparse TSV edge lists, model JSON.

Matrices round-trip through 17-significant-digit decimals; edge lists store
1-indexed (row, col, weight) triples with zeros omitted and a shape header
so empty trailing rows or columns survive the round trip.
"""

from __future__ import annotations

import json

import numpy as np

from .model import ModelSpec
from .sampler import EdgeDistribution

SHAPE_HEADER = "% shape:"


def save_matrix_csv(M: np.ndarray, path) -> None:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    np.savetxt(path, M, fmt="%.17g", delimiter=",")


def load_matrix_csv(path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2)


def save_edges_tsv(A: np.ndarray, path) -> None:
    """Write a dense matrix as ``row<TAB>col<TAB>weight`` lines, 1-indexed."""
    A = np.asarray(A, dtype=float)
    with open(path, "w", newline="\n") as fh:
        fh.write(f"{SHAPE_HEADER} {A.shape[0]} {A.shape[1]}\n")
        for i in range(A.shape[0]):
            for j in range(A.shape[1]):
                if A[i, j] != 0.0:
                    fh.write(f"{i + 1}\t{j + 1}\t{float(A[i, j])!r}\n")


def load_edges_tsv(path) -> np.ndarray:
    """Read a TSV edge list back into a dense matrix.

    The shape header is honored when present; otherwise the matrix is sized
    by the largest indices encountered.
    """
    shape = None
    triples = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith(SHAPE_HEADER):
                parts = line[len(SHAPE_HEADER) :].split()
                shape = (int(parts[0]), int(parts[1]))
                continue
            if line.startswith("%") or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 3 tab-separated columns: {line!r}")
            triples.append((int(parts[0]), int(parts[1]), float(parts[2])))
    if shape is None:
        if not triples:
            raise ValueError("edge list is empty and carries no shape header")
        shape = (max(t[0] for t in triples), max(t[1] for t in triples))
    A = np.zeros(shape)
    for i, j, w in triples:
        A[i - 1, j - 1] = w
    return A


def spec_to_dict(spec: ModelSpec) -> dict:
    return {
        "n_r": spec.n_r,
        "n_c": spec.n_c,
        "K": spec.K,
        "rho": spec.rho,
        "P": spec.P.tolist(),
        "Pi_r": spec.Pi_r.tolist(),
        "Pi_c": spec.Pi_c.tolist(),
        "dist": spec.dist.to_dict(),
    }


def spec_from_dict(data: dict) -> ModelSpec:
    return ModelSpec(
        P=np.asarray(data["P"], dtype=float),
        rho=float(data["rho"]),
        Pi_r=np.asarray(data["Pi_r"], dtype=float),
        Pi_c=np.asarray(data["Pi_c"], dtype=float),
        dist=EdgeDistribution.from_dict(data["dist"]),
    )


def save_spec_json(spec: ModelSpec, path) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(spec_to_dict(spec), fh, indent=2)
        fh.write("\n")


def load_spec_json(path) -> ModelSpec:
    with open(path) as fh:
        return spec_from_dict(json.load(fh))
