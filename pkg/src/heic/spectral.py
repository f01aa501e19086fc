"""Dense symmetric eigendecomposition and the eigenvalue matching distance.

The estimator downstream consumes the full spectrum sorted in decreasing
order, so the wrapper here pairs sorted eigenvalues with their
eigenvectors and keeps the permutation back to the raw solver order.
Eigenvector signs (and bases within repeated eigenvalues) are arbitrary;
consumers must only use projector products V V^T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EigenSolverError, ValidationError
from .model import require_symmetric


@dataclass(frozen=True)
class SortedSpectrum:
    """Eigenvalues sorted decreasingly; column i of vectors pairs with values[i]."""

    values: np.ndarray
    vectors: np.ndarray
    source_order: np.ndarray

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @classmethod
    def from_values(cls, values) -> "SortedSpectrum":
        """Spectrum of diag(values): coordinate-axis eigenvectors, sorted."""
        vals = np.asarray(values, dtype=float).ravel()
        order = np.argsort(-vals, kind="stable")
        return cls(
            values=vals[order],
            vectors=np.eye(vals.size)[:, order],
            source_order=order,
        )


def symmetric_eig(m) -> SortedSpectrum:
    """Full eigendecomposition of a dense symmetric matrix, sorted decreasingly."""
    arr = require_symmetric(m, "matrix", tol=1e-8)
    try:
        raw_values, raw_vectors = np.linalg.eigh((arr + arr.T) / 2.0)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigendecomposition failed to converge: {exc}") from exc
    order = np.argsort(-raw_values, kind="stable")
    return SortedSpectrum(
        values=raw_values[order], vectors=raw_vectors[:, order], source_order=order
    )


def normalize_adjacency(adj) -> np.ndarray:
    """Divide every entry by the node count n."""
    arr = require_symmetric(adj, "adjacency")
    n = arr.shape[0]
    if n < 1:
        raise ValidationError("matrix must have at least one row")
    return arr / n


def delta_2(a, b) -> float:
    """Minimal L2 matching distance between two eigenvalue sequences.

    Both sequences are padded with zeros (the spectra at play accumulate at
    zero) to a common length long enough that every entry may match a zero;
    sorting both padded sequences decreasingly then attains the minimum over
    all index permutations.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    size = a.size + b.size
    if size == 0:
        return 0.0
    pa = np.zeros(size)
    pa[: a.size] = a
    pb = np.zeros(size)
    pb[: b.size] = b
    pa[::-1].sort()
    pb[::-1].sort()
    return float(np.linalg.norm(pa - pb))
