"""Latent dimension estimation by maximizing the cluster separation score.

For each candidate d the cluster search returns the best separation of any
d consecutive sorted eigenvalues; the candidate whose score is largest is
the dimension estimate.  One eigendecomposition serves all candidates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .estimator import find_cluster
from .spectral import SortedSpectrum, normalize_adjacency, symmetric_eig


@dataclass(frozen=True)
class DimensionScan:
    candidates: tuple[int, ...]
    scores: np.ndarray
    chosen: int


def scan_spectrum(spec: SortedSpectrum, candidates) -> DimensionScan:
    """Score each candidate d on an already-computed sorted spectrum."""
    candidates = tuple(int(d) for d in candidates)
    if not candidates:
        raise ValidationError("candidate set must not be empty")
    if any(d < 1 for d in candidates):
        raise ValidationError("candidate dimensions must be >= 1")
    if spec.n < max(candidates) + 2:
        raise ValidationError(
            f"spectrum of size {spec.n} too small for largest candidate {max(candidates)}"
        )
    scores = np.array([find_cluster(spec, d).gap for d in candidates])
    # np.argmax returns the first maximum, so ties pick the smallest d when
    # candidates are increasing (the default 1..d_max grid).
    chosen = candidates[int(np.argmax(scores))]
    return DimensionScan(candidates=candidates, scores=scores, chosen=chosen)


def estimate_dimension(adjacency, d_max: int = 15, candidates=None) -> DimensionScan:
    """Scan candidate dimensions (default 1 .. d_max) on an adjacency matrix."""
    if candidates is None:
        if d_max < 1:
            raise ValidationError(f"d_max must be >= 1, got {d_max}")
        candidates = range(1, d_max + 1)
    spec = symmetric_eig(normalize_adjacency(adjacency))
    return scan_spectrum(spec, candidates)
