"""Eigenvalue-cluster search and Gram matrix reconstruction.

Given the adjacency matrix of a graph sampled from an inner-product kernel
on S^{d-1}, the d eigenvalues tied to the degree-1 spherical harmonics form
a tight cluster that is well separated from the rest of the spectrum (the
top eigenvalue tracks the mean connectivity and is excluded).  The search
scans every window of d consecutive sorted eigenvalues starting at sorted
position 1 and picks the window with the largest separation from the
eigenvalues outside it; the corresponding eigenvectors V give the Gram
estimate (1/d) V V^T whose entries, scaled by n, estimate the latent inner
products <X_i, X_j>.

The scan is scale free, so the edge-density parameter rho is never needed
for estimation; it only enters the simulation-side diagnostics
(event_e_check, noise_bound).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ValidationError
from .model import edge_density, require_symmetric
from .spectral import SortedSpectrum, normalize_adjacency, symmetric_eig


@dataclass(frozen=True)
class ClusterSelection:
    """A window of d consecutive sorted eigenvalue positions (never position 0)."""

    d: int
    start: int
    indices: tuple[int, ...]
    gap: float
    diameter: float


@dataclass(frozen=True)
class GramEstimate:
    """Rank-d projector estimate of the population Gram matrix."""

    matrix: np.ndarray
    d: int
    cluster: ClusterSelection
    scale: float


@dataclass(frozen=True)
class EventEReport:
    """Cluster-quality check: diameter below and separation above rho*gap/2."""

    ok: bool
    diameter: float
    gap: float
    threshold: float


@dataclass(frozen=True)
class HeicDiagnostics:
    gap: float
    diameter: float
    cluster_start: int
    top_eigenvalue: float
    edge_density: float
    degenerate: bool
    event_e: Optional[EventEReport] = None


def left_gap(spec: SortedSpectrum, i: int) -> float:
    """|values[i] - values[i-1]| on the sorted spectrum, for 1 <= i <= n-1."""
    if not 1 <= i <= spec.n - 1:
        raise ValidationError(f"left gap index must lie in [1, {spec.n - 1}], got {i}")
    return abs(float(spec.values[i] - spec.values[i - 1]))


def right_gap(spec: SortedSpectrum, i: int) -> float:
    """left_gap(i + 1), for 0 <= i <= n-2."""
    if not 0 <= i <= spec.n - 2:
        raise ValidationError(f"right gap index must lie in [0, {spec.n - 2}], got {i}")
    return left_gap(spec, i + 1)


def cluster_gap(spec: SortedSpectrum, i: int, d: int) -> float:
    """Separation of the window {i, ..., i+d-1} from the rest of the spectrum.

    The window never contains sorted position 0 (the top eigenvalue tracks
    the mean connectivity, not the degree-1 harmonics).  For a window
    ending at the last position the right-hand term disappears.
    """
    if d < 1:
        raise ValidationError(f"cluster size must be >= 1, got {d}")
    if not 1 <= i <= spec.n - d:
        raise ValidationError(
            f"window start must lie in [1, {spec.n - d}] for d={d}, got {i}"
        )
    left = left_gap(spec, i)
    if i + d <= spec.n - 1:
        return min(left, left_gap(spec, i + d))
    return left


def find_cluster(spec: SortedSpectrum, d: int) -> ClusterSelection:
    """Window of d consecutive sorted eigenvalues with the largest separation.

    Linear scan over start positions 1 .. n-d; ties return the smallest
    start index.  The achieved gap is the spectrum's size-d cluster score.
    """
    if d < 1:
        raise ValidationError(f"cluster size must be >= 1, got {d}")
    if spec.n < d + 2:
        raise ValidationError(f"need at least d + 2 = {d + 2} eigenvalues, got {spec.n}")
    best_start, best_gap = 1, -math.inf
    for i in range(1, spec.n - d + 1):
        g = cluster_gap(spec, i, d)
        if g > best_gap:
            best_start, best_gap = i, g
    indices = tuple(range(best_start, best_start + d))
    window = spec.values[best_start : best_start + d]
    return ClusterSelection(
        d=d,
        start=best_start,
        indices=indices,
        gap=float(best_gap),
        diameter=float(window[0] - window[-1]),
    )


def gram_estimate(spec: SortedSpectrum, cluster: ClusterSelection) -> GramEstimate:
    """(1/d) V V^T over the selected eigenvectors; trace 1, PSD, rank <= d."""
    if cluster.indices[-1] >= spec.n or cluster.start < 1:
        raise ValidationError("cluster does not fit the spectrum")
    v = spec.vectors[:, list(cluster.indices)]
    g = v @ v.T / cluster.d
    return GramEstimate(matrix=(g + g.T) / 2.0, d=cluster.d, cluster=cluster, scale=1.0 / cluster.d)


def event_e_check(
    spec: SortedSpectrum, cluster: ClusterSelection, gap_analytic: float, rho: float
) -> EventEReport:
    """Simulation-side check that the selected cluster looks like the true one.

    Requires the analytic spectral gap of the generating link, so it is
    only available when the model is known: diameter < rho*gap/2 and
    separation >= rho*gap/2.
    """
    if gap_analytic <= 0:
        raise ValidationError("analytic gap must be positive for the cluster check")
    threshold = rho * gap_analytic / 2.0
    ok = cluster.diameter < threshold and cluster.gap >= threshold
    return EventEReport(ok=ok, diameter=cluster.diameter, gap=cluster.gap, threshold=threshold)


def noise_bound(theta, alpha: float) -> float:
    """Heuristic high-probability bound on ||observed/n - theta/n||_op.

    3*sqrt(2*D0)/n + sqrt(log(n/alpha))/n with D0 the largest row sum of
    theta*(1-theta).  The universal constant on the second term is not
    pinned by theory; it is fixed to 1 here, so treat the value as a
    diagnostic scale, not a certified bound.
    """
    arr = require_symmetric(theta, "probability matrix")
    if not 0.0 < alpha < 1.0:
        raise ValidationError(f"alpha must lie in (0, 1), got {alpha}")
    n = arr.shape[0]
    d0 = float((arr * (1.0 - arr)).sum(axis=1).max())
    return 3.0 * math.sqrt(2.0 * d0) / n + math.sqrt(math.log(n / alpha)) / n


def heic(
    adjacency,
    d: int,
    *,
    rho: Optional[float] = None,
    analytic_gap: Optional[float] = None,
) -> tuple[GramEstimate, HeicDiagnostics]:
    """Full pipeline: normalize, eigendecompose, locate the cluster, project.

    When both rho and the analytic gap of the generating link are supplied
    (simulation studies), the diagnostics carry the cluster-quality check.
    A zero separation score marks the estimate as degenerate (e.g. the
    empty graph), signalled in the diagnostics rather than raised.
    """
    adjacency = require_symmetric(adjacency, "adjacency")
    spec = symmetric_eig(normalize_adjacency(adjacency))
    cluster = find_cluster(spec, d)
    estimate = gram_estimate(spec, cluster)
    event_e = None
    if rho is not None and analytic_gap is not None:
        event_e = event_e_check(spec, cluster, analytic_gap, rho)
    diagnostics = HeicDiagnostics(
        gap=cluster.gap,
        diameter=cluster.diameter,
        cluster_start=cluster.start,
        top_eigenvalue=float(spec.values[0]),
        edge_density=edge_density(adjacency),
        degenerate=cluster.gap <= 0.0,
        event_e=event_e,
    )
    return estimate, diagnostics
