"""Generative model: latent points on the sphere and Bernoulli graphs.

The sampling pipeline has two seeded stages.  First n latent points are
drawn uniformly on the unit sphere S^{d-1}; they fix the population Gram
matrix G = (1/n) <X_i, X_j> and the probability matrix
Theta_ij = rho * f(<X_i, X_j>).  Second, conditional on Theta, the observed
adjacency matrix has independent Bernoulli(Theta_ij) entries above the
diagonal.  Diagonals of Theta and the adjacency are fixed to 0 (simple
graph, no self-loops).

All matrices here are plain dense numpy arrays, kept exactly symmetric by
construction.  Operations are pure: identical inputs and seed reproduce the
output bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .links import LinkFunction

UNIT_NORM_TOL = 1e-12
PROB_SLACK = 1e-12


@dataclass(frozen=True)
class LatentSample:
    """n latent positions as unit rows of an (n, d) matrix."""

    dim: int
    points: np.ndarray
    seed: int

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2:
            raise ValidationError("latent points must form an (n, d) matrix")
        n, d = pts.shape
        if n < 1 or d < 2 or d != self.dim:
            raise ValidationError(f"invalid latent sample shape ({n}, {d}) for dim={self.dim}")
        norms = np.linalg.norm(pts, axis=1)
        if np.any(np.abs(norms - 1.0) > UNIT_NORM_TOL):
            raise ValidationError("latent rows must be unit vectors within 1e-12")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class GraphModel:
    """A link function plus the global edge-density scale rho in (0, 1].

    The relatively sparse regime rho = Omega(log n / n) is a guideline for
    meaningful estimation, not an enforced bound.
    """

    link: LinkFunction
    sparsity: float
    n: int

    def __post_init__(self):
        if not (0.0 < self.sparsity <= 1.0):
            raise ValidationError(f"sparsity must lie in (0, 1], got {self.sparsity}")
        if self.n < 1:
            raise ValidationError("node count must be >= 1")


def _symmetrize(m: np.ndarray) -> np.ndarray:
    """Exact symmetry: averaging with the transpose is commutative per entry."""
    return (m + m.T) / 2.0


def require_symmetric(m, name: str = "matrix", tol: float = 1e-10) -> np.ndarray:
    """Validate a dense square symmetric matrix and return it as float64."""
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {arr.shape}")
    scale = max(1.0, float(np.abs(arr).max()) if arr.size else 1.0)
    if float(np.abs(arr - arr.T).max()) > tol * scale:
        raise ValidationError(f"{name} is not symmetric")
    return arr


def sample_uniform_sphere(n: int, d: int, seed: int) -> LatentSample:
    """Draw n points uniformly on S^{d-1}: normalized independent Gaussians."""
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    if d < 2:
        raise ValidationError(f"need ambient dimension d >= 2, got {d}")
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((n, d))
    norms = np.linalg.norm(pts, axis=1)
    # A exactly-zero Gaussian row has probability zero but would poison the
    # normalization; redraw such rows from the same stream.
    while np.any(norms == 0.0):
        bad = norms == 0.0
        pts[bad] = rng.standard_normal((int(bad.sum()), d))
        norms = np.linalg.norm(pts, axis=1)
    pts /= norms[:, None]
    return LatentSample(dim=d, points=pts, seed=int(seed))


def inner_products(sample: LatentSample) -> np.ndarray:
    """Pairwise inner products <X_i, X_j>, exactly symmetric, clipped to [-1, 1]."""
    t = _symmetrize(sample.points @ sample.points.T)
    return np.clip(t, -1.0, 1.0)


def gram_population(sample: LatentSample) -> np.ndarray:
    """Population Gram matrix G with G_ij = <X_i, X_j> / n."""
    return inner_products(sample) / sample.n


def probability_matrix(sample: LatentSample, model: GraphModel) -> np.ndarray:
    """Theta with Theta_ij = rho * f(<X_i, X_j>) off-diagonal, 0 on the diagonal."""
    if model.n != sample.n:
        raise ValidationError(f"model.n={model.n} does not match sample n={sample.n}")
    theta = model.sparsity * model.link(inner_products(sample))
    np.fill_diagonal(theta, 0.0)
    return theta


def sample_adjacency(theta, seed: int) -> np.ndarray:
    """Bernoulli adjacency: independent upper-triangle coin flips with means Theta.

    Symmetric 0/1 float matrix with zero diagonal; deterministic per seed.
    """
    theta = require_symmetric(theta, "probability matrix")
    if theta.size and (theta.min() < -PROB_SLACK or theta.max() > 1.0 + PROB_SLACK):
        raise ValidationError("probability matrix entries must lie in [0, 1]")
    n = theta.shape[0]
    rng = np.random.default_rng(seed)
    u = rng.random((n, n))
    upper = np.triu(u < np.clip(theta, 0.0, 1.0), k=1).astype(float)
    return upper + upper.T


def edge_density(adj) -> float:
    """Fraction of the n(n-1)/2 possible edges that are present."""
    adj = require_symmetric(adj, "adjacency")
    n = adj.shape[0]
    if n < 2:
        raise ValidationError("edge density needs at least 2 nodes")
    if not np.all((adj == 0.0) | (adj == 1.0)):
        raise ValidationError("adjacency entries must be 0 or 1")
    edges = float(np.triu(adj, k=1).sum())
    return edges / (n * (n - 1) / 2.0)
