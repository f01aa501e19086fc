"""Analytic spectrum of inner-product kernels on the sphere S^{d-1}.

A kernel W(x, y) = f(<x, y>) acts on L2 of the sphere as a convolution
operator whose eigenfunctions are the spherical harmonics.  Level k
contributes one eigenvalue lambda_k with multiplicity dim_k, and lambda_k
is a one-dimensional weighted integral of f against the normalized
Gegenbauer polynomial of degree k:

    lambda_k = A_d * int_{-1}^{1} f(t) * (G_k(t) / G_k(1)) * (1 - t^2)^{(d-3)/2} dt

with A_d fixed so the weight is a probability measure (hence lambda_0 is
the mean connectivity).  Integrals are evaluated in the angle variable
t = cos(theta), which turns the weight into sin(theta)^{d-2} and keeps the
integrand smooth away from declared link discontinuities; an adaptive
Gauss-Legendre scheme splits there and bisects until the absolute
tolerance is met.

Only d >= 3 is supported: the Gegenbauer parameter gamma = (d - 2) / 2
must be positive for the recurrence and the addition constant c_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import QuadratureError, ValidationError
from .links import LinkFunction

DEFAULT_K_MAX = 25


def _require_dim(d: int) -> float:
    if d < 3:
        raise ValidationError(f"sphere machinery needs ambient dimension d >= 3, got {d}")
    return (d - 2) / 2.0


def harmonic_space_dim(d: int, k: int) -> int:
    """Dimension of the degree-k spherical harmonic space on S^{d-1}."""
    _require_dim(d)
    if k < 0:
        raise ValidationError(f"level index must be >= 0, got {k}")
    if k == 0:
        return 1
    second = math.comb(k + d - 3, k - 2) if k >= 2 else 0
    return math.comb(k + d - 1, k) - second


def addition_constant(d: int, k: int) -> Fraction:
    """Constant c_k = (2k + d - 2) / (d - 2) in the addition identity."""
    _require_dim(d)
    if k < 0:
        raise ValidationError(f"level index must be >= 0, got {k}")
    return Fraction(2 * k + d - 2, d - 2)


def gegenbauer(k: int, gamma: float, t):
    """Gegenbauer polynomial of degree k with parameter gamma > 0.

    Three-term recurrence anchored at G_0 = 1 and G_1 = 2*gamma*t:
        j * G_j(t) = 2(j + gamma - 1) t G_{j-1}(t) - (j + 2*gamma - 2) G_{j-2}(t).
    Accepts scalar or array t in [-1, 1].
    """
    if gamma <= 0:
        raise ValidationError(f"Gegenbauer parameter must be positive, got {gamma}")
    if k < 0:
        raise ValidationError(f"degree must be >= 0, got {k}")
    arr = np.asarray(t, dtype=float)
    if arr.size and float(np.abs(arr).max()) > 1.0 + 1e-12:
        raise ValidationError("Gegenbauer argument outside [-1, 1]")
    arr = np.clip(arr, -1.0, 1.0)
    prev = np.ones_like(arr)
    if k == 0:
        return float(prev) if prev.ndim == 0 else prev
    cur = 2.0 * gamma * arr
    for j in range(2, k + 1):
        cur, prev = (2.0 * (j + gamma - 1.0) * arr * cur - (j + 2.0 * gamma - 2.0) * prev) / j, cur
    return float(cur) if cur.ndim == 0 else cur


def normalized_gegenbauer(k: int, gamma: float, t):
    """G_k(t) / G_k(1), the polynomial that is 1 at t = 1."""
    at_one = gegenbauer(k, gamma, 1.0)
    return gegenbauer(k, gamma, t) / at_one


def sphere_weight_total(d: int) -> float:
    """int_0^pi sin(theta)^{d-2} d(theta) = sqrt(pi) Gamma((d-1)/2) / Gamma(d/2)."""
    _require_dim(d)
    return math.sqrt(math.pi) * math.gamma((d - 1) / 2.0) / math.gamma(d / 2.0)


@dataclass(frozen=True)
class QuadratureConfig:
    """Adaptive Gauss-Legendre settings: absolute tolerance and panel budget."""

    tol: float = 1e-10
    max_panels: int = 2 ** 14
    nodes: int = 16


DEFAULT_QUADRATURE = QuadratureConfig()

_GL_NODES: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl_rule(m: int) -> tuple[np.ndarray, np.ndarray]:
    if m not in _GL_NODES:
        _GL_NODES[m] = np.polynomial.legendre.leggauss(m)
    return _GL_NODES[m]


def _adaptive_integral(
    fn, segments, quad: QuadratureConfig, min_degree: int = 0
) -> tuple[float, float]:
    """Integrate fn over the given segments by bisection until |I2 - I1| <= tol.

    min_degree pre-partitions each segment finely enough that the panel rule
    resolves an oscillation of that polynomial degree; without it, a coarse
    panel and its bisection can alias an oscillatory integrand to the same
    wrong value and accept.  The tolerance is allocated proportionally to
    interval width; the panel budget is shared across all segments.  Raises
    QuadratureError carrying the best running estimate when the budget is
    exhausted.
    """
    x, w = _gl_rule(quad.nodes)
    total_width = sum(b - a for a, b in segments)

    def panel(a: float, b: float) -> float:
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        return half * float(w @ fn(mid + half * x))

    panels = 0
    value = 0.0
    err = 0.0
    for a, b in segments:
        if b <= a:
            continue
        pieces = 1 + max(0, min_degree) // (2 * quad.nodes)
        edges = np.linspace(a, b, pieces + 1)
        stack = [(lo, hi, panel(lo, hi)) for lo, hi in zip(edges[:-1], edges[1:])]
        panels += pieces
        while stack:
            lo, hi, coarse = stack.pop()
            mid = 0.5 * (lo + hi)
            left, right = panel(lo, mid), panel(mid, hi)
            panels += 2
            fine = left + right
            local_err = abs(fine - coarse)
            local_tol = quad.tol * (hi - lo) / total_width
            if local_err <= local_tol or (hi - lo) < 4.0 * np.finfo(float).eps:
                value += fine
                err += local_err
            elif panels >= quad.max_panels:
                best = value + fine + sum(c for _, _, c in stack)
                raise QuadratureError(
                    f"quadrature did not converge within {quad.max_panels} panels",
                    best_estimate=best,
                    error_estimate=err + local_err,
                )
            else:
                stack.append((lo, mid, left))
                stack.append((mid, hi, right))
    return value, err


def _angle_segments(link: LinkFunction) -> list[tuple[float, float]]:
    cuts = sorted(
        {math.acos(t) for t in link.discontinuities if -1.0 < t < 1.0} | {0.0, math.pi}
    )
    return list(zip(cuts[:-1], cuts[1:]))


def funck_hecke_eigenvalue(
    link: LinkFunction, d: int, k: int, quad: QuadratureConfig = DEFAULT_QUADRATURE
) -> tuple[float, float]:
    """Level-k eigenvalue of the kernel operator and its quadrature error estimate."""
    gamma = _require_dim(d)
    if k < 0:
        raise ValidationError(f"level index must be >= 0, got {k}")
    at_one = gegenbauer(k, gamma, 1.0)
    power = d - 2

    def integrand(theta):
        t = np.cos(theta)
        return link(t) * (gegenbauer(k, gamma, t) / at_one) * np.sin(theta) ** power

    raw, raw_err = _adaptive_integral(integrand, _angle_segments(link), quad, min_degree=k)
    norm = sphere_weight_total(d)
    return raw / norm, raw_err / norm


def funck_hecke_table(
    link: LinkFunction, d: int, k_max: int, quad: QuadratureConfig = DEFAULT_QUADRATURE
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of all levels 0 .. k_max in one pass.

    A composite Gauss-Legendre rule shares its nodes across levels, so the
    Gegenbauer recurrence runs once per node-doubling stage instead of once
    per level; the per-level error estimate is the change under the final
    node doubling.  Equal to funck_hecke_eigenvalue level by level, only
    cheaper for large k_max.
    """
    gamma = _require_dim(d)
    if k_max < 0:
        raise ValidationError(f"k_max must be >= 0, got {k_max}")
    segments = _angle_segments(link)
    x, w = _gl_rule(quad.nodes)
    power = d - 2
    norm = sphere_weight_total(d)

    def eval_levels(pieces: int) -> np.ndarray:
        vals = np.zeros(k_max + 1)
        for a, b in segments:
            edges = np.linspace(a, b, pieces + 1)
            mids = 0.5 * (edges[:-1] + edges[1:])
            halfs = 0.5 * (edges[1:] - edges[:-1])
            theta = (mids[:, None] + halfs[:, None] * x[None, :]).ravel()
            weights = (halfs[:, None] * w[None, :]).ravel()
            t = np.cos(theta)
            base = link(t) * np.sin(theta) ** power * weights
            prev = np.ones_like(t)
            prev_at_one = 1.0
            vals[0] += float(base @ prev)
            if k_max >= 1:
                cur = 2.0 * gamma * t
                cur_at_one = 2.0 * gamma
                vals[1] += float(base @ cur) / cur_at_one
                for k in range(2, k_max + 1):
                    cur, prev = (
                        (2.0 * (k + gamma - 1.0) * t * cur - (k + 2.0 * gamma - 2.0) * prev) / k,
                        cur,
                    )
                    cur_at_one, prev_at_one = (
                        (2.0 * (k + gamma - 1.0) * cur_at_one - (k + 2.0 * gamma - 2.0) * prev_at_one) / k,
                        cur_at_one,
                    )
                    vals[k] += float(base @ cur) / cur_at_one
        return vals / norm

    pieces = 1 + (k_max + 2 * quad.nodes) // (2 * quad.nodes)
    values = eval_levels(pieces)
    while True:
        pieces *= 2
        if pieces * len(segments) > quad.max_panels:
            raise QuadratureError(
                f"level table did not converge within {quad.max_panels} panels",
                best_estimate=float(np.abs(values).max()),
                error_estimate=float("nan"),
            )
        refined = eval_levels(pieces)
        errors = np.abs(refined - values)
        values = refined
        if float(errors.max()) <= quad.tol:
            return values, errors


@dataclass(frozen=True)
class SpectrumLevel:
    k: int
    eigenvalue: float
    multiplicity: int
    quad_err: float


@dataclass(frozen=True)
class AnalyticSpectrum:
    """Eigenvalues of the kernel operator, per harmonic level, up to k_max.

    Levels beyond k_max are represented by the accumulation point 0 in the
    flattened view and in gap computations.
    """

    d: int
    link_label: str
    levels: tuple[SpectrumLevel, ...]
    k_max: int

    def eigenvalue(self, k: int) -> float:
        return self.levels[k].eigenvalue

    def eigenvalues(self) -> np.ndarray:
        """Per-level eigenvalues, index k = 0 .. k_max."""
        return np.array([lv.eigenvalue for lv in self.levels])

    def flattened(self) -> np.ndarray:
        """The eigenvalue multiset: level k repeated dim_k times."""
        return np.repeat(
            [lv.eigenvalue for lv in self.levels], [lv.multiplicity for lv in self.levels]
        )


def analytic_spectrum(
    link: LinkFunction,
    d: int,
    k_max: int = DEFAULT_K_MAX,
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
) -> AnalyticSpectrum:
    """Compute levels 0 .. k_max of the kernel spectrum by quadrature."""
    if k_max < 1:
        raise ValidationError(f"k_max must be >= 1, got {k_max}")
    values, errors = funck_hecke_table(link, d, k_max, quad)
    levels = [
        SpectrumLevel(
            k=k,
            eigenvalue=float(values[k]),
            multiplicity=harmonic_space_dim(d, k),
            quad_err=float(errors[k]),
        )
        for k in range(k_max + 1)
    ]
    return AnalyticSpectrum(d=d, link_label=link.describe(), levels=tuple(levels), k_max=k_max)


def gap1_analytic(spectrum: AnalyticSpectrum) -> float:
    """Distance from the level-1 eigenvalue to the rest of the spectrum.

    The tail beyond k_max is represented by 0, the spectrum's only
    accumulation point, so the gap is also bounded by |lambda_1|.
    """
    if spectrum.k_max < 2:
        raise ValidationError("gap needs a spectrum computed to k_max >= 2")
    lam1 = spectrum.eigenvalue(1)
    others = [lv.eigenvalue for lv in spectrum.levels if lv.k != 1]
    others.append(0.0)
    return float(min(abs(lam1 - x) for x in others))


def sobolev_norm(
    link: LinkFunction,
    d: int,
    s: float,
    k_max: int = DEFAULT_K_MAX,
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
) -> tuple[float, bool]:
    """Weighted Sobolev series of f, truncated at k_max.

    Returns the partial sum sum_k dim_k * lambda_k^2 * (1 + k(k + 2*gamma + 1))^s
    and a flag set when the last three levels still carry more than 1e-6 of
    the total mass, i.e. the series has not visibly converged.
    """
    gamma = _require_dim(d)
    if s < 0:
        raise ValidationError(f"regularity must be >= 0, got {s}")
    if k_max < 3:
        raise ValidationError(f"k_max must be >= 3 to judge the tail, got {k_max}")
    terms = []
    for k in range(k_max + 1):
        lam, _ = funck_hecke_eigenvalue(link, d, k, quad)
        weight = (1.0 + k * (k + 2.0 * gamma + 1.0)) ** s
        terms.append(harmonic_space_dim(d, k) * lam * lam * weight)
    value = float(sum(terms))
    tail = float(sum(terms[-3:]))
    tail_flag = value > 0.0 and tail > 1e-6 * value
    return value, tail_flag
