"""Distance-from-semigroup measure, Holevo-bound curves and entropies."""

import math
from dataclasses import dataclass

import numpy as np

from . import channels, maps, qmat
from .errors import DomainError, GeneratorSingularityError
from .quadrature import adaptive_simpson, ternary_search

MEASURE_CONVENTIONS = ("d-factor", "unit", "rate-distance")
QUAD_TOL = 1e-8
MIN_PANELS = 64
HULL_SAMPLES = 4097
ENTROPY_PSD_TOL = 1e-9

KET_PLUS = np.array([1.0, 1.0]) / math.sqrt(2.0)
KET_MINUS = np.array([1.0, -1.0]) / math.sqrt(2.0)


@dataclass(frozen=True)
class MeasureResult:
    value: float
    optimizer_rate: float
    convention: str
    quadrature_error_estimate: float
    T: float


@dataclass(frozen=True)
class HolevoPoint:
    t: float
    B: float


def von_neumann_entropy(rho):
    """Entropy in bits, with ``0 log 0 = 0``."""
    rho = qmat.as_matrix(rho)
    if abs(np.trace(rho) - 1.0) > 1e-9:
        raise DomainError("density matrix must have unit trace")
    w = qmat.hermitian_eig(rho).eigenvalues
    if w[-1] < -ENTROPY_PSD_TOL:
        raise DomainError(f"density matrix has negative eigenvalue {w[-1]:.3e}")
    w = w[w > 0]
    return float(max(0.0, -np.sum(w * np.log2(w))))


def holevo_bound(rho1, rho2):
    """``S((rho1 + rho2)/2) - (S(rho1) + S(rho2))/2`` in bits."""
    mix = 0.5 * (qmat.as_matrix(rho1) + qmat.as_matrix(rho2))
    return von_neumann_entropy(mix) - 0.5 * (von_neumann_entropy(rho1) + von_neumann_entropy(rho2))


def holevo_curve(fam, t_grid):
    """Holevo bound of ``|+>`` and ``|->`` evolved from ``t0 = 0``."""
    plus, minus = np.outer(KET_PLUS, KET_PLUS), np.outer(KET_MINUS, KET_MINUS)
    points = []
    for t in t_grid:
        a = maps.a_matrix(fam, t)
        points.append(HolevoPoint(float(t), holevo_bound(a.apply(plus), a.apply(minus))))
    return points


def _check_horizon(fam, T):
    T = float(T)
    if not (T > 0 and math.isfinite(T)):
        raise DomainError(f"horizon T must be positive and finite, got {T}")
    ts = channels.first_singularity(fam)
    if ts <= T:
        raise GeneratorSingularityError(
            f"{fam.name}: generator is singular at t={ts:.9g} inside (0, {T:.9g}]", ts
        )
    return T


def _integrand(fam, convention, c):
    if convention == "rate-distance":
        return lambda t: np.abs(channels.scalar_rate(fam, t) - c)
    base = channels.generator_choi(channels.rates_from_scalar(fam, 0.0), convention)
    direction = channels.generator_choi(channels.rates_from_scalar(fam, 1.0), convention) - base
    reference = base + c * direction

    def f(t):
        rates = channels.scalar_rate(fam, t)
        diff = base + rates[:, None, None] * direction - reference
        return qmat.trace_norm(diff)

    return f


def _average(fam, T, convention, c):
    value, err = adaptive_simpson(_integrand(fam, convention, c), 0.0, T, tol=QUAD_TOL, min_panels=MIN_PANELS)
    return value / T, err / T


def trace_norm_prefactor(fam, convention="d-factor"):
    """Trace norm of the generator-Choi change per unit change of the family's rate."""
    if convention == "rate-distance":
        return 1.0
    lo = channels.generator_choi(channels.rates_from_scalar(fam, 0.0), convention)
    hi = channels.generator_choi(channels.rates_from_scalar(fam, 1.0), convention)
    return float(qmat.trace_norm(hi - lo))


def rate_range(fam, T, samples=HULL_SAMPLES):
    """Sampled ``(min, max)`` of the family's time-dependent rate on ``[0, T]``."""
    rates = channels.scalar_rate(fam, np.linspace(0.0, T, samples))
    return float(rates.min()), float(rates.max())


def zeta(fam, T=1.0, convention="d-factor"):
    """Time-averaged trace distance to the closest semigroup generator.

    The semigroup generator keeps the family's fixed rates and varies the
    time-dependent one, ``c >= 0``. The objective is convex in ``c`` and its
    minimizer (a weighted median of the rate) lies in the rate's range, so
    the search runs on that range clipped to ``c >= 0``.
    """
    if convention not in MEASURE_CONVENTIONS:
        raise ValueError(f"convention must be one of {MEASURE_CONVENTIONS}, got {convention!r}")
    T = _check_horizon(fam, T)
    lo, hi = rate_range(fam, T)
    lo, hi = max(lo, 0.0), max(hi, 0.0)
    c, value = ternary_search(lambda x: _average(fam, T, convention, x)[0], lo, hi)
    value, err = _average(fam, T, convention, c)
    return MeasureResult(max(value, 0.0), float(c), convention, err, T)


def zeta_upper_bound(fam, T=1.0, convention="d-factor"):
    """Same objective with the semigroup rate fixed at the family's Markov limit."""
    if convention not in MEASURE_CONVENTIONS:
        raise ValueError(f"convention must be one of {MEASURE_CONVENTIONS}, got {convention!r}")
    T = _check_horizon(fam, T)
    rates = channels.qds_limit_rate(fam)
    c = rates.gamma if isinstance(rates, channels.ADRate) else rates.gamma3
    value, err = _average(fam, T, convention, c)
    return MeasureResult(max(value, 0.0), float(c), convention, err, T)


def rate_distance(fam, T=1.0):
    """``min_c (1/T) int_0^T |gamma(t) - c| dt`` over semigroup rates ``c >= 0``."""
    return zeta(fam, T, "rate-distance")
