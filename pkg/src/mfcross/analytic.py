"""Eigenvector-component distributions and multifractal dimensions.

Closed forms for the orthogonal (OE) and unitary (UE) invariant classes
and semi-analytic quadrature formulas for the ensemble interpolating
between them.  The interpolation is controlled by a single rescaled
parameter ``epsilon``; epsilon -> 0 recovers the orthogonal statistics
and epsilon -> infinity the unitary ones.

All component intensities are rescaled as x = N |c_i|^2, so a fully
ergodic vector has <x> = 1 by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import (
    DEFAULT_ABS_TOL,
    DEFAULT_REL_TOL,
    LOG_FLOOR,
    DomainError,
    digamma,
    integrate_adaptive,
    ln_gamma,
    tricomi_u_ln,
)

__all__ = [
    "CrossoverParam",
    "FractalDimensionPoint",
    "pdf_oe_finite",
    "pdf_ue_finite",
    "pdf_oe_limit",
    "pdf_ue_limit",
    "pdf_crossover",
    "pdf_crossover_log",
    "moment_crossover",
    "xlogx_crossover",
    "d_q_crossover",
    "s_q_inf_crossover",
    "d_q_oe",
    "d_q_ue",
    "s_q_inf_oe",
    "s_q_inf_ue",
    "crossover_cdf_grid",
    "sample_crossover",
]

_EULER_GAMMA = float(np.euler_gamma)
_HALF_LN_PI = 0.5 * math.log(math.pi)


@dataclass(frozen=True)
class CrossoverParam:
    """Rescaled symmetry-breaking strength; 0 = orthogonal, inf = unitary."""

    epsilon: float

    def __post_init__(self):
        if self.epsilon < 0:
            raise DomainError("epsilon must be >= 0")


@dataclass(frozen=True)
class FractalDimensionPoint:
    """One finite-size fractal dimension value D_q at dimension n_dim."""

    q: float
    n_dim: int
    value: float


def _eps_value(eps) -> float:
    """Accept either a CrossoverParam or a bare float."""
    value = float(getattr(eps, "epsilon", eps))
    if value <= 0:
        raise DomainError("crossover formulas require epsilon > 0")
    return value


# ---------------------------------------------------------------------------
# Component distributions of the pure symmetry classes
# ---------------------------------------------------------------------------

def pdf_oe_finite(x, n_dim: int):
    """Finite-N density of x = N|c|^2 for the orthogonal class.

    Gamma(N/2) (1 - x/N)^((N-3)/2) / (Gamma((N-1)/2) sqrt(pi N x)):
    the normalized form whose N -> inf limit is the beta=1
    Porter-Thomas law.  Diverges integrably as 1/sqrt(x) at x = 0
    (returns +inf there).
    """
    if n_dim < 3:
        raise DomainError("orthogonal finite-N pdf requires n_dim >= 3")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(x > n_dim):
        raise DomainError("x must lie in [0, n_dim]")
    ln_norm = (
        -0.5 * math.log(n_dim)
        + ln_gamma(n_dim / 2.0)
        - ln_gamma((n_dim - 1) / 2.0)
        - _HALF_LN_PI
    )
    with np.errstate(divide="ignore"):
        ln_x = np.log(x)
        ln_body = np.where(
            x < n_dim,
            0.5 * (n_dim - 3) * np.log1p(-x / n_dim),
            -np.inf if n_dim > 3 else 0.0,
        )
    out = np.exp(ln_norm + ln_body - 0.5 * ln_x)
    out = np.where(x == 0, np.inf, out)
    return float(out) if out.ndim == 0 else out


def pdf_ue_finite(x, n_dim: int):
    """Finite-N density of x = N|c|^2 for the unitary class.

    ((N-1)/N) (1 - x/N)^(N-2): the normalized form whose N -> inf limit
    is the beta=2 Porter-Thomas law e^(-x).
    """
    if n_dim < 2:
        raise DomainError("unitary finite-N pdf requires n_dim >= 2")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(x > n_dim):
        raise DomainError("x must lie in [0, n_dim]")
    out = (n_dim - 1.0) / n_dim * (1.0 - x / n_dim) ** (n_dim - 2)
    return float(out) if out.ndim == 0 else out


def pdf_oe_limit(x):
    """Large-N (Porter-Thomas, beta=1) limit: exp(-x/2)/sqrt(2 pi x)."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.where(x > 0, np.exp(-x / 2.0) / np.sqrt(2.0 * np.pi * x), np.inf)
    return float(out) if out.ndim == 0 else out


def pdf_ue_limit(x):
    """Large-N (Porter-Thomas, beta=2) limit: exp(-x)."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-x)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Crossover distribution and its moments
# ---------------------------------------------------------------------------

def _phi_split_points(eps: float) -> list[float]:
    # The integrand varies on scale sqrt(eps) near the endpoints (small
    # eps) and concentrates in a 1/sqrt(eps) window around pi/2 (large
    # eps); seed the subdivision accordingly.
    pts = {0.5 * math.pi}
    layer = math.sqrt(eps)
    if layer < 0.5 * math.pi:
        pts.add(layer)
        pts.add(math.pi - layer)
    if eps > 9.0:
        width = 3.0 / math.sqrt(eps)
        pts.add(0.5 * math.pi - width)
        pts.add(0.5 * math.pi + width)
    return sorted(pts)


def _pdf_crossover_scalar(eps, x, abs_tol, rel_tol):
    if x < 0:
        raise DomainError("x must be >= 0")
    # P(eps, x) = eps e^eps/(2 sqrt(pi)) * int_0^pi dphi
    #   exp(-g csc^2 phi) (2 g csc^2 phi + 1) / g^(3/2),
    # with g = eps + 2 x sin^2(phi/2).  The prefactor e^eps is folded
    # into the integrand exponent: g csc^2 phi >= eps guarantees the
    # combined exponent is <= 0, so nothing overflows.
    ln_pref = math.log(eps) - math.log(2.0) - _HALF_LN_PI

    def integrand(phi):
        s = math.sin(phi)
        s2 = s * s
        if s2 == 0.0:
            return 0.0
        half = math.sin(0.5 * phi)
        g = eps + 2.0 * x * half * half
        gc = g / s2
        expo = eps - gc + ln_pref - 1.5 * math.log(g)
        if expo < LOG_FLOOR:
            return 0.0
        return math.exp(expo) * (2.0 * gc + 1.0)

    result = integrate_adaptive(
        integrand, 0.0, math.pi, abs_tol, rel_tol, points=_phi_split_points(eps)
    )
    return result.value


def pdf_crossover(eps, x, abs_tol: float = DEFAULT_ABS_TOL, rel_tol: float = DEFAULT_REL_TOL):
    """Distribution of x = N|c|^2 in the crossover ensemble.

    Reduction of the two-fold angular integral to a single phi integral,
    evaluated with the exponent assembled in log space; returns exactly
    zero where the integrand underflows.
    """
    eps = _eps_value(eps)
    x_arr = np.asarray(x, dtype=float)
    if x_arr.ndim == 0:
        return _pdf_crossover_scalar(eps, float(x_arr), abs_tol, rel_tol)
    return np.array([_pdf_crossover_scalar(eps, xi, abs_tol, rel_tol) for xi in x_arr])


def pdf_crossover_log(eps, y, abs_tol: float = DEFAULT_ABS_TOL, rel_tol: float = DEFAULT_REL_TOL):
    """Crossover density of y = ln x, i.e. e^y P(eps, e^y)."""
    eps = _eps_value(eps)

    def one(yi: float) -> float:
        # the pdf underflows long before e^y overflows
        if yi > 690.0:
            return 0.0
        xv = math.exp(yi)
        return xv * _pdf_crossover_scalar(eps, xv, abs_tol, rel_tol)

    y_arr = np.asarray(y, dtype=float)
    if y_arr.ndim == 0:
        return one(float(y_arr))
    return np.array([one(yi) for yi in y_arr])


def moment_crossover(eps, q: float, abs_tol: float = DEFAULT_ABS_TOL, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Moment <x^q> of the crossover component distribution, q > 0.

    Single phi integral whose integrand combines e^(-eps cot^2 phi), a
    csc power, and two ln U evaluations in log space before
    exponentiating.  Accepts any real q > 0 (the fractal-dimension
    formulas themselves restrict to q >= 1; q slightly below 1 is
    needed for finite-difference checks of the x ln x average).
    """
    eps = _eps_value(eps)
    if q <= 0:
        raise DomainError("moment_crossover requires q > 0")

    ln_c = ln_gamma(q + 1.0) + (q + 0.5) * math.log(eps) - (q + 2.0) * math.log(2.0) - _HALF_LN_PI

    def integrand(phi):
        s = math.sin(phi)
        s2 = s * s
        if s2 == 0.0:
            return 0.0
        c = math.cos(phi)
        cot2 = (c * c) / s2
        z = eps / s2
        ln_base = ln_c - eps * cot2 - (2.0 * q + 2.0) * math.log(math.sin(0.5 * phi))
        t1 = tricomi_u_ln(q + 1.0, q + 0.5, z)
        t2 = math.log(2.0 * z) + tricomi_u_ln(q + 1.0, q + 1.5, z)
        hi = max(t1, t2)
        total = ln_base + hi + math.log1p(math.exp(min(t1, t2) - hi))
        if total < LOG_FLOOR:
            return 0.0
        return math.exp(total)

    result = integrate_adaptive(
        integrand, 0.0, math.pi, abs_tol, rel_tol, points=_phi_split_points(eps)
    )
    return result.value


def xlogx_crossover(eps, abs_tol: float = 1e-9, rel_tol: float = 1e-7) -> float:
    """<x ln x> over the crossover distribution by nested quadrature.

    The outer x integral is mapped to (0, 1) via x = u/(1-u); the inner
    pdf quadrature runs at 10x tighter tolerance than the outer one.
    """
    eps = _eps_value(eps)
    inner_abs, inner_rel = abs_tol / 10.0, rel_tol / 10.0

    def integrand(u):
        w = 1.0 - u
        x = u / w
        if x <= 0.0:
            return 0.0
        p = _pdf_crossover_scalar(eps, x, inner_abs, inner_rel)
        if p == 0.0:
            return 0.0
        return x * math.log(x) * p / (w * w)

    result = integrate_adaptive(integrand, 0.0, 1.0, abs_tol, rel_tol)
    return result.value


def d_q_crossover(eps, q: float, n_dim: int) -> FractalDimensionPoint:
    """Ensemble-averaged fractal dimension at finite n_dim in the crossover.

    D_q = 1 - ln<x^q>/((q-1) ln N) for q > 1 and
    D_1 = 1 - <x ln x>/ln N.
    """
    eps = _eps_value(eps)
    if q < 1:
        raise DomainError("d_q_crossover requires q >= 1")
    if n_dim < 3:
        raise DomainError("n_dim must be >= 3")
    ln_n = math.log(n_dim)
    if q == 1:
        value = 1.0 - xlogx_crossover(eps) / ln_n
    else:
        value = 1.0 - math.log(moment_crossover(eps, q)) / ((q - 1.0) * ln_n)
    return FractalDimensionPoint(q=q, n_dim=n_dim, value=value)


def s_q_inf_crossover(eps, q: float) -> float:
    """Large-N limit of the shifted-scaled dimension ln N (1 - D_q)."""
    eps = _eps_value(eps)
    if q < 1:
        raise DomainError("s_q_inf_crossover requires q >= 1")
    if q == 1:
        return xlogx_crossover(eps)
    return math.log(moment_crossover(eps, q)) / (q - 1.0)


# ---------------------------------------------------------------------------
# Exact finite-N closed forms for the pure classes
# ---------------------------------------------------------------------------

def d_q_oe(q: float, n_dim: int) -> FractalDimensionPoint:
    """Exact finite-N ensemble-averaged D_q for the orthogonal class."""
    if q < 1:
        raise DomainError("d_q_oe requires q >= 1")
    if n_dim < 3:
        raise DomainError("d_q_oe requires n_dim >= 3")
    ln_n = math.log(n_dim)
    if q == 1:
        value = (digamma((n_dim + 2) / 2.0) - digamma(1.5)) / ln_n
    else:
        ln_moment = (
            math.log(n_dim)
            + ln_gamma(n_dim / 2.0)
            + ln_gamma(q + 0.5)
            - _HALF_LN_PI
            - ln_gamma(q + n_dim / 2.0)
        )
        value = -ln_moment / ((q - 1.0) * ln_n)
    return FractalDimensionPoint(q=q, n_dim=n_dim, value=value)


def d_q_ue(q: float, n_dim: int) -> FractalDimensionPoint:
    """Exact finite-N ensemble-averaged D_q for the unitary class.

    Implemented as -ln[q! N!/(N-1+q)!]/((q-1) ln N); the averaged moment
    q! N!/(N-1+q)! is below one, so this sign convention is the one that
    reproduces the large-N behaviour 1 - ln(q!)/((q-1) ln N).
    """
    if q < 1:
        raise DomainError("d_q_ue requires q >= 1")
    if n_dim < 2:
        raise DomainError("d_q_ue requires n_dim >= 2")
    ln_n = math.log(n_dim)
    if q == 1:
        value = (-1.0 + _EULER_GAMMA + digamma(n_dim + 1.0)) / ln_n
    else:
        ln_moment = ln_gamma(q + 1.0) + ln_gamma(n_dim + 1.0) - ln_gamma(n_dim + q)
        value = -ln_moment / ((q - 1.0) * ln_n)
    return FractalDimensionPoint(q=q, n_dim=n_dim, value=value)


def s_q_inf_oe(q: float) -> float:
    """N -> inf limit of the shifted-scaled dimension, orthogonal class."""
    if q < 1:
        raise DomainError("s_q_inf_oe requires q >= 1")
    if q == 1:
        return math.log(2.0) + digamma(1.5)
    return (ln_gamma(q + 0.5) + q * math.log(2.0) - _HALF_LN_PI) / (q - 1.0)


def s_q_inf_ue(q: float) -> float:
    """N -> inf limit of the shifted-scaled dimension, unitary class."""
    if q < 1:
        raise DomainError("s_q_inf_ue requires q >= 1")
    if q == 1:
        return 1.0 - _EULER_GAMMA
    return ln_gamma(q + 1.0) / (q - 1.0)


# ---------------------------------------------------------------------------
# CDF table and sampling helpers
# ---------------------------------------------------------------------------

def crossover_cdf_grid(eps, y_lo: float = -16.0, y_hi: float = 5.5, n: int = 2001):
    """Tabulated CDF of the crossover distribution on a log grid.

    Returns ``(x_grid, cdf)`` where the CDF is accumulated by
    trapezoidal integration of the density of y = ln x and normalized to
    end at exactly one.  Adequate for Kolmogorov-Smirnov comparisons and
    inverse-CDF sampling (absolute accuracy ~1e-5).
    """
    eps = _eps_value(eps)
    y = np.linspace(y_lo, y_hi, n)
    dens = pdf_crossover_log(eps, y, abs_tol=1e-11, rel_tol=1e-9)
    cdf = np.concatenate(([0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * np.diff(y))))
    # left-tail mass below the grid: density of x is finite at x = 0+
    cdf += math.exp(y_lo) * _pdf_crossover_scalar(eps, math.exp(y_lo), 1e-11, 1e-9)
    cdf /= cdf[-1]
    return np.exp(y), cdf


def sample_crossover(eps, size: int, rng: np.random.Generator, table=None):
    """Draw x samples from the crossover distribution by inverse CDF.

    ``table`` may carry a precomputed ``crossover_cdf_grid`` result so
    repeated draws do not rebuild the grid.
    """
    if table is None:
        table = crossover_cdf_grid(eps)
    x_grid, cdf = table
    u = rng.random(size)
    return np.interp(u, cdf, x_grid)
