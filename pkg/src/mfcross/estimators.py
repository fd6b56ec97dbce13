"""Observables computed from eigenvector data.

Per-state moments I_q and the derived fractal dimensions D_q and
shifted-scaled values S_q = ln N (1 - D_q); ensemble averages of the
moments (averaged before the logarithm, which bounds the typical values
from below); spectral profiles sorted by eigenvalue; component
histograms in y = ln x; and maximum-likelihood recovery of the crossover
parameter from component samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import interpolate, optimize

from .analytic import _pdf_crossover_scalar, _eps_value
from .specfun import LOG_FLOOR, DomainError

__all__ = [
    "StateStatistics",
    "EnsembleAverages",
    "SpectralProfile",
    "ComponentHistogram",
    "EpsilonFit",
    "scaled_components",
    "state_statistics",
    "ensemble_avg_dq",
    "spectral_profile",
    "component_histogram",
    "fit_epsilon",
    "MomentAccumulator",
    "ProfileAccumulator",
    "HistogramAccumulator",
]

_NORM_TOL = 1e-10


@dataclass(frozen=True)
class StateStatistics:
    """Moments and fractal dimensions of a single eigenvector."""

    q_grid: np.ndarray
    i_q: np.ndarray
    d_q: np.ndarray
    s_q: np.ndarray
    n_dim: int


@dataclass(frozen=True)
class EnsembleAverages:
    """Moment-averaged fractal dimensions over many eigenvectors."""

    q_grid: np.ndarray
    i_q: np.ndarray
    d_q: np.ndarray
    s_q: np.ndarray
    n_dim: int
    n_states: int


@dataclass(frozen=True)
class SpectralProfile:
    """Ensemble means per sorted eigenvalue index (D1, D2, S1, S2)."""

    eigenvalues: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    n_members: int


@dataclass(frozen=True)
class ComponentHistogram:
    """Density-normalized histogram of y = ln(N |c|^2)."""

    bin_edges: np.ndarray
    density: np.ndarray
    total_count: int


@dataclass(frozen=True)
class EpsilonFit:
    """Result of the 1-D likelihood fit of the crossover parameter."""

    eps_hat: float
    neg_log_likelihood: float
    n_samples: int
    converged: bool
    boundary_hit: bool


def _check_norm(p: np.ndarray) -> None:
    err = abs(p.sum() - 1.0)
    if err > _NORM_TOL:
        raise ValueError(f"vector norm off by {err:g}; expected unit 2-norm")


def scaled_components(v, n_dim: int | None = None) -> np.ndarray:
    """Rescaled intensities x_i = N |v_i|^2 of a unit-norm vector."""
    v = np.asarray(v)
    p = np.abs(v) ** 2
    _check_norm(p)
    n = len(v) if n_dim is None else n_dim
    return n * p


def _entropy_sum(p: np.ndarray, axis=0) -> np.ndarray:
    """sum p ln p with the 0 ln 0 = 0 convention."""
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * np.log(np.where(p > 0, p, 1.0)), 0.0)
    return terms.sum(axis=axis)


def _dims_from_moments(q_grid, ln_i_q, entropy, ln_n):
    """D_q from ln-moments; the q = 1 slot uses the entropy route."""
    d_q = np.empty(len(q_grid))
    for k, q in enumerate(q_grid):
        if q == 1:
            d_q[k] = -entropy / ln_n
        else:
            d_q[k] = -ln_i_q[k] / ((q - 1.0) * ln_n)
    s_q = ln_n * (1.0 - d_q)
    return d_q, s_q


def _validate_q_grid(q_grid) -> np.ndarray:
    q_grid = np.asarray(q_grid, dtype=float)
    if np.any(q_grid < 1):
        raise DomainError("q grid must satisfy q >= 1")
    return q_grid


def state_statistics(v, q_grid) -> StateStatistics:
    """I_q, D_q, and S_q of one unit-norm eigenvector on a q grid."""
    q_grid = _validate_q_grid(q_grid)
    v = np.asarray(v)
    p = np.abs(v) ** 2
    _check_norm(p)
    n = len(v)
    ln_n = math.log(n)
    i_q = np.array([p.sum() if q == 1 else (p**q).sum() for q in q_grid])
    entropy = _entropy_sum(p)
    d_q, s_q = _dims_from_moments(q_grid, np.log(i_q), entropy, ln_n)
    return StateStatistics(q_grid=q_grid, i_q=i_q, d_q=d_q, s_q=s_q, n_dim=n)


# ---------------------------------------------------------------------------
# Streaming accumulators (single pass over an ensemble)
# ---------------------------------------------------------------------------

class MomentAccumulator:
    """Accumulates sum I_q and entropy over selected eigenvectors."""

    def __init__(self, q_grid, eigenvalue_window=None):
        self.q_grid = _validate_q_grid(q_grid)
        self.window = eigenvalue_window
        self.i_q_sum = np.zeros(len(self.q_grid))
        self.entropy_sum = 0.0
        self.n_states = 0
        self.n_dim = None

    def update(self, system) -> None:
        if self.n_dim is None:
            self.n_dim = system.n_dim
        elif system.n_dim != self.n_dim:
            raise ValueError("all members must share the same dimension")
        vectors = system.eigenvectors
        if self.window is not None:
            lo, hi = self.window
            mask = (system.eigenvalues >= lo) & (system.eigenvalues <= hi)
            vectors = vectors[:, mask]
        if vectors.shape[1] == 0:
            return
        p = np.abs(vectors) ** 2
        for k, q in enumerate(self.q_grid):
            self.i_q_sum[k] += (p.sum(axis=0) if q == 1 else (p**q).sum(axis=0)).sum()
        self.entropy_sum += _entropy_sum(p, axis=0).sum()
        self.n_states += vectors.shape[1]

    def result(self) -> EnsembleAverages:
        if self.n_states == 0:
            raise ValueError("no eigenvectors selected")
        i_q = self.i_q_sum / self.n_states
        entropy = self.entropy_sum / self.n_states
        ln_n = math.log(self.n_dim)
        d_q, s_q = _dims_from_moments(self.q_grid, np.log(i_q), entropy, ln_n)
        return EnsembleAverages(
            q_grid=self.q_grid,
            i_q=i_q,
            d_q=d_q,
            s_q=s_q,
            n_dim=self.n_dim,
            n_states=self.n_states,
        )


class ProfileAccumulator:
    """Averages eigenvalue and D1/D2/S1/S2 per sorted spectral index."""

    def __init__(self):
        self.n_members = 0
        self._sums = None
        self.n_dim = None

    def update(self, system) -> None:
        n = system.n_dim
        if self.n_dim is None:
            self.n_dim = n
            self._sums = np.zeros((5, n))
        elif n != self.n_dim:
            raise ValueError("all members must share the same dimension")
        p = np.abs(system.eigenvectors) ** 2
        ln_n = math.log(n)
        d1 = -_entropy_sum(p, axis=0) / ln_n
        d2 = -np.log((p * p).sum(axis=0)) / ln_n
        self._sums[0] += system.eigenvalues
        self._sums[1] += d1
        self._sums[2] += d2
        self._sums[3] += ln_n * (1.0 - d1)
        self._sums[4] += ln_n * (1.0 - d2)
        self.n_members += 1

    def result(self) -> SpectralProfile:
        if self.n_members == 0:
            raise ValueError("no members accumulated")
        mean = self._sums / self.n_members
        return SpectralProfile(
            eigenvalues=mean[0],
            d1=mean[1],
            d2=mean[2],
            s1=mean[3],
            s2=mean[4],
            n_members=self.n_members,
        )


class HistogramAccumulator:
    """Counts y = ln x over all components of all eigenvectors."""

    def __init__(self, n_bins: int = 81, y_range=(-12.0, 3.0)):
        if n_bins < 10:
            raise ValueError("n_bins must be >= 10")
        self.bin_edges = np.linspace(y_range[0], y_range[1], n_bins + 1)
        self.counts = np.zeros(n_bins, dtype=np.int64)

    def update(self, system) -> None:
        x = system.n_dim * np.abs(system.eigenvectors) ** 2
        x = x[x > 0]
        counts, _ = np.histogram(np.log(x), bins=self.bin_edges)
        self.counts += counts

    def result(self) -> ComponentHistogram:
        total = int(self.counts.sum())
        if total == 0:
            raise ValueError("no components fell inside the histogram range")
        widths = np.diff(self.bin_edges)
        return ComponentHistogram(
            bin_edges=self.bin_edges,
            density=self.counts / (total * widths),
            total_count=total,
        )


def ensemble_avg_dq(systems, q_grid, eigenvalue_window=None) -> EnsembleAverages:
    """Moment-averaged D_q and S_q over eigenvectors of many members.

    Moments are averaged over all selected eigenvectors of all members
    before the logarithm; the q = 1 entry averages the entropy sum
    directly (the x ln x analogue).  ``eigenvalue_window`` optionally
    restricts to states with eigenvalue inside [lo, hi].
    """
    acc = MomentAccumulator(q_grid, eigenvalue_window)
    for system in systems:
        acc.update(system)
    return acc.result()


def spectral_profile(systems) -> SpectralProfile:
    """Mean eigenvalue and D1/D2/S1/S2 versus sorted spectral index."""
    acc = ProfileAccumulator()
    for system in systems:
        acc.update(system)
    return acc.result()


def component_histogram(systems, n_bins: int = 81, y_range=(-12.0, 3.0)) -> ComponentHistogram:
    """Density histogram of y = ln x pooled over all eigenvectors."""
    acc = HistogramAccumulator(n_bins, y_range)
    for system in systems:
        acc.update(system)
    return acc.result()


# ---------------------------------------------------------------------------
# Crossover-parameter fit
# ---------------------------------------------------------------------------

def _nll_factory(y_samples):
    y_lo = float(y_samples.min())
    y_hi = float(y_samples.max())

    if y_hi - y_lo < 1e-9:
        # all samples (numerically) identical: no interpolation needed
        def nll_point(ln_eps: float) -> float:
            p = _pdf_crossover_scalar(math.exp(ln_eps), math.exp(y_lo), 1e-9, 1e-7)
            return -y_samples.size * (math.log(p) if p > 0 else LOG_FLOOR)

        return nll_point

    # interpolation grid adapts to the sample range; ~16 nodes per unit
    # of ln x, clamped so the cost per likelihood evaluation is bounded
    n_nodes = int(np.clip(16 * (y_hi - y_lo) + 1, 81, 321))
    y_grid = np.linspace(y_lo, y_hi, n_nodes)

    def nll(ln_eps: float) -> float:
        eps = math.exp(ln_eps)
        ln_pdf = np.empty(n_nodes)
        for i, yg in enumerate(y_grid):
            p = _pdf_crossover_scalar(eps, math.exp(yg), 1e-9, 1e-7)
            ln_pdf[i] = math.log(p) if p > 0 else LOG_FLOOR
        spline = interpolate.CubicSpline(y_grid, ln_pdf)
        return -float(np.sum(spline(y_samples)))

    return nll


def fit_epsilon(x_samples, bracket=(1e-3, 1e5), *, ln_eps_tol: float = 1e-3) -> EpsilonFit:
    """Maximum-likelihood crossover parameter from component samples.

    Minimizes the negative log-likelihood over ln(eps) with a bracketed
    scalar search; the pdf is evaluated on an interpolation grid in
    y = ln x so the cost does not scale with the sample count.
    ``boundary_hit`` flags a minimizer within 1% (log scale) of either
    bracket edge, which indicates data at or beyond the pure-class
    limits.
    """
    x = np.asarray(x_samples, dtype=float).ravel()
    if x.size < 1000:
        raise ValueError("fit_epsilon needs at least 1000 samples")
    if np.any(x <= 0):
        raise DomainError("samples must be positive")
    eps_lo, eps_hi = bracket
    if not 0 < eps_lo < eps_hi:
        raise ValueError("bracket must satisfy 0 < eps_lo < eps_hi")

    ln_lo, ln_hi = math.log(eps_lo), math.log(eps_hi)
    nll = _nll_factory(np.log(x))
    res = optimize.minimize_scalar(
        nll, bounds=(ln_lo, ln_hi), method="bounded", options={"xatol": ln_eps_tol}
    )
    ln_hat = float(res.x)
    margin = 0.01 * (ln_hi - ln_lo)
    boundary = (ln_hat - ln_lo) < margin or (ln_hi - ln_hat) < margin
    converged = bool(res.success) and math.isfinite(float(res.fun))
    return EpsilonFit(
        eps_hat=math.exp(ln_hat),
        neg_log_likelihood=float(res.fun),
        n_samples=int(x.size),
        converged=converged,
        boundary_hit=boundary,
    )
