"""Lynden-Bell product-limit estimator and its modified variant.

Conventions: the risk function uses the closed interval ``y_i <= z <= x_i``;
the observed-x ECDF, the estimator and the cumulative hazard are
right-continuous and jump at the observation itself.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AssumptionWarning, TiesPresent
from .sample import SortedSample, validate_and_sort

__all__ = [
    "StepFunction",
    "LBEstimate",
    "ModifiedEstimate",
    "HoleReport",
    "risk_counts",
    "c_n",
    "fstar_n",
    "fstar_mass",
    "lynden_bell",
    "lynden_bell_tie_free",
    "modified_weights",
    "gamma_n",
    "cumulative_hazard",
    "detect_holes",
]


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Right-continuous step function with value ``base`` left of all knots."""

    knots: np.ndarray
    values: np.ndarray
    base: float = 0.0

    def __call__(self, z):
        k = np.searchsorted(self.knots, z, side="right") - 1
        return self._take(k)

    def left(self, z):
        """Left limit f(z-)."""
        k = np.searchsorted(self.knots, z, side="left") - 1
        return self._take(k)

    def _take(self, k):
        k = np.asarray(k)
        out = np.where(k >= 0, self.values[np.maximum(k, 0)], self.base)
        return out[()] if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class HoleReport:
    """Empty inner risk sets.

    Indices are 1-based ranks among the distinct order statistics, so rank
    ``j`` refers to ``X_{j:n}``. An inner hole is a rank ``j < m`` whose
    point is covered by no pair other than those observed at it.
    """

    inner_hole_indices: tuple
    first_inner_hole: int | None
    zeroed_mass_points: tuple
    zeroed_confirmed: bool = True

    @property
    def has_holes(self):
        return bool(self.inner_hole_indices)


@dataclass(frozen=True, eq=False)
class LBEstimate:
    points: np.ndarray
    weights: np.ndarray
    cdf: np.ndarray
    hazard: np.ndarray
    holes: HoleReport
    risk: np.ndarray
    mult: np.ndarray
    n: int

    @property
    def m(self):
        return self.points.size

    @property
    def total_mass(self):
        return float(self.cdf[-1])

    def cdf_function(self):
        return StepFunction(self.points, self.cdf)

    def hazard_function(self):
        return StepFunction(self.points, self.hazard)

    def __call__(self, z):
        return self.cdf_function()(z)


@dataclass(frozen=True, eq=False)
class ModifiedEstimate:
    """Weights of the modified estimator.

    The weights are nonnegative but their sum may exceed one; use them only
    for integrals, never as a distribution function.
    """

    points: np.ndarray
    weights: np.ndarray
    n: int

    @property
    def total_mass(self):
        return float(self.weights.sum())


def risk_counts(sample) -> np.ndarray:
    """``n C_n`` at each distinct x-value: #{k : y_k <= X_i <= x_k}."""
    s = validate_and_sort(sample)
    return _risk_counts_at(s, s.distinct_x)


def _risk_counts_at(s: SortedSample, z):
    z = np.asarray(z, dtype=float)
    covered_left = np.searchsorted(s.y_sorted, z, side="right")
    ended = np.searchsorted(s.x_sorted, z, side="left")
    return covered_left - ended


def c_n(sample, z):
    """Empirical risk function ``C_n(z) = n^-1 #{i : y_i <= z <= x_i}``."""
    s = validate_and_sort(sample)
    out = _risk_counts_at(s, z) / s.n
    return out[()] if np.ndim(out) == 0 else out


def fstar_n(sample, x):
    """Right-continuous ECDF of the observed x-values."""
    s = validate_and_sort(sample)
    out = np.searchsorted(s.x_sorted, np.asarray(x, dtype=float), side="right") / s.n
    return out[()] if np.ndim(out) == 0 else out


def fstar_mass(sample, x):
    """ECDF mass at ``x``, i.e. d_i / n at a distinct observation."""
    s = validate_and_sort(sample)
    x = np.asarray(x, dtype=float)
    cnt = (np.searchsorted(s.x_sorted, x, side="right")
           - np.searchsorted(s.x_sorted, x, side="left"))
    out = cnt / s.n
    return out[()] if np.ndim(out) == 0 else out


def _survival(ratio):
    """Running product of ``1 - ratio``.

    Accumulated in log space up to the first zero factor; from there on the
    product is exactly zero.
    """
    out = np.zeros(ratio.shape)
    zero = np.flatnonzero(ratio >= 1)
    k = zero[0] if zero.size else ratio.size
    out[:k] = np.exp(np.cumsum(np.log1p(-ratio[:k])))
    return out


def _shift_right(a, first=1.0):
    out = np.empty_like(a)
    out[0] = first
    out[1:] = a[:-1]
    return out


def lb_weights(nc, d):
    """Lynden-Bell weights from risk counts and multiplicities (array core)."""
    ratio = d / nc
    return _shift_right(_survival(ratio)) * ratio


def modified_weight_values(nc, d):
    """Modified-estimator weights from risk counts and multiplicities."""
    prod = _survival(d / (nc + 1.0))
    return _shift_right(prod) * (d / nc)


def _holes(nc, d, weights):
    m = nc.size
    inner = np.flatnonzero(nc[:-1] == d[:-1]) + 1 if m > 1 else np.array([], dtype=int)
    if inner.size == 0:
        return HoleReport((), None, ())
    first = int(inner[0])
    zeroed = tuple(range(first + 1, m + 1))
    confirmed = bool(np.all(weights[first:] == 0.0))
    return HoleReport(tuple(int(j) for j in inner), first, zeroed, confirmed)


def detect_holes(sample) -> HoleReport:
    """Report inner ranks ``j < m`` with ``n C_n(X_j) = n F*_n{X_j}``."""
    s = validate_and_sort(sample)
    nc = risk_counts(s)
    return _holes(nc, s.mult, lb_weights(nc, s.mult))


def _warn_support(s):
    if s.y.min() >= s.x.min():
        warnings.warn(
            "smallest truncation value is not below the smallest observation; "
            "the lower support of F may not be identifiable",
            AssumptionWarning, stacklevel=3)


def lynden_bell(sample) -> LBEstimate:
    """Lynden-Bell estimator of F.

    Weights follow ``W_i = (1 - F_n(X_{i-1})) d_i / (n C_n(X_i))`` and the
    cdf is their running sum. Points strictly right of the first inner hole
    get weight exactly zero.
    """
    s = validate_and_sort(sample)
    _warn_support(s)
    nc = risk_counts(s)
    d = s.mult
    w = lb_weights(nc, d)
    cdf = np.cumsum(w)
    hazard = np.cumsum(d / nc)
    return LBEstimate(points=s.distinct_x, weights=w, cdf=cdf, hazard=hazard,
                      holes=_holes(nc, d, w), risk=nc, mult=d, n=s.n)


def lynden_bell_tie_free(sample) -> np.ndarray:
    """``F_n`` at the ordered observations via ``prod (nC_n - 1) / nC_n``.

    Only valid without ties; used to cross-check :func:`lynden_bell`.
    """
    s = validate_and_sort(sample)
    if s.has_ties:
        raise TiesPresent()
    nc = risk_counts(s).astype(float)
    return 1.0 - np.cumprod((nc - 1.0) / nc)


def modified_weights(sample) -> ModifiedEstimate:
    s = validate_and_sort(sample)
    nc = risk_counts(s)
    return ModifiedEstimate(points=s.distinct_x,
                            weights=modified_weight_values(nc, s.mult), n=s.n)


def gamma_n(sample, x):
    """``exp{ sum_{X_j < x} ln[1 - 1/(n C_n(X_j) + 1)] }`` on a tie-free sample."""
    s = validate_and_sort(sample)
    if s.has_ties:
        raise TiesPresent()
    nc = risk_counts(s)
    logs = np.concatenate(([0.0], np.cumsum(np.log1p(-1.0 / (nc + 1.0)))))
    k = np.searchsorted(s.distinct_x, np.asarray(x, dtype=float), side="left")
    out = np.exp(logs[k])
    return out[()] if out.ndim == 0 else out


def cumulative_hazard(sample, x):
    """Plug-in cumulative hazard ``sum_{X_i <= x} F*_n{X_i} / C_n(X_i)``."""
    s = validate_and_sort(sample)
    nc = risk_counts(s)
    steps = np.concatenate(([0.0], np.cumsum(s.mult / nc)))
    k = np.searchsorted(s.distinct_x, np.asarray(x, dtype=float), side="right")
    out = steps[k]
    return out[()] if out.ndim == 0 else out
