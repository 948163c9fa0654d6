"""Lynden-Bell integrals, influence function and plug-in inference."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .errors import DegenerateSample, ModelSampleMismatch
from .estimator import LBEstimate, ModifiedEstimate, lynden_bell, modified_weights
from .sample import validate_and_sort
from .scores import ScoreFunction

__all__ = [
    "InferenceResult",
    "RepresentationTerms",
    "lb_integral",
    "modified_integral",
    "psi_plugin",
    "psi_model",
    "eta_plugin",
    "sigma2_plugin",
    "normal_interval",
    "confidence_interval",
    "representation_terms",
]


@dataclass(frozen=True)
class InferenceResult:
    estimate: float
    sigma2: float
    ci: tuple
    n: int
    level: float

    @property
    def half_width(self):
        return 0.5 * (self.ci[1] - self.ci[0])

    def covers(self, value):
        return self.ci[0] <= value <= self.ci[1]


@dataclass(frozen=True, eq=False)
class RepresentationTerms:
    """Decomposition of ``sqrt(n) int phi d(F_n - F)``.

    ``lhs == sqrt(n) * (l1 - l2) + remainder`` holds by construction, so
    ``remainder`` is already on the sqrt(n) scale. ``per_obs`` holds the
    i.i.d. summands whose mean equals ``l1 - l2``.
    """

    lhs: float
    l1: float
    l2: float
    remainder: float
    per_obs: np.ndarray
    n: int


def _as_estimate(est):
    return est if isinstance(est, LBEstimate) else lynden_bell(est)


def lb_integral(est, phi: ScoreFunction) -> float:
    """``int phi dF_n = sum_i W_i phi(X_i)``.

    ``est`` may be an :class:`LBEstimate` or anything accepted by
    :func:`~truncstat.sample.validate_and_sort`.
    """
    est = _as_estimate(est)
    return float(est.weights @ phi(est.points))


def modified_integral(mod, phi: ScoreFunction) -> float:
    if not isinstance(mod, ModifiedEstimate):
        mod = modified_weights(mod)
    return float(mod.weights @ phi(mod.points))


def _psi_at(points, weights, phi, y):
    # suffix sums over points strictly greater than y
    tail_w = np.concatenate((np.cumsum(weights[::-1])[::-1], [0.0]))
    tail_wphi = np.concatenate((np.cumsum((weights * phi(points))[::-1])[::-1], [0.0]))
    y = np.asarray(y, dtype=float)
    k = np.searchsorted(points, y, side="right")
    mass = tail_w[k]
    live = mass > 0
    out = np.zeros(y.shape)
    if np.any(live):
        out[live] = np.atleast_1d(phi(y[live])) * mass[live] - tail_wphi[k][live]
    return out


def psi_plugin(est, phi: ScoreFunction, y):
    """``psi_n(y) = sum_{X_k > y} W_k [phi(y) - phi(X_k)]``."""
    est = _as_estimate(est)
    out = _psi_at(est.points, est.weights, phi, y)
    return out[()] if out.ndim == 0 else out


def psi_model(model, phi: ScoreFunction, y):
    """``psi(y) = int_{x > y} [phi(y) - phi(x)] F(dx)`` under the model's F."""
    return model.psi(phi, y)


def eta_plugin(sample, phi: ScoreFunction, est=None):
    """Plug-in influence values, one per observation (input row order).

    ``eta_i = psi_n(X_i)/C_n(X_i) - n^-1 sum_{j: Y_i < X_j <= X_i} psi_n(X_j)/C_n(X_j)^2``
    """
    s = validate_and_sort(sample)
    if est is None:
        est = lynden_bell(s)
    n = s.n
    cn = est.risk / n
    psi = _psi_at(est.points, est.weights, phi, est.points)
    first = (psi / cn)[s.slot]
    g = np.concatenate(([0.0], np.cumsum((est.mult / n) * psi / cn**2)))
    upper = g[np.searchsorted(est.points, s.x, side="right")]
    lower = g[np.searchsorted(est.points, s.y, side="right")]
    return first - (upper - lower)


def sigma2_plugin(sample, phi: ScoreFunction, est=None) -> float:
    """Plug-in asymptotic variance (divisor n) of ``sqrt(n) int phi dF_n``."""
    s = validate_and_sort(sample)
    if s.n < 2:
        raise DegenerateSample(s.n)
    return float(np.var(eta_plugin(s, phi, est)))


def normal_interval(estimate, sigma2, n, level=0.95):
    if not 0 < level < 1:
        raise ValueError("level must lie in (0, 1)")
    half = norm.ppf(0.5 * (1 + level)) * np.sqrt(sigma2 / n)
    return (estimate - half, estimate + half)


def confidence_interval(sample, phi: ScoreFunction, level=0.95) -> InferenceResult:
    """Normal-approximation interval for ``int phi dF``."""
    if not 0 < level < 1:
        raise ValueError("level must lie in (0, 1)")
    s = validate_and_sort(sample)
    est = lynden_bell(s)
    value = lb_integral(est, phi)
    sigma2 = sigma2_plugin(s, phi, est)
    return InferenceResult(estimate=value, sigma2=sigma2,
                           ci=normal_interval(value, sigma2, s.n, level),
                           n=s.n, level=level)


def representation_terms(sample, model, phi: ScoreFunction) -> RepresentationTerms:
    """Evaluate the two leading terms of the i.i.d. expansion against a model.

    ``l1 = n^-1 sum psi(X_i)/C(X_i) - int psi/C dF*`` and
    ``l2 = int (C_n - C)/C^2 psi dF*``, both with the model's psi and C.
    """
    s = validate_and_sort(sample)
    n = s.n
    cx = np.asarray(model.c(s.x), dtype=float)
    bad = ~(cx > 0)
    if np.any(bad):
        raise ModelSampleMismatch(s.x[bad].tolist())

    est = lynden_bell(s)
    lhs = np.sqrt(n) * (lb_integral(est, phi) - model.mean_phi(phi))
    first = np.asarray(model.psi_over_c(phi, s.x), dtype=float)
    second = np.asarray(model.risk_integral(phi, s.y, s.x), dtype=float)
    if not (np.all(np.isfinite(first)) and np.all(np.isfinite(second))):
        raise ModelSampleMismatch(s.x[~(np.isfinite(first) & np.isfinite(second))].tolist())
    centre = model.psi_over_c_mean(phi)
    l1 = float(first.mean() - centre)
    l2 = float(second.mean() - centre)
    per_obs = first - second
    remainder = float(lhs - np.sqrt(n) * (l1 - l2))
    return RepresentationTerms(lhs=float(lhs), l1=l1, l2=l2, remainder=remainder,
                               per_obs=per_obs, n=n)
