"""Fully specified truncation models used as ground truth.

A model pairs a lifetime distribution F with a truncation distribution G.
Pairs are observed only when ``y <= x``; the observed x-marginal is

    F*(x) = alpha^-1 int_{(-inf, x]} G dF,   alpha = P(Y <= X),

and the risk function is ``C(z) = alpha^-1 G(z) (1 - F(z-))``.

Closed forms ship for the built-in families; anything else falls back to
adaptive quadrature (absolute tolerance 1e-9).
"""
from __future__ import annotations

import warnings

import numpy as np
from scipy import integrate

from .distributions import Discrete, Distribution, Exponential, PointMass, Uniform
from .errors import InvalidParameters, QuadratureFailure, UnknownFamily
from .scores import ScoreFunction

__all__ = ["TruncationModel", "make_model", "FAMILIES"]

QUAD_EPSABS = 1e-9

FAMILIES = ("exp-exp", "uniform-uniform", "no-truncation", "no-truncation-uniform")


def quad(fn, a, b, what, points=None):
    """``scipy.integrate.quad`` that raises instead of warning."""
    if a >= b:
        return 0.0
    if points and not np.isfinite(b):
        # quad ignores break points on infinite ranges; split at the last one
        cut = max(points)
        return (quad(fn, a, cut, what, [p for p in points if p < cut] or None)
                + quad(fn, cut, b, what))
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            kw = {"points": points} if points else {}
            val, err = integrate.quad(fn, a, b, epsabs=QUAD_EPSABS, epsrel=1e-10,
                                      limit=200, **kw)
        except integrate.IntegrationWarning as exc:
            raise QuadratureFailure(what, str(exc).splitlines()[0]) from None
    if not np.isfinite(val):
        raise QuadratureFailure(what, f"non-finite value {val!r} (err {err:.2g})")
    return val


def _g_integral(g, z):
    """``int_{-inf}^z G(t) dt`` for the built-in truncation families, else None."""
    z = np.asarray(z, dtype=float)
    if isinstance(g, Exponential):
        mu = g.rate
        zp = np.maximum(z, 0.0)
        return zp + np.expm1(-mu * zp) / mu
    if isinstance(g, Uniform):
        c, d = g.low, g.high
        zc = np.clip(z, c, d)
        return (zc - c) ** 2 / (2 * (d - c)) + np.maximum(z - d, 0.0)
    if isinstance(g, PointMass):
        return np.maximum(z - g.at, 0.0)
    return None


def _inv_g_antiderivative(g, z):
    """An antiderivative of ``1/G``; ``-inf`` where G vanishes."""
    z = np.asarray(z, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        if isinstance(g, Exponential):
            mu = g.rate
            zp = np.maximum(z, 0.0)
            out = zp + np.log(-np.expm1(-mu * zp)) / mu
            return np.where(z > 0, out, -np.inf)
        if isinstance(g, Uniform):
            c, d = g.low, g.high
            w = d - c
            inside = w * np.log(np.clip(z, c, d) - c)
            out = np.where(z > d, w * np.log(w) + (z - d), inside)
            return np.where(z > c, out, -np.inf)
        if isinstance(g, PointMass):
            return np.where(z >= g.at, z, -np.inf)
    return None


class _FStarOracle:
    def __init__(self, model):
        self.model = model

    def cdf(self, x):
        return self.model.fstar(x)

    def cdf_left(self, x):
        return self.model.fstar_left(x)


class TruncationModel:
    """Ground-truth model for simulation and representation checks.

    Parameters
    ----------
    f : Distribution
        Law of the lifetime X (continuous families only for quadrature).
    g : Distribution
        Law of the truncation variable Y.
    name : str, optional
    """

    def __init__(self, f: Distribution, g: Distribution, name=None):
        self.f = f
        self.g = g
        self.name = name or f"{f!r}/{g!r}"
        self.a_f = f.lower
        self.a_g = g.lower
        self.alpha = float(self._alpha())
        if not 0 < self.alpha <= 1:
            raise InvalidParameters(f"P(Y <= X) = {self.alpha} for {self.name}")
        # a_G <= a_F and no F-atom at a_F
        self.identifiable = bool(self.a_g <= self.a_f
                                 and float(f.atom(self.a_f)) == 0.0)
        # int dF/G < inf; for the shipped families this holds iff G(a_F) > 0
        self.a2_holds = bool(float(g.cdf(self.a_f)) > 0.0)

    def __repr__(self):
        return f"TruncationModel({self.name})"

    # population quantities

    def _alpha(self):
        return self._g_dF(np.inf)

    def _g_dF(self, x):
        """``int_{(-inf, x]} G dF`` by closed form where available."""
        f, g = self.f, self.g
        x = np.asarray(x, dtype=float)
        if isinstance(f, Uniform):
            gi = _g_integral(g, x)
            if gi is not None:
                lo = _g_integral(g, f.low)
                hi = _g_integral(g, np.minimum(x, f.high))
                return np.where(x > f.low, (hi - lo) / (f.high - f.low), 0.0)
        if isinstance(f, Exponential) and isinstance(g, Exponential):
            lam, mu = f.rate, g.rate
            xp = np.maximum(x, 0.0)
            return -np.expm1(-lam * xp) + lam / (lam + mu) * np.expm1(-(lam + mu) * xp)
        if isinstance(g, PointMass):
            return np.maximum(np.asarray(f.cdf(x)) - np.asarray(f.cdf_left(g.at)), 0.0)
        return self._g_dF_quadrature(x)

    def _g_dF_quadrature(self, x):
        x = np.asarray(x, dtype=float)
        f, g = self.f, self.g
        if isinstance(f, Discrete):
            vals = [float(np.sum(f.probs[f.points <= xi] * g.cdf(f.points[f.points <= xi])))
                    for xi in np.atleast_1d(x)]
        else:
            vals = [quad(lambda z: float(g.cdf(z) * f.pdf(z)), f.lower, min(xi, f.upper),
                         "int G dF") for xi in np.atleast_1d(x)]
        out = np.array(vals)
        return out.reshape(x.shape)

    def fstar(self, x):
        out = self._g_dF(x) / self.alpha
        return out[()] if np.ndim(out) == 0 else out

    def fstar_quadrature(self, x):
        """F* computed by quadrature only; used to cross-check closed forms."""
        return self._g_dF_quadrature(x) / self.alpha

    def fstar_left(self, x):
        if self.f.continuous:
            return self.fstar(x)
        x = np.asarray(x, dtype=float)
        out = self.fstar(x) - np.asarray(self.f.atom(x)) * np.asarray(self.g.cdf(x)) / self.alpha
        return out[()] if np.ndim(out) == 0 else out

    def fstar_pdf(self, x):
        return np.asarray(self.g.cdf(x)) * np.asarray(self.f.pdf(x)) / self.alpha

    def fstar_oracle(self):
        """Object with ``cdf``/``cdf_left`` for pseudo-sample construction."""
        return _FStarOracle(self)

    def c(self, z):
        """Risk function ``alpha^-1 G(z) (1 - F(z-))``."""
        out = (np.asarray(self.g.cdf(z)) * (1.0 - np.asarray(self.f.cdf_left(z)))
               / self.alpha)
        return out[()] if np.ndim(out) == 0 else out

    def sample_pairs(self, rng, size):
        return self.f.sample(rng, size), self.g.sample(rng, size)

    # functionals of phi

    def _closed_identity(self, phi):
        return (phi.kind == "identity" and self.identifiable
                and isinstance(self.f, (Exponential, Uniform))
                and isinstance(self.g, (Exponential, Uniform, PointMass)))

    def mean_phi(self, phi: ScoreFunction):
        """``int phi dF``."""
        f = self.f
        if phi.kind == "identity":
            return f.mean()
        if phi.kind == "indicator":
            return float(f.cdf(phi.params[0]))
        if phi.kind == "constant":
            return phi.params[0]
        if isinstance(f, Discrete):
            return float(phi(f.points) @ f.probs)
        return quad(lambda x: float(phi(x) * f.pdf(x)), f.lower, f.upper, "int phi dF",
                    points=self._breaks(phi, f.lower, f.upper))

    def _breaks(self, phi, a, b):
        if phi.kind == "indicator" and a < phi.params[0] < b:
            return [phi.params[0]]
        return None

    def psi(self, phi: ScoreFunction, y):
        """``psi(y) = int_{x > y} [phi(y) - phi(x)] F(dx)``."""
        y = np.asarray(y, dtype=float)
        f = self.f
        if phi.kind == "identity" and isinstance(f, Exponential):
            lam = f.rate
            out = np.where(y < 0, y - 1 / lam, -np.exp(-lam * np.maximum(y, 0.0)) / lam)
        elif phi.kind == "identity" and isinstance(f, Uniform):
            a, b = f.low, f.high
            inside = -(b - np.clip(y, a, b)) ** 2 / (2 * (b - a))
            out = np.where(y < a, y - 0.5 * (a + b), inside)
        elif phi.kind == "constant":
            out = np.zeros_like(y)
        else:
            out = np.array([self._psi_quad(phi, v) for v in np.atleast_1d(y)]).reshape(y.shape)
        return out[()] if out.ndim == 0 else out

    def _psi_quad(self, phi, y):
        f = self.f
        if isinstance(f, Discrete):
            above = f.points > y
            return float(np.sum((phi(y) - phi(f.points[above])) * f.probs[above]))
        lo = max(y, f.lower)
        py = float(phi(y))
        return quad(lambda x: float((py - phi(x)) * f.pdf(x)), lo, f.upper, "psi",
                    points=self._breaks(phi, lo, f.upper))

    def psi_over_c(self, phi, x):
        """``psi(x) / C(x)`` at points where ``C(x) > 0``."""
        x = np.asarray(x, dtype=float)
        if self._closed_identity(phi):
            f = self.f
            if isinstance(f, Exponential):
                h = np.full(x.shape, -1.0 / f.rate)
            else:
                h = -(f.high - x) / 2.0
            out = self.alpha * h / np.asarray(self.g.cdf(x))
        else:
            out = self.psi(phi, x) / self.c(x)
        return out[()] if np.ndim(out) == 0 else out

    def psi_over_c_mean(self, phi):
        """``int psi / C dF*``, the centring constant of both leading terms."""
        f = self.f
        if self._closed_identity(phi):
            return -1.0 / f.rate if isinstance(f, Exponential) else -(f.high - f.low) / 4.0
        if phi.kind == "constant":
            return 0.0
        lo = max(f.lower, self.g.lower)

        # dF*/C = dF/(1 - F(y-)); G cancels, which keeps y = a_G finite
        def integrand(y):
            surv = 1.0 - float(f.cdf_left(y))
            return float(self.psi(phi, y)) * float(f.pdf(y)) / surv if surv > 0 else 0.0

        return quad(integrand, lo, f.upper, "int psi/C dF*")

    def risk_integral(self, phi, lo, hi):
        """``int_{(lo, hi]} psi / C^2 dF*`` elementwise over arrays ``lo``, ``hi``."""
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        if self._closed_identity(phi):
            f = self.f
            k = -1.0 if isinstance(f, Exponential) else -0.5
            a = np.maximum(lo, f.lower)
            b = np.minimum(hi, f.upper)
            b = np.maximum(a, b)
            with np.errstate(invalid="ignore"):
                span = _inv_g_antiderivative(self.g, b) - _inv_g_antiderivative(self.g, a)
            span = np.where(b > a, span, 0.0)
            return self.alpha * k * span
        if phi.kind == "constant":
            return np.zeros(np.broadcast(lo, hi).shape)
        return self._risk_integral_quad(phi, lo, hi)

    def _risk_integral_quad(self, phi, lo, hi):
        f = self.f
        lo_c = np.maximum(lo, max(f.lower, self.g.lower))
        hi_c = np.minimum(hi, f.upper)
        knots = np.unique(np.concatenate([lo_c.ravel(), hi_c.ravel()]))

        def integrand(y):
            cy = float(self.c(y))
            if cy <= 0:
                return 0.0
            return float(self.psi(phi, y)) * float(self.fstar_pdf(y)) / cy**2

        pieces = [quad(integrand, a, b, "int psi/C^2 dF*",
                       points=self._breaks(phi, a, b))
                  for a, b in zip(knots[:-1], knots[1:])]
        cum = np.concatenate(([0.0], np.cumsum(pieces)))
        ia = cum[np.searchsorted(knots, lo_c)]
        ib = cum[np.searchsorted(knots, hi_c)]
        return np.where(hi_c > lo_c, ib - ia, 0.0)


def _parse_spec(spec):
    if isinstance(spec, TruncationModel):
        return spec
    if isinstance(spec, dict):
        family = spec.get("family")
        params = list(spec.get("params", []))
    else:
        text = str(spec).strip()
        family, _, rest = text.partition(":")
        params = [p for p in rest.replace(":", ",").split(",") if p.strip()] if rest else []
    return family, params


def make_model(spec) -> TruncationModel:
    """Build a model from ``"family:p1,p2,..."`` or ``{"family", "params"}``.

    Families
    --------
    ``exp-exp[:rate_x,rate_y]``
        X ~ Exp(rate_x), Y ~ Exp(rate_y); defaults 1, 1.
    ``uniform-uniform[:a,b,c,d]``
        X ~ U(a, b), Y ~ U(c, d); defaults 1, 2, 0, 2.
    ``no-truncation[:rate]``
        X ~ Exp(rate), Y = -1 almost surely.
    ``no-truncation-uniform[:a,b]``
        X ~ U(a, b), Y = a - 1 almost surely.
    """
    parsed = _parse_spec(spec)
    if isinstance(parsed, TruncationModel):
        return parsed
    family, params = parsed
    try:
        p = [float(v) for v in params]
    except ValueError:
        raise InvalidParameters(f"non-numeric parameters {params!r}") from None
    if any(not np.isfinite(v) for v in p):
        raise InvalidParameters(f"non-finite parameters {params!r}")

    def need(k, default):
        if not p:
            return list(default)
        if len(p) != k:
            raise InvalidParameters(f"{family} takes {k} parameters, got {len(p)}")
        return p

    try:
        if family == "exp-exp":
            lx, ly = need(2, (1.0, 1.0))
            return TruncationModel(Exponential(lx), Exponential(ly),
                                   name=f"exp-exp:{lx:g},{ly:g}")
        if family == "uniform-uniform":
            a, b, c, d = need(4, (1.0, 2.0, 0.0, 2.0))
            return TruncationModel(Uniform(a, b), Uniform(c, d),
                                   name=f"uniform-uniform:{a:g},{b:g},{c:g},{d:g}")
        if family == "no-truncation":
            (rate,) = need(1, (1.0,))
            return TruncationModel(Exponential(rate), PointMass(-1.0),
                                   name=f"no-truncation:{rate:g}")
        if family == "no-truncation-uniform":
            a, b = need(2, (0.0, 1.0))
            return TruncationModel(Uniform(a, b), PointMass(a - 1.0),
                                   name=f"no-truncation-uniform:{a:g},{b:g}")
    except ValueError as exc:
        if isinstance(exc, InvalidParameters):
            raise
        raise InvalidParameters(str(exc)) from None
    raise UnknownFamily(family)
