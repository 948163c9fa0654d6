"""Univariate distributions with explicit left limits.

These back both the simulation models and the F* oracles used to build
pseudo-observations. Every cdf is right-continuous; ``cdf_left(x)`` returns
the limit from the left, so ``cdf(x) - cdf_left(x)`` is the atom at ``x``.
"""
from __future__ import annotations

import numpy as np


class Distribution:
    name = "distribution"
    continuous = True

    #: Lower end of the support, inf{x : F(x) > 0}.
    lower: float
    upper: float

    def cdf(self, x):
        raise NotImplementedError

    def cdf_left(self, x):
        return self.cdf(x)

    def pdf(self, x):
        raise NotImplementedError

    def sample(self, rng, size):
        raise NotImplementedError

    def mean(self):
        raise NotImplementedError

    def var(self):
        raise NotImplementedError

    def atom(self, x):
        return np.asarray(self.cdf(x)) - np.asarray(self.cdf_left(x))

    def __repr__(self):
        return f"{type(self).__name__}({self.params_repr()})"

    def params_repr(self):
        return ""


class Exponential(Distribution):
    name = "exp"

    def __init__(self, rate=1.0):
        if not rate > 0:
            raise ValueError("rate must be positive")
        self.rate = float(rate)
        self.lower = 0.0
        self.upper = np.inf

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, -np.expm1(-self.rate * np.maximum(x, 0.0)), 0.0)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0, self.rate * np.exp(-self.rate * np.maximum(x, 0.0)), 0.0)

    def sample(self, rng, size):
        return rng.exponential(1.0 / self.rate, size=size)

    def mean(self):
        return 1.0 / self.rate

    def var(self):
        return 1.0 / self.rate**2

    def params_repr(self):
        return f"rate={self.rate:g}"


class Uniform(Distribution):
    name = "uniform"

    def __init__(self, low=0.0, high=1.0):
        if not high > low:
            raise ValueError("need low < high")
        self.low = float(low)
        self.high = float(high)
        self.lower = self.low
        self.upper = self.high

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.clip((x - self.low) / (self.high - self.low), 0.0, 1.0)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.low) & (x <= self.high)
        return np.where(inside, 1.0 / (self.high - self.low), 0.0)

    def sample(self, rng, size):
        return rng.uniform(self.low, self.high, size=size)

    def mean(self):
        return 0.5 * (self.low + self.high)

    def var(self):
        return (self.high - self.low) ** 2 / 12.0

    def params_repr(self):
        return f"low={self.low:g}, high={self.high:g}"


class Discrete(Distribution):
    """Finitely supported distribution given by atoms and their masses."""

    name = "discrete"
    continuous = False

    def __init__(self, points, probs):
        points = np.asarray(points, dtype=float)
        probs = np.asarray(probs, dtype=float)
        if points.ndim != 1 or points.shape != probs.shape or points.size == 0:
            raise ValueError("points and probs must be matching non-empty 1-d arrays")
        if np.any(np.diff(points) <= 0):
            raise ValueError("points must be strictly increasing")
        if np.any(probs <= 0) or not np.isclose(probs.sum(), 1.0, rtol=0, atol=1e-12):
            raise ValueError("probs must be positive and sum to one")
        self.points = points
        self.probs = probs
        self._cum = np.cumsum(probs)
        self._cum[-1] = 1.0
        self.lower = float(points[0])
        self.upper = float(points[-1])

    def cdf(self, x):
        k = np.searchsorted(self.points, np.asarray(x, dtype=float), side="right")
        return np.concatenate(([0.0], self._cum))[k]

    def cdf_left(self, x):
        k = np.searchsorted(self.points, np.asarray(x, dtype=float), side="left")
        return np.concatenate(([0.0], self._cum))[k]

    def sample(self, rng, size):
        return self.points[rng.choice(self.points.size, size=size, p=self.probs)]

    def mean(self):
        return float(self.points @ self.probs)

    def var(self):
        return float(((self.points - self.mean()) ** 2) @ self.probs)

    def params_repr(self):
        return f"points={self.points.tolist()}, probs={self.probs.tolist()}"


class PointMass(Discrete):
    name = "point"

    def __init__(self, at=0.0):
        super().__init__([at], [1.0])
        self.at = float(at)

    def sample(self, rng, size):
        # consume no randomness so paired draws stay aligned with the X stream
        return np.full(size, self.at)

    def params_repr(self):
        return f"at={self.at:g}"
