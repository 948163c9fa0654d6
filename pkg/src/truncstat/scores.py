"""Score functions phi for Lynden-Bell integrals."""
from __future__ import annotations

import numpy as np

from .errors import ScoreUndefinedAt

__all__ = ["ScoreFunction"]


class ScoreFunction:
    """A vectorised score ``phi`` with a recognisable kind.

    Use the constructors :meth:`identity`, :meth:`indicator`, :meth:`power`,
    :meth:`constant` and :meth:`tabulated`. Scores combine linearly with
    ``+`` and scalar ``*``; the result has kind ``"combination"``.
    Instances are plain data and pickle cleanly, so they can be shipped to
    worker processes.
    """

    def __init__(self, kind, params=()):
        self.kind = kind
        self.params = tuple(params)
        if kind == "tabulated":
            items = sorted(self.params[0].items())
            self._keys = np.array([k for k, _ in items], dtype=float)
            self._vals = np.array([v for _, v in items], dtype=float)

    def __call__(self, x):
        out = self._eval(np.asarray(x, dtype=float))
        return out[()] if np.ndim(out) == 0 else out

    def _eval(self, x):
        kind, p = self.kind, self.params
        if kind == "identity":
            return x.copy()
        if kind == "indicator":
            return (x <= p[0]).astype(float)
        if kind == "power":
            return np.power(x, p[0])
        if kind == "constant":
            return np.full(np.shape(x), p[0])
        if kind == "tabulated":
            return self._lookup(x)
        if kind == "sum":
            return p[0]._eval(x) + p[1]._eval(x)
        if kind == "scaled":
            return p[0] * p[1]._eval(x)
        raise ValueError(f"unknown score kind {kind!r}")

    def _lookup(self, x):
        keys, flat = self._keys, np.atleast_1d(x)
        k = np.searchsorted(keys, flat)
        ok = (k < keys.size) & (keys[np.minimum(k, keys.size - 1)] == flat)
        if not ok.all():
            raise ScoreUndefinedAt(float(flat[~ok][0]))
        return self._vals[k].reshape(np.shape(x))

    def __repr__(self):
        if self.kind == "tabulated":
            return f"ScoreFunction(tabulated, {len(self.params[0])} points)"
        args = ", ".join(repr(p) for p in self.params)
        return f"ScoreFunction({self.kind}{', ' if args else ''}{args})"

    def __eq__(self, other):
        return (isinstance(other, ScoreFunction) and self.kind == other.kind
                and self.params == other.params)

    __hash__ = None

    @property
    def spec(self):
        """Compact text form, e.g. ``indicator:1.5``."""
        if self.kind == "identity":
            return "identity"
        if self.kind in ("indicator", "power", "constant"):
            return f"{self.kind}:{self.params[0]!r}"
        return self.kind

    @classmethod
    def identity(cls):
        return cls("identity")

    @classmethod
    def indicator(cls, threshold):
        """``1`` for arguments ``<= threshold``, else ``0``."""
        return cls("indicator", (float(threshold),))

    @classmethod
    def power(cls, exponent):
        return cls("power", (float(exponent),))

    @classmethod
    def constant(cls, value=1.0):
        return cls("constant", (float(value),))

    @classmethod
    def tabulated(cls, table):
        """Score known only at finitely many points (mapping point -> value)."""
        return cls("tabulated", ({float(k): float(v) for k, v in dict(table).items()},))

    def __add__(self, other):
        if not isinstance(other, ScoreFunction):
            other = ScoreFunction.constant(other)
        return ScoreFunction("sum", (self, other))

    __radd__ = __add__

    def __mul__(self, scalar):
        return ScoreFunction("scaled", (float(scalar), self))

    __rmul__ = __mul__

    def __neg__(self):
        return -1.0 * self

    def __sub__(self, other):
        if isinstance(other, ScoreFunction):
            return self + (-1.0 * other)
        return self + (-float(other))
