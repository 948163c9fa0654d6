"""Observed truncated pairs: validation, canonical ordering, pseudo-observations."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .distributions import Discrete
from .errors import EmptySample, NonFinite, OracleInconsistent, TruncationViolated

__all__ = [
    "TruncatedSample",
    "SortedSample",
    "PseudoSample",
    "validate_and_sort",
    "build_pseudo_sample",
    "empirical_fstar",
]


def _as_pairs(raw):
    if isinstance(raw, TruncatedSample):
        return raw.x, raw.y
    if isinstance(raw, SortedSample):
        return raw.x, raw.y
    arr = np.asarray(raw, dtype=float)
    if arr.size == 0:
        raise EmptySample()
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) array of (x, y) pairs, got shape {arr.shape}")
    return arr[:, 0].copy(), arr[:, 1].copy()


def _check(x, y):
    if x.size == 0:
        raise EmptySample()
    bad = ~(np.isfinite(x) & np.isfinite(y))
    if bad.any():
        raise NonFinite(int(np.flatnonzero(bad)[0]))
    violated = np.flatnonzero(y > x)
    if violated.size:
        raise TruncationViolated(violated.tolist())


@dataclass(frozen=True, eq=False)
class TruncatedSample:
    """Observed pairs ``(x_i, y_i)`` with ``y_i <= x_i``, in input order."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float).reshape(-1)
        y = np.array(self.y, dtype=float).reshape(-1)
        if x.shape != y.shape:
            raise ValueError("x and y must have the same length")
        _check(x, y)
        x.flags.writeable = False
        y.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_pairs(cls, pairs):
        return cls(*_as_pairs(pairs))

    @property
    def n(self):
        return self.x.size

    def pairs(self):
        return list(zip(self.x.tolist(), self.y.tolist()))


@dataclass(frozen=True, eq=False)
class SortedSample:
    """Canonically ordered sample.

    Attributes
    ----------
    distinct_x : ndarray, shape (m,)
        Strictly increasing distinct x-values X_{1:n} < ... < X_{m:n}.
    mult : ndarray of int, shape (m,)
        Multiplicities d_i; they sum to n.
    perm : ndarray of int, shape (n,)
        Original row indices sorted by (x, row index). The rows tied at
        ``distinct_x[i]`` are ``perm[starts[i]:starts[i] + mult[i]]``.
    x, y : ndarray, shape (n,)
        Original values in input order.
    """

    distinct_x: np.ndarray
    mult: np.ndarray
    perm: np.ndarray
    x: np.ndarray
    y: np.ndarray

    @property
    def n(self):
        return self.x.size

    @property
    def m(self):
        return self.distinct_x.size

    @property
    def y_values(self):
        return self.y

    @property
    def has_ties(self):
        return self.m < self.n

    @cached_property
    def starts(self):
        return np.concatenate(([0], np.cumsum(self.mult)[:-1]))

    @cached_property
    def x_sorted(self):
        return self.x[self.perm]

    @cached_property
    def y_sorted(self):
        return np.sort(self.y, kind="stable")

    @cached_property
    def slot(self):
        """Index into ``distinct_x`` for each original row."""
        out = np.empty(self.n, dtype=np.intp)
        out[self.perm] = np.repeat(np.arange(self.m), self.mult)
        return out

    def rows_at(self, i):
        s = self.starts[i]
        return self.perm[s:s + self.mult[i]]

    def pairs(self):
        return list(zip(self.x.tolist(), self.y.tolist()))


def _sorted_from_arrays(x, y):
    # trusted fast path: x, y already validated
    perm = np.argsort(x, kind="stable")
    xs = x[perm]
    new = np.empty(xs.size, dtype=bool)
    new[0] = True
    np.not_equal(xs[1:], xs[:-1], out=new[1:])
    starts = np.flatnonzero(new)
    mult = np.diff(np.append(starts, xs.size))
    return SortedSample(distinct_x=xs[starts], mult=mult, perm=perm, x=x, y=y)


def validate_and_sort(raw) -> SortedSample:
    """Validate observed pairs and order them canonically.

    ``raw`` may be a sequence of ``(x, y)`` pairs, an ``(n, 2)`` array or a
    :class:`TruncatedSample`. All rows with ``y > x`` are reported together.
    """
    if isinstance(raw, SortedSample):
        return raw
    if isinstance(raw, TruncatedSample):
        x, y = np.asarray(raw.x), np.asarray(raw.y)
    else:
        x, y = _as_pairs(raw)
        _check(x, y)
        x.flags.writeable = False
        y.flags.writeable = False
    return _sorted_from_arrays(x, y)


def empirical_fstar(sample) -> Discrete:
    """The empirical distribution of the observed x-values as an F* oracle."""
    s = validate_and_sort(sample)
    return Discrete(s.distinct_x, s.mult / s.n)


@dataclass(frozen=True, eq=False)
class PseudoSample:
    """Tie-free pseudo-observations ``(u, t)`` on the F*-scale.

    Entries are sorted by ``u``; ``link[k]`` is the original row that
    produced ``u[k]`` and ``x[k]`` its x-value, i.e. the quantile image of
    ``u[k]`` under F*.
    """

    u: np.ndarray
    t: np.ndarray
    link: np.ndarray
    x: np.ndarray = field(repr=False)

    @property
    def n(self):
        return self.u.size

    def as_sorted(self) -> SortedSample:
        return validate_and_sort(np.column_stack((self.u, self.t)))


def build_pseudo_sample(sample, fstar, rng=None, placement="uniform") -> PseudoSample:
    """Map each observation to a distinct uniform-scale value.

    Observations at an atom ``x`` of F* receive values strictly inside the
    jump interval ``(F*(x-), F*(x))``, ordered by original row index; a lone
    observation at a continuity point gets ``F*(x)``. Truncators become
    ``F*(y-)``.

    Parameters
    ----------
    sample : SortedSample or pairs
    fstar : object with vectorised ``cdf`` and ``cdf_left``
    rng : numpy Generator or seed, optional
        Used only with ``placement="uniform"``.
    placement : {"uniform", "even"}
        ``"uniform"`` draws i.i.d. uniforms on the jump interval;
        ``"even"`` places the d tied values at ``a + (b - a) j / (d + 1)``.
    """
    if placement not in ("uniform", "even"):
        raise ValueError(f"unknown placement {placement!r}")
    s = validate_and_sort(sample)
    rng = np.random.default_rng(rng)

    lo = np.asarray(fstar.cdf_left(s.distinct_x), dtype=float)
    hi = np.asarray(fstar.cdf(s.distinct_x), dtype=float)
    u_rows = np.empty(s.n)
    for i in range(s.m):
        rows = s.rows_at(i)
        d = rows.size
        a, b = lo[i], hi[i]
        if b - a <= 0:
            if d > 1:
                raise OracleInconsistent(float(s.distinct_x[i]), d)
            u_rows[rows] = b
            continue
        if placement == "even":
            vals = a + (b - a) * np.arange(1, d + 1) / (d + 1)
        else:
            vals = np.sort(rng.uniform(a, b, size=d))
            while vals[0] <= a or np.any(np.diff(vals) <= 0):
                vals = np.sort(rng.uniform(a, b, size=d))
        u_rows[rows] = vals

    t_rows = np.asarray(fstar.cdf_left(s.y), dtype=float)
    order = np.argsort(u_rows, kind="stable")
    u = u_rows[order]
    if np.any(np.diff(u) <= 0):
        k = int(np.flatnonzero(np.diff(u) <= 0)[0])
        raise OracleInconsistent(float(s.x[order[k]]), 2)
    bad = np.flatnonzero(t_rows > u_rows)
    if bad.size:
        raise OracleInconsistent(float(s.x[bad[0]]), 1)
    return PseudoSample(u=u, t=t_rows[order], link=order, x=s.x[order])
