"""Monte Carlo harness: conditional sampling and replication studies.

Every replication draws from its own counter-based generator,
``Philox(SeedSequence(seed, spawn_key=(study, n, rep)))``, and per-replication
results are stored by index before aggregation. Reports are therefore
bit-identical for any number of workers.
"""
from __future__ import annotations

import csv
import io
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from .errors import RejectionBudgetExceeded
from .estimator import _risk_counts_at, lb_weights, modified_weight_values
from .inference import confidence_interval, representation_terms
from .models import TruncationModel, make_model
from .sample import TruncatedSample, _sorted_from_arrays
from .scores import ScoreFunction

__all__ = [
    "MSERecord",
    "CoverageRecord",
    "RemainderRecord",
    "StudyReport",
    "replication_rng",
    "rejection_sample",
    "draw_observed_sample",
    "mse_study",
    "coverage_study",
    "remainder_decay_study",
    "default_workers",
]

ATTEMPTS_PER_ACCEPT = 1000
ESTIMATORS = ("lynden-bell", "modified")

_STUDY_TAGS = {"mse": 1, "coverage": 2, "remainder": 3}


def default_workers():
    env = os.environ.get("TRUNCSTAT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def replication_rng(seed, study, n, rep):
    """Independent generator for one replication of one study cell."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(_STUDY_TAGS[study], int(n), int(rep)))
    return np.random.Generator(np.random.Philox(ss))


def rejection_sample(model: TruncationModel, n, rng):
    """Draw ``n`` pairs from the law of (X, Y) given ``Y <= X``.

    Returns ``(x, y, attempts)`` where ``attempts`` counts the raw pairs
    drawn up to and including the n-th accepted one.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    budget = int(np.ceil(ATTEMPTS_PER_ACCEPT * n / model.alpha))
    batch = int(np.ceil(1.25 * n / model.alpha)) + 16
    xs, ys = [], []
    got = drawn = 0
    while got < n:
        size = min(batch, budget - drawn)
        if size <= 0:
            raise RejectionBudgetExceeded(got, n, drawn)
        x, y = model.sample_pairs(rng, size)
        keep = y <= x
        k = int(keep.sum())
        if got + k >= n:
            last = int(np.flatnonzero(keep)[n - got - 1])
            keep[last + 1:] = False
            drawn += last + 1
        else:
            drawn += size
        xs.append(x[keep])
        ys.append(y[keep])
        got += min(k, n - got)
    return np.concatenate(xs), np.concatenate(ys), drawn


def draw_observed_sample(model, n, seed) -> TruncatedSample:
    """``n`` observed pairs, deterministic given ``seed`` (int or Generator)."""
    model = make_model(model)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    x, y, _ = rejection_sample(model, n, rng)
    return TruncatedSample(x, y)


# reports

@dataclass(frozen=True)
class MSERecord:
    n: int
    estimator: str
    reps: int
    mse: float
    mc_se: float
    bias: float
    variance: float
    seed: int


@dataclass(frozen=True)
class CoverageRecord:
    n: int
    estimator: str
    reps: int
    level: float
    coverage: float
    mc_se: float
    mean_sigma2: float
    mc_variance: float
    mean_half_width: float
    seed: int


@dataclass(frozen=True)
class RemainderRecord:
    n: int
    reps: int
    median_abs_remainder: float
    q90_abs_remainder: float
    mean_eta: float
    mean_var_eta: float
    seed: int


@dataclass(frozen=True)
class StudyReport:
    kind: str
    model: str
    phi: str
    records: tuple

    def columns(self):
        return [f.name for f in fields(type(self.records[0]))] if self.records else []

    def rows(self):
        return [asdict(r) for r in self.records]

    def select(self, **match):
        return [r for r in self.records
                if all(getattr(r, k) == v for k, v in match.items())]

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns())
        for r in self.records:
            w.writerow([_fmt(getattr(r, c)) for c in self.columns()])
        return buf.getvalue()


def _fmt(v):
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


# replication kernels; module-level so worker processes can run them

def _mse_chunk(model, phi, n, seed, lo, hi):
    out = np.empty((hi - lo, 2))
    for k, rep in enumerate(range(lo, hi)):
        x, y, _ = rejection_sample(model, n, replication_rng(seed, "mse", n, rep))
        s = _sorted_from_arrays(x, y)
        nc = _risk_counts_at(s, s.distinct_x)
        vals = phi(s.distinct_x)
        out[k, 0] = lb_weights(nc, s.mult) @ vals
        out[k, 1] = modified_weight_values(nc, s.mult) @ vals
    return out


def _coverage_chunk(model, phi, n, seed, level, lo, hi):
    out = np.empty((hi - lo, 4))
    for k, rep in enumerate(range(lo, hi)):
        x, y, _ = rejection_sample(model, n, replication_rng(seed, "coverage", n, rep))
        res = confidence_interval(np.column_stack((x, y)), phi, level)
        out[k] = (res.estimate, res.sigma2, res.ci[0], res.ci[1])
    return out


def _remainder_chunk(model, phi, n, seed, lo, hi):
    out = np.empty((hi - lo, 3))
    for k, rep in enumerate(range(lo, hi)):
        x, y, _ = rejection_sample(model, n, replication_rng(seed, "remainder", n, rep))
        terms = representation_terms(np.column_stack((x, y)), model, phi)
        out[k] = (terms.remainder, terms.per_obs.mean(), terms.per_obs.var())
    return out


def _replicate(kernel, args, reps, workers):
    """Run ``kernel(*args, lo, hi)`` over rep ranges and stack in rep order."""
    workers = default_workers() if workers is None else max(1, int(workers))
    if workers == 1 or reps < 2:
        return kernel(*args, 0, reps)
    nchunks = min(reps, 4 * workers)
    edges = np.linspace(0, reps, nchunks + 1).astype(int)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(kernel, *args, int(a), int(b))
                   for a, b in zip(edges[:-1], edges[1:]) if b > a]
        parts = [f.result() for f in futures]
    return np.concatenate(parts, axis=0)


def _check_reps(reps):
    if int(reps) < 1:
        raise ValueError("reps must be at least 1")
    return int(reps)


def mse_study(model, phi: ScoreFunction, n_list, reps=10000, seed=0, workers=None,
              estimators=ESTIMATORS) -> StudyReport:
    """MSE of ``int phi dF_n`` and ``int phi dF^_n`` against ``int phi dF``.

    Both estimators are evaluated on the same simulated samples.
    """
    model = make_model(model)
    reps = _check_reps(reps)
    truth = model.mean_phi(phi)
    records = []
    for n in [int(v) for v in np.atleast_1d(n_list)]:
        vals = _replicate(_mse_chunk, (model, phi, n, seed), reps, workers)
        for j, name in enumerate(ESTIMATORS):
            if name not in estimators:
                continue
            err = vals[:, j] - truth
            sq = err**2
            mse = float(sq.mean())
            bias = float(err.mean())
            mc_se = float(sq.std(ddof=1) / np.sqrt(reps)) if reps > 1 else float("nan")
            records.append(MSERecord(n=n, estimator=name, reps=reps, mse=mse, mc_se=mc_se,
                                     bias=bias, variance=float(err.var()), seed=int(seed)))
    return StudyReport("mse", model.name, phi.spec, tuple(records))


def coverage_study(model, phi: ScoreFunction, n, reps=2000, level=0.95, seed=0,
                   workers=None) -> StudyReport:
    """Empirical coverage of plug-in normal intervals for ``int phi dF``.

    Also reports the Monte Carlo variance of ``sqrt(n)(int phi dF_n - int phi dF)``
    next to the mean plug-in variance.
    """
    model = make_model(model)
    reps = _check_reps(reps)
    if not (model.identifiable and model.a2_holds):
        warnings.warn(f"{model.name} violates the moment/support conditions; "
                      "normal intervals may be unreliable", RuntimeWarning, stacklevel=2)
    truth = model.mean_phi(phi)
    records = []
    for nn in [int(v) for v in np.atleast_1d(n)]:
        vals = _replicate(_coverage_chunk, (model, phi, nn, seed, level), reps, workers)
        hit = (vals[:, 2] <= truth) & (truth <= vals[:, 3])
        p = float(hit.mean())
        records.append(CoverageRecord(
            n=nn, estimator="lynden-bell", reps=reps, level=float(level), coverage=p,
            mc_se=float(np.sqrt(p * (1 - p) / reps)),
            mean_sigma2=float(vals[:, 1].mean()),
            mc_variance=float(nn * np.var(vals[:, 0] - truth)),
            mean_half_width=float(0.5 * (vals[:, 3] - vals[:, 2]).mean()),
            seed=int(seed)))
    return StudyReport("coverage", model.name, phi.spec, tuple(records))


def remainder_decay_study(model, phi: ScoreFunction, n_list, reps=500, seed=0,
                          workers=None) -> StudyReport:
    """Size of the expansion remainder (sqrt(n) scale) across sample sizes."""
    model = make_model(model)
    reps = _check_reps(reps)
    records = []
    for n in [int(v) for v in np.atleast_1d(n_list)]:
        vals = _replicate(_remainder_chunk, (model, phi, n, seed), reps, workers)
        absr = np.abs(vals[:, 0])
        records.append(RemainderRecord(
            n=n, reps=reps,
            median_abs_remainder=float(np.median(absr)),
            q90_abs_remainder=float(np.quantile(absr, 0.9)),
            mean_eta=float(vals[:, 1].mean()),
            mean_var_eta=float(vals[:, 2].mean()),
            seed=int(seed)))
    return StudyReport("remainder", model.name, phi.spec, tuple(records))
