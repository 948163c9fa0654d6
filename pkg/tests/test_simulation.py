import numpy as np
import pytest
from scipy import stats

from truncstat.distributions import Exponential
from truncstat.errors import RejectionBudgetExceeded
from truncstat.models import TruncationModel, make_model
from truncstat.scores import ScoreFunction
from truncstat.simulation import (coverage_study, mse_study, rejection_sample,
                                  remainder_decay_study, replication_rng)

ID = ScoreFunction.identity()


@pytest.mark.parametrize("spec", ["exp-exp", "exp-exp:1,3", "uniform-uniform"])
def test_acceptance_rate_is_alpha(spec):
    m = make_model(spec)
    n = 20000
    _, _, attempts = rejection_sample(m, n, np.random.default_rng(2))
    # attempts until n successes is negative binomial
    se = np.sqrt(n * (1 - m.alpha)) / m.alpha
    assert abs(attempts - n / m.alpha) < 3 * se


def test_rejection_output_is_valid():
    x, y, _ = rejection_sample(make_model("exp-exp"), 500, np.random.default_rng(0))
    assert x.size == y.size == 500
    assert np.all(y <= x)


def test_observed_x_marginal_is_fstar():
    m = make_model("uniform-uniform")
    passed = 0
    for seed in range(20):
        x, _, _ = rejection_sample(m, 10000, np.random.default_rng(seed))
        passed += stats.kstest(x, m.fstar).pvalue > 0.01
    assert passed >= 19


def test_budget_exceeded():
    # alpha reported as large but the sampler never accepts
    m = make_model("exp-exp")
    m.alpha = 1.0
    m.sample_pairs = lambda rng, size: (np.zeros(size), np.ones(size))
    with pytest.raises(RejectionBudgetExceeded):
        rejection_sample(m, 3, np.random.default_rng(0))


def test_replication_rng_streams_differ():
    a = replication_rng(1, "mse", 10, 0).random(4)
    assert np.array_equal(a, replication_rng(1, "mse", 10, 0).random(4))
    for other in [(2, "mse", 10, 0), (1, "coverage", 10, 0), (1, "mse", 20, 0), (1, "mse", 10, 1)]:
        assert not np.array_equal(a, replication_rng(*other).random(4))


def test_mse_study_is_deterministic():
    a = mse_study("exp-exp", ID, [10, 20], reps=50, seed=4, workers=1)
    b = mse_study("exp-exp", ID, [10, 20], reps=50, seed=4, workers=1)
    assert a.to_csv() == b.to_csv()
    assert mse_study("exp-exp", ID, [10], reps=1, seed=4, workers=1).records[0].mse == \
        mse_study("exp-exp", ID, [10], reps=1, seed=4, workers=1).records[0].mse


def test_parallel_matches_serial():
    serial = mse_study("uniform-uniform", ID, [15], reps=40, seed=9, workers=1)
    parallel = mse_study("uniform-uniform", ID, [15], reps=40, seed=9, workers=2)
    assert serial.to_csv() == parallel.to_csv()


def test_mse_without_truncation_is_variance_over_n():
    rep = mse_study("no-truncation", ID, [25], reps=4000, seed=1, workers=1,
                    estimators=("lynden-bell",))
    r = rep.records[0]
    assert r.mse == pytest.approx(1 / 25, abs=3 * r.mc_se)
    assert len(rep.records) == 1


def test_mse_report_columns():
    rep = mse_study("exp-exp", ID, [10], reps=5, seed=0, workers=1)
    assert rep.columns() == ["n", "estimator", "reps", "mse", "mc_se", "bias", "variance", "seed"]
    assert [r.estimator for r in rep.records] == ["lynden-bell", "modified"]
    assert rep.select(estimator="modified")[0].n == 10
    assert rep.to_csv().count("\n") == 3


def test_coverage_without_truncation():
    r = coverage_study("no-truncation", ID, 200, reps=1000, seed=3, workers=1).records[0]
    assert 0.93 <= r.coverage <= 0.97


def test_coverage_at_half_level():
    r = coverage_study("uniform-uniform", ID, 300, reps=1000, level=0.5, seed=3,
                       workers=1).records[0]
    assert abs(r.coverage - 0.5) < 3 * np.sqrt(0.25 / 1000) + 0.02


def test_coverage_warns_when_conditions_fail():
    with pytest.warns(RuntimeWarning):
        coverage_study("exp-exp", ID, 20, reps=3, seed=0, workers=1)


def test_remainder_vanishes_without_truncation():
    rep = remainder_decay_study("no-truncation", ID, [50, 200], reps=30, seed=0, workers=1)
    assert all(r.q90_abs_remainder < 1e-9 for r in rep.records)


def test_custom_model_object():
    m = TruncationModel(Exponential(2.0), Exponential(2.0))
    rep = mse_study(m, ID, [10], reps=5, seed=0, workers=1)
    assert rep.model == m.name


def test_bad_reps():
    with pytest.raises(ValueError):
        mse_study("exp-exp", ID, [10], reps=0)
