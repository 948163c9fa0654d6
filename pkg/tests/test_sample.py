from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import random_pairs
from truncstat.distributions import Discrete, Uniform
from truncstat.errors import EmptySample, NonFinite, OracleInconsistent, TruncationViolated
from truncstat.estimator import lynden_bell, risk_counts
from truncstat.inference import lb_integral
from truncstat.sample import (TruncatedSample, build_pseudo_sample, empirical_fstar,
                              validate_and_sort)
from truncstat.scores import ScoreFunction


def test_sort_no_ties():
    s = validate_and_sort([(1, 0.5), (2, 0.4), (3, 2.5)])
    assert s.m == 3
    assert s.distinct_x.tolist() == [1, 2, 3]
    assert s.mult.tolist() == [1, 1, 1]


def test_sort_collapses_ties():
    s = validate_and_sort([(2, 1), (2, 0), (5, 2)])
    assert s.m == 2
    assert s.distinct_x.tolist() == [2, 5]
    assert s.mult.tolist() == [2, 1]
    assert s.rows_at(0).tolist() == [0, 1]


@pytest.mark.parametrize("raw, exc", [
    ([(1, 2)], TruncationViolated),
    ([], EmptySample),
    ([(1, 0), (np.nan, 0)], NonFinite),
    ([(np.inf, 0)], NonFinite),
])
def test_validation_errors(raw, exc):
    with pytest.raises(exc):
        validate_and_sort(raw)


def test_truncation_violation_lists_all_rows():
    with pytest.raises(TruncationViolated) as info:
        validate_and_sort([(1, 2), (3, 0), (0, 0.5), (4, 4)])
    assert info.value.rows == [0, 2]
    assert info.value.code == "sample.TruncationViolated"


def test_truncated_sample_is_read_only():
    t = TruncatedSample([3.0, 1.0], [0.0, 0.5])
    with pytest.raises(ValueError):
        t.x[0] = 5.0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)), min_size=1, max_size=25))
def test_sorting_is_a_bijection_on_rows(raw):
    pairs = [(float(max(a, b)), float(min(a, b))) for a, b in raw]
    s = validate_and_sort(pairs)
    assert np.all(np.diff(s.distinct_x) > 0)
    assert s.mult.sum() == len(pairs)
    assert sorted(s.perm.tolist()) == list(range(len(pairs)))
    rebuilt = [(float(s.distinct_x[s.slot[r]]), float(s.y[r])) for r in range(len(pairs))]
    assert Counter(rebuilt) == Counter(pairs)


# pseudo-observations

def _pseudo_identities(pairs, pseudo):
    """Check the tie-splitting identities by enumerating pseudo risk sets."""
    u, t = pseudo.u.tolist(), pseudo.t.tolist()
    n = len(u)
    pts = oracles.distinct(pairs)
    w = oracles.lb_weights(pairs)
    cdf_before = [sum(w[:i]) for i in range(len(pts))]

    def ncu(v):
        return sum(1 for uk, tk in zip(u, t) if tk <= v <= uk)

    # pseudo estimator by the tie-free product, evaluated just left of each u
    surv_left, running = [], 1.0
    for v in u:
        surv_left.append(running)
        running *= (ncu(v) - 1) / ncu(v)

    for i, z in enumerate(pts):
        ks = [k for k in range(n) if pseudo.x[k] == z]
        counts = [ncu(u[k]) for k in ks]
        assert counts[0] == oracles.count_at(pairs, z)
        assert all(b == a - 1 for a, b in zip(counts, counts[1:]))
        rhs = float((1 - cdf_before[i]) / oracles.count_at(pairs, z))
        for k in ks:
            assert surv_left[k] / ncu(u[k]) == pytest.approx(rhs, abs=1e-12)


def test_pseudo_identity_transform():
    pairs = [(0.3, 0.1), (0.8, 0.2), (0.5, 0.45)]
    ps = build_pseudo_sample(pairs, Uniform(0, 1))
    assert ps.u.tolist() == [0.3, 0.5, 0.8]
    assert ps.t.tolist() == [0.1, 0.45, 0.2]
    assert ps.link.tolist() == [0, 2, 1]


def test_two_ties_inside_jump_interval():
    fstar = Discrete([1.0, 2.0, 3.0], [0.2, 0.4, 0.4])
    pairs = [(2.0, 0.0), (2.0, 1.0), (3.0, 0.5), (1.0, 0.0)]
    ps = build_pseudo_sample(pairs, fstar, placement="even")
    tied = ps.u[ps.x == 2.0]
    assert np.all((tied > 0.2) & (tied <= 0.6))
    assert tied[0] != tied[1]
    _pseudo_identities(pairs, ps)


def test_discrete_model_integrals_match():
    # F* atoms {1: 1/2, 2: 1/2}; by hand nC_n = (3, 1) gives weights (2/3, 1/3)
    fstar = Discrete([1.0, 2.0], [0.5, 0.5])
    pairs = [(1.0, 0.0), (1.0, 0.0), (2.0, 0.0)]
    assert oracles.lb_weights(pairs) == [Fraction(2, 3), Fraction(1, 3)]
    ps = build_pseudo_sample(pairs, fstar, rng=5)
    est_u = lynden_bell(ps.as_sorted())
    phi_star = dict(zip(ps.u.tolist(), ps.x.tolist()))
    lhs = float(est_u.weights @ np.array([phi_star[v] for v in est_u.points]))
    assert lhs == pytest.approx(4 / 3, abs=1e-12)
    assert lb_integral(lynden_bell(pairs), ScoreFunction.identity()) == pytest.approx(4 / 3, abs=1e-12)


@pytest.mark.parametrize("placement", ["uniform", "even"])
def test_pseudo_identities_random(placement):
    rng = np.random.default_rng(11)
    for _ in range(25):
        pairs = random_pairs(rng, int(rng.integers(1, 15)), ties=True)
        ps = build_pseudo_sample(pairs, empirical_fstar(pairs), rng=rng, placement=placement)
        assert np.all(np.diff(ps.u) > 0)
        _pseudo_identities(pairs, ps)


def test_pseudo_risk_counts_match_at_first_tie():
    rng = np.random.default_rng(3)
    pairs = random_pairs(rng, 30, ties=True)
    s = validate_and_sort(pairs)
    ps = build_pseudo_sample(s, empirical_fstar(s), rng=rng)
    nu = risk_counts(ps.as_sorted())
    first = [int(np.flatnonzero(ps.x == z)[0]) for z in s.distinct_x]
    assert nu[first].tolist() == risk_counts(s).tolist()


def test_zero_width_interval_with_ties_is_rejected():
    with pytest.raises(OracleInconsistent):
        build_pseudo_sample([(0.5, 0.1), (0.5, 0.2)], Uniform(0, 1))


def test_pseudo_placement_is_seeded():
    pairs = [(2.0, 0.0), (2.0, 1.0), (2.0, 0.5)]
    fstar = Discrete([2.0], [1.0])
    a = build_pseudo_sample(pairs, fstar, rng=9)
    b = build_pseudo_sample(pairs, fstar, rng=9)
    assert a.u.tolist() == b.u.tolist()
    # ties assigned in row order
    assert a.link.tolist() == [0, 1, 2]
