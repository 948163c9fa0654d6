from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import HAND, TELESCOPE, random_pairs
from truncstat.errors import AssumptionWarning, TiesPresent
from truncstat.estimator import (StepFunction, c_n, cumulative_hazard, detect_holes,
                                 fstar_mass, fstar_n, gamma_n, lynden_bell,
                                 lynden_bell_tie_free, modified_weights, risk_counts)

pairs_strategy = st.lists(
    st.tuples(st.integers(0, 10), st.integers(0, 10)), min_size=1, max_size=30
).map(lambda raw: [(float(max(a, b)), float(min(a, b))) for a, b in raw])


def test_hand_counts_by_enumeration():
    assert [oracles.count_at(HAND, z) for z in (1, 2, 3)] == [2, 1, 1]
    assert risk_counts(HAND).tolist() == [2, 1, 1]


@pytest.mark.parametrize("z, expected", [(1.0, 2 / 3), (1.5, 1 / 3), (0.0, 0.0), (0.45, 1 / 3)])
def test_c_n(z, expected):
    assert c_n(HAND, z) == pytest.approx(expected, abs=1e-15)


def test_c_n_closed_endpoints():
    assert c_n([(2.0, 1.0)], 1.0) == 1.0
    assert c_n([(2.0, 1.0)], 2.0) == 1.0


def test_fstar_n_and_mass():
    assert fstar_n(HAND, 2.0) == pytest.approx(2 / 3)
    assert fstar_n(HAND, 0.5) == 0.0
    assert fstar_mass([(2, 1), (2, 0), (5, 2)], 2.0) == pytest.approx(2 / 3)


def test_hand_weights():
    est = lynden_bell(HAND)
    assert oracles.lb_weights(HAND) == [Fraction(1, 2), Fraction(1, 2), 0]
    np.testing.assert_allclose(est.weights, [0.5, 0.5, 0.0], atol=1e-15)
    np.testing.assert_allclose(est.cdf, [0.5, 1.0, 1.0], atol=1e-15)


def test_telescoping_sample_is_ecdf():
    assert [oracles.count_at(TELESCOPE, z) for z in (1, 2, 3)] == [3, 2, 1]
    np.testing.assert_allclose(lynden_bell(TELESCOPE).weights, [1 / 3] * 3, atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(0.1, 50), min_size=1, max_size=40))
def test_no_truncation_gives_ecdf(xs):
    pairs = [(x, 0.0) for x in xs]
    est = lynden_bell(pairs)
    values, counts = np.unique(xs, return_counts=True)
    np.testing.assert_allclose(est.points, values)
    np.testing.assert_allclose(est.cdf, np.cumsum(counts) / len(xs), atol=1e-12)
    n = len(xs)
    ranks = np.arange(1, n + 1)
    expected = np.cumsum(1 / (n - ranks + 1))
    if values.size == n:
        np.testing.assert_allclose(cumulative_hazard(pairs, np.sort(xs)), expected, rtol=1e-12)


def test_modified_hand_weights():
    assert oracles.modified_weights(HAND) == [Fraction(1, 2), Fraction(2, 3), Fraction(1, 3)]
    mod = modified_weights(HAND)
    np.testing.assert_allclose(mod.weights, [1 / 2, 2 / 3, 1 / 3], atol=1e-15)
    assert mod.total_mass == pytest.approx(1.5)


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_modified_without_truncation(n):
    pairs = [(float(i), -1.0) for i in range(1, n + 1)]
    # nC_n(X_j) = n - j + 1, so each bracket is (n - j + 1) / (n - j + 2)
    expected = []
    for i in range(1, n + 1):
        prod = Fraction(1)
        for j in range(1, i):
            prod *= Fraction(n - j + 1, n - j + 2)
        expected.append(Fraction(1, n - i + 1) * prod)
    assert oracles.modified_weights(pairs) == expected
    w = modified_weights(pairs).weights
    np.testing.assert_allclose(w, [float(v) for v in expected], rtol=1e-13)
    assert np.all(w > 0)


def test_modified_two_points_by_hand():
    np.testing.assert_allclose(modified_weights([(1.0, 0.0), (2.0, 0.0)]).weights,
                               [1 / 2, 2 / 3], rtol=1e-15)


def test_modified_single_observation():
    assert modified_weights([(4.0, 1.0)]).weights.tolist() == [1.0]


@pytest.mark.parametrize("x, expected", [(0.5, 1.0), (1.0, 1.0), (2.0, 2 / 3), (3.0, 1 / 3)])
def test_gamma_n(x, expected):
    assert float(oracles.gamma(HAND, x)) == pytest.approx(expected)
    assert gamma_n(HAND, x) == pytest.approx(expected, abs=1e-14)


def test_gamma_n_rejects_ties():
    with pytest.raises(TiesPresent):
        gamma_n([(2, 1), (2, 0), (5, 2)], 3.0)


@pytest.mark.parametrize("x, expected", [(1.0, 0.5), (3.0, 2.5), (0.9, 0.0), (2.5, 1.5)])
def test_cumulative_hazard(x, expected):
    assert float(oracles.hazard(HAND, x)) == expected
    assert cumulative_hazard(HAND, x) == pytest.approx(expected, abs=1e-15)


def test_holes_hand():
    h = detect_holes(HAND)
    assert h.inner_hole_indices == (2,)
    assert h.first_inner_hole == 2
    assert h.zeroed_mass_points == (3,)
    assert h.zeroed_confirmed


@pytest.mark.parametrize("pairs", [TELESCOPE, [(3.0, 1.0)]])
def test_no_inner_holes(pairs):
    h = detect_holes(pairs)
    assert h.inner_hole_indices == ()
    assert h.first_inner_hole is None
    assert not h.has_holes


@pytest.mark.filterwarnings("ignore::truncstat.errors.AssumptionWarning")
@settings(max_examples=80, deadline=None)
@given(pairs_strategy)
def test_weights_match_rational_oracle(pairs):
    est = lynden_bell(pairs)
    np.testing.assert_allclose(est.weights, [float(w) for w in oracles.lb_weights(pairs)],
                               rtol=1e-12, atol=1e-14)
    np.testing.assert_allclose(modified_weights(pairs).weights,
                               [float(w) for w in oracles.modified_weights(pairs)],
                               rtol=1e-12, atol=1e-14)


@pytest.mark.filterwarnings("ignore::truncstat.errors.AssumptionWarning")
@settings(max_examples=80, deadline=None)
@given(pairs_strategy)
def test_estimate_invariants(pairs):
    est = lynden_bell(pairs)
    assert np.all(est.weights >= 0)
    assert np.all(np.diff(est.cdf) >= -1e-15)
    assert est.cdf[-1] == pytest.approx(est.weights.sum(), abs=1e-15)
    assert est.cdf[-1] == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(np.diff(est.cdf), est.weights[1:], atol=1e-12)
    # self-consistency
    before = np.concatenate(([0.0], est.cdf[:-1]))
    n = len(pairs)
    np.testing.assert_allclose(
        est.weights, (1 - before) * fstar_mass(pairs, est.points) / c_n(pairs, est.points),
        atol=1e-12)
    # holes
    for j in est.holes.inner_hole_indices:
        assert est.risk[j - 1] == est.mult[j - 1]
    if est.holes.first_inner_hole is not None:
        assert np.all(est.weights[est.holes.first_inner_hole:] == 0)
    assert est.hazard[-1] == pytest.approx(cumulative_hazard(pairs, est.points[-1]))
    assert est.n == n


@settings(max_examples=40, deadline=None)
@given(pairs_strategy, st.tuples(st.integers(0, 10), st.integers(0, 10)))
def test_adding_an_observation_never_lowers_counts(pairs, extra):
    extra = (float(max(extra)), float(min(extra)))
    z = np.array(sorted({x for x, _ in pairs}))
    before = np.rint(c_n(pairs, z) * len(pairs))
    after = np.rint(c_n(pairs + [extra], z) * (len(pairs) + 1))
    assert np.all(after >= before)


def test_tie_free_products_agree():
    rng = np.random.default_rng(8)
    for _ in range(50):
        pairs = random_pairs(rng, int(rng.integers(1, 40)))
        np.testing.assert_allclose(lynden_bell_tie_free(pairs), lynden_bell(pairs).cdf,
                                   atol=1e-12)


def test_step_function_conventions():
    f = StepFunction(np.array([1.0, 2.0]), np.array([0.25, 1.0]))
    assert f(0.5) == 0.0
    assert f(1.0) == 0.25
    assert f.left(1.0) == 0.0
    assert f.left(2.0) == 0.25
    assert f(7.0) == 1.0
    est = lynden_bell(HAND)
    assert est(1.5) == 0.5
    assert est.cdf_function().left(2.0) == 0.5


def test_support_warning():
    with pytest.warns(AssumptionWarning):
        lynden_bell([(1.0, 1.0), (2.0, 1.5)])


def test_large_sample_log_space_products():
    rng = np.random.default_rng(1)
    x = rng.exponential(size=20000)
    pairs = np.column_stack((x, x - rng.exponential(0.5, size=x.size)))
    est = lynden_bell(pairs)
    assert np.all(np.isfinite(est.weights))
    assert est.cdf[-1] == pytest.approx(1.0, abs=1e-9)
