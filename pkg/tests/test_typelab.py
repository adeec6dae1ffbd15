import itertools
import math

import numpy as np
import pytest

from core.utils import CapExceeded, CertificateMissing, DimensionMismatch, NTooSmall, OutOfRange
from composite import HypothesisSet, minimize_Hr_over_hulls, optimality_certificate
from divergence import rel_entropy
from typelab import (
    ErrorPair,
    TypeVector,
    acceptance_probability_product,
    adversarial_product_errors,
    ball_test,
    count_types,
    enumerate_types,
    exact_errors,
    exact_errors_product,
    log_sum,
    log_type_probs,
    maxmin_combine,
    np_test,
    projectivize,
    serialize_test,
    symmetric_test_from,
    tv_lower_bound,
    type_matrix,
    type_round_halfspace,
    type_stats,
)

P = np.array([0.6, 0.3, 0.1])
Q = np.array([0.2, 0.3, 0.5])


def test_count_and_enumerate_types():
    assert count_types(5, 3) == 21
    assert count_types(0, 4) == 1
    types = [t.counts for t in enumerate_types(2, 2)]
    assert types == [(2, 0), (1, 1), (0, 2)]
    assert len(list(enumerate_types(5, 3))) == 21
    assert len({t.counts for t in enumerate_types(5, 3)}) == 21
    with pytest.raises(CapExceeded):
        type_matrix(30, 4, cap=100)


def test_type_vector():
    t = TypeVector.from_counts([2, 2])
    assert t.n == 4 and t.alphabet_size == 2
    assert np.allclose(t.empirical(), [0.5, 0.5])
    assert t.to_dict() == {"counts": [2, 2], "n": 4}


def test_type_stats_uniform():
    log_size, log_prob = type_stats([0.5, 0.5], TypeVector.from_counts([2, 2]))
    assert log_size == pytest.approx(math.log(6))
    assert log_prob == pytest.approx(math.log(6 / 16))
    with pytest.raises(DimensionMismatch):
        type_stats([0.5, 0.5], TypeVector.from_counts([1, 1, 2]))


def test_type_probs_sum_to_one_and_forbid_letters():
    types = type_matrix(6, 3)
    assert math.exp(log_sum(log_type_probs(P, types))) == pytest.approx(1.0, abs=1e-12)
    lp = log_type_probs([0.5, 0.5, 0.0], types)
    assert np.all(np.isneginf(lp[types[:, 2] > 0]))
    assert log_sum(np.array([-np.inf])) == -math.inf


def _brute_errors(p, q, c, n):
    llr = np.log(p) - np.log(q)
    alpha = beta = 0.0
    for seq in itertools.product(range(p.size), repeat=n):
        stat = sum(llr[x] for x in seq) / n
        prob_p = math.prod(p[x] for x in seq)
        prob_q = math.prod(q[x] for x in seq)
        if stat >= c - 1e-12:
            beta += prob_q
        else:
            alpha += prob_p
    return alpha, beta


def test_np_test_matches_sequence_enumeration():
    c = 0.3
    test = np_test(P, Q, c, 4)
    errors = exact_errors(test, [P], [Q])
    alpha, beta = _brute_errors(P, Q, c, 4)
    assert errors.alpha_n == pytest.approx(alpha, rel=1e-12)
    assert errors.beta_n == pytest.approx(beta, rel=1e-12)
    assert test.is_projective()


def test_np_test_accepting_everything():
    test = np_test(P, Q, -math.inf, 3)
    errors = exact_errors(test, [P], [Q])
    assert errors.log_alpha == -math.inf
    assert errors.beta_n == pytest.approx(1.0)


def test_error_pair_clamps_rounding_above_one():
    pair = ErrorPair.from_logs(1e-15, -2.0)
    assert pair.log_alpha == 0.0 and pair.alpha_n == 1.0
    assert pair.beta_n == pytest.approx(math.exp(-2.0))


@pytest.mark.parametrize("n", [20, 60, 120])
def test_ball_test_beta_bound(coin_pair, n):
    _, sigma = coin_pair
    r = 0.3
    test = ball_test(sigma, r, n)
    assert test.meta["bound_ok"]
    errors = exact_errors(test, [sigma], [sigma])
    assert errors.log_beta <= 2 * math.log(n + 1) - n * r + 1e-9
    with pytest.raises(OutOfRange):
        ball_test(sigma, -0.1, n)


def test_product_probability_matches_iid():
    test = np_test(P, Q, 0.2, 5)
    iid = exact_errors(test, [P], [Q])
    product = exact_errors_product(test, [P] * 5, [Q] * 5)
    assert product.alpha_n == pytest.approx(iid.alpha_n, rel=1e-10)
    assert product.beta_n == pytest.approx(iid.beta_n, rel=1e-10)
    with pytest.raises(DimensionMismatch):
        acceptance_probability_product(test, [P] * 4)


def test_product_probability_non_identical():
    test = np_test(P, Q, 0.1, 2)
    states = [P, Q]
    expected = 0.0
    llr = np.log(P) - np.log(Q)
    for x, y in itertools.product(range(3), repeat=2):
        if (llr[x] + llr[y]) / 2 >= 0.1 - 1e-12:
            expected += P[x] * Q[y]
    assert acceptance_probability_product(test, states) == pytest.approx(expected, rel=1e-12)


def test_tv_lower_bound():
    tv = 0.5 * np.abs(P - Q).sum()
    assert tv_lower_bound(P, Q, 1) == pytest.approx(1.0 - tv)
    assert tv_lower_bound(P, Q, 8) < tv_lower_bound(P, Q, 2)
    test = np_test(P, Q, 0.0, 6)
    errors = exact_errors(test, [P], [Q])
    assert errors.alpha_n + errors.beta_n >= tv_lower_bound(P, Q, 6) - 1e-12


def test_maxmin_combine_guarantees():
    tests = [[np_test(P, Q, c, 4) for c in (0.1, 0.4)], [np_test(P, Q, c, 4) for c in (-0.2, 0.3)]]
    combined = maxmin_combine(tests)
    assert combined.meta["rows_ok"] and combined.meta["columns_ok"]
    assert combined.meta["grid"] == [2, 2]
    expected = np.maximum(
        np.minimum(tests[0][0].accept, tests[0][1].accept),
        np.minimum(tests[1][0].accept, tests[1][1].accept),
    )
    assert np.array_equal(combined.accept, expected)
    with pytest.raises(DimensionMismatch):
        maxmin_combine([[np_test(P, Q, 0.1, 4), np_test(P, Q, 0.1, 5)]])


def test_projectivize_and_serialize():
    test = symmetric_test_from(2, 2, accept=[0.2, 0.5, 0.9], label="soft")
    assert not test.is_projective()
    proj = projectivize(test)
    assert proj.accept.tolist() == [0.0, 1.0, 1.0]
    assert proj.label == "soft:proj"
    text = serialize_test(proj)
    assert text.splitlines()[0] == "x0,x1,accept"
    assert text.splitlines()[1] == "2,0,0.0"
    with pytest.raises(OutOfRange):
        symmetric_test_from(2, 2, accept=[0.2, 1.5, 0.9])


def test_type_round_halfspace_example():
    p = np.array([0.5, 0.3, 0.2])
    v = np.array([1.0, 0.0, -1.0])
    t = type_round_halfspace(p, v, float(v @ p), 7)
    assert t.counts == (4, 2, 1)
    emp = t.empirical()
    assert float(v @ emp) >= float(v @ p)
    assert np.abs(emp - p).sum() <= 2 * 2 / 7 + 1e-12
    with pytest.raises(OutOfRange):
        type_round_halfspace(p, v, 0.5, 7)
    with pytest.raises(NTooSmall):
        type_round_halfspace(p, v, 0.0, 5)


def test_type_round_halfspace_random(rng):
    for _ in range(200):
        k = int(rng.integers(2, 6))
        p = rng.dirichlet(np.ones(k))
        if rng.random() < 0.3:
            p[rng.integers(k)] = 0.0
            p /= p.sum()
        v = rng.normal(size=k)
        c = float(v @ p)
        r = int(np.count_nonzero(p))
        n = max(r * (r - 1), 1) + int(rng.integers(0, 40))
        t = type_round_halfspace(p, v, c, n)
        emp = t.empirical()
        assert t.n == n
        assert np.all(emp[p == 0] == 0)
        assert float(v @ emp) >= c - 1e-12 * max(1.0, abs(c))
        assert np.abs(emp - p).sum() <= 2 * (r - 1) / n + 1e-12


def test_single_letter_support_rounds_exactly():
    t = type_round_halfspace([0.0, 1.0], [0.0, 1.0], 1.0, 3)
    assert t.counts == (0, 3)


@pytest.fixture
def certified():
    R = HypothesisSet.from_states("R", [np.array([0.7, 0.2, 0.1]), np.array([0.6, 0.25, 0.15])])
    S = HypothesisSet.from_states("S", [np.array([0.1, 0.3, 0.6]), np.array([0.15, 0.2, 0.65])])
    d = min(rel_entropy(a, b) for a in R for b in S)
    pair = minimize_Hr_over_hulls(R, S, 0.25 * d)
    cert = optimality_certificate(pair, R, S, tol=1e-6, raise_on_failure=False)
    return pair, cert, R, S


def test_adversarial_errors_respect_bounds(certified):
    pair, cert, R, S = certified
    assert cert.passed
    report = adversarial_product_errors(pair, R, S, 4, certificate=cert)
    assert report.exhaustive
    assert report.strategies_checked == 2 * count_types(4, 2)
    assert report.passed
    assert report.worst_beta.probability <= report.beta_bound * (1 + 1e-9)
    assert report.worst_alpha.probability <= report.alpha_bound * (1 + 1e-9)
    # products of hull points are mixtures of generator products
    assert report.worst_beta.probability >= report.beta_at_minimizer - 1e-12
    assert report.worst_alpha.probability >= report.alpha_at_minimizer - 1e-12
    assert report.to_dict()["pass"] is True


def test_adversarial_supplied_strategies(certified):
    pair, cert, R, S = certified
    report = adversarial_product_errors(
        pair, R, S, 3, certificate=cert, strategies=[(0, 0, 0), (1, 1, 1)], null_strategies=[(0, 1, 0)]
    )
    assert not report.exhaustive
    assert report.strategies_checked == 3
    assert report.worst_alpha.strategy == (0, 1, 0)


def test_adversarial_needs_certificate(certified):
    pair, _, R, S = certified
    with pytest.raises(CertificateMissing):
        adversarial_product_errors(pair, R, S, 4)
