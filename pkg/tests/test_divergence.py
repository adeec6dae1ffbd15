import math

import numpy as np
import pytest

from conftest import mp_rel_entropy_pure, mp_rel_entropy_pure_geommean
from core.extreal import INF
from core.utils import NotPD, OutOfRange, UserInputError
from divergence import (
    ClassicalWeight,
    DivergenceKind,
    chernoff,
    classical_psi,
    d0,
    evaluate,
    log_euclidean_renyi,
    max_rel_entropy,
    maximal_renyi,
    parse_kind,
    petz_renyi,
    psi_eval,
    psi_tilde_eval,
    rel_entropy,
    sandwiched_renyi,
    state_from_json,
    support_contained,
    supports_orthogonal,
)
from hermcore import geometric_mean
from hermcore.random_states import random_pd_density


def test_coin_constants(coin_pair):
    rho, sigma = coin_pair
    assert rel_entropy(rho, sigma) == pytest.approx(0.5 * math.log(4 / 3), abs=1e-12)
    assert rel_entropy(rho, sigma) == pytest.approx(0.143841, abs=1e-6)
    assert max_rel_entropy(rho, sigma) == pytest.approx(math.log(2), abs=1e-12)
    assert rel_entropy(sigma, rho) == pytest.approx(0.25 * math.log(0.5) + 0.75 * math.log(1.5), abs=1e-12)


def test_support_conventions():
    p = np.array([0.5, 0.5, 0.0])
    q = np.array([1.0, 0.0, 0.0])
    assert rel_entropy(p, q) == INF
    assert max_rel_entropy(p, q) == INF
    assert rel_entropy(q, p) == pytest.approx(math.log(2))
    assert support_contained(q, p) and not support_contained(p, q)
    assert supports_orthogonal([1.0, 0.0], [0.0, 1.0])
    assert petz_renyi([1.0, 0.0], [0.0, 1.0], 0.5) == INF
    assert chernoff([1.0, 0.0], [0.0, 1.0]) == INF


def test_quantum_relative_entropy_matches_mpmath(triple):
    rho, s1, s2 = triple
    assert rel_entropy(rho, s1) == pytest.approx(mp_rel_entropy_pure(rho, s1), abs=1e-10)
    assert rel_entropy(rho, s2) == pytest.approx(rel_entropy(rho, s1), abs=1e-10)
    g = geometric_mean(s1, s2, 0.5)
    oracle = mp_rel_entropy_pure_geommean(rho, s1, s2)
    assert oracle == pytest.approx(math.log(2 * math.sqrt(6)), abs=1e-14)
    assert rel_entropy(rho, g) == pytest.approx(oracle, abs=1e-10)
    assert rel_entropy(rho, g) < rel_entropy(rho, s1) - 0.05


def test_rel_entropy_nonnegative_and_zero(qubit_pair):
    rho, sigma = qubit_pair
    assert rel_entropy(rho, sigma) > 0
    assert rel_entropy(rho, rho) == pytest.approx(0.0, abs=1e-12)


def test_petz_renyi_classical_closed_form(coin_pair):
    rho, sigma = coin_pair
    bc = math.sqrt(0.5 * 0.25) + math.sqrt(0.5 * 0.75)
    assert petz_renyi(rho, sigma, 0.5) == pytest.approx(-2 * math.log(bc), abs=1e-12)
    assert d0(rho, sigma) == pytest.approx(0.0, abs=1e-12)


def test_petz_renyi_monotone_in_alpha(qubit_pair):
    rho, sigma = qubit_pair
    values = [petz_renyi(rho, sigma, a) for a in (0.1, 0.3, 0.5, 0.7, 0.9)]
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    assert values[-1] <= rel_entropy(rho, sigma) + 1e-12


def test_sandwiched_limits(qubit_pair):
    rho, sigma = qubit_pair
    d = rel_entropy(rho, sigma)
    assert sandwiched_renyi(rho, sigma, 1.0001) == pytest.approx(d, abs=1e-3)
    assert sandwiched_renyi(rho, sigma, math.inf) == pytest.approx(max_rel_entropy(rho, sigma))
    assert sandwiched_renyi(rho, sigma, 50.0) <= max_rel_entropy(rho, sigma) + 1e-9
    with pytest.raises(OutOfRange):
        sandwiched_renyi(rho, sigma, 0.5)


def test_sandwiched_equals_petz_for_commuting():
    p = np.array([0.2, 0.3, 0.5])
    q = np.array([0.4, 0.4, 0.2])
    for a in (1.5, 2.0, 3.0):
        quantum = sandwiched_renyi(np.diag(p), np.diag(q), a)
        classical = classical_psi(p, q, a) / (a - 1)
        assert quantum == pytest.approx(classical, abs=1e-10)


def test_renyi_ordering(rng):
    for _ in range(10):
        rho = random_pd_density(3, rng)
        sigma = random_pd_density(3, rng)
        for a in (0.25, 0.5, 0.75):
            dp = petz_renyi(rho, sigma, a)
            dle = log_euclidean_renyi(rho, sigma, a)
            dmax = maximal_renyi(rho, sigma, a)
            assert dp <= dle + 1e-10
            assert dle <= dmax + 1e-10


def test_log_euclidean_needs_definite_normalized():
    with pytest.raises(NotPD):
        log_euclidean_renyi(np.diag([1.0, 0.0]), np.eye(2) / 2, 0.5)
    with pytest.raises(UserInputError):
        log_euclidean_renyi(np.eye(2), np.eye(2) / 2, 0.5)
    with pytest.raises(OutOfRange):
        maximal_renyi(np.eye(2) / 2, np.eye(2) / 2, 1.0)


def test_psi_ranges_and_tilde():
    rho = np.diag([0.6, 0.4])
    sigma = np.diag([0.3, 0.7])
    with pytest.raises(OutOfRange):
        psi_eval(rho, sigma, 1.5, "petz")
    with pytest.raises(OutOfRange):
        psi_eval(rho, sigma, 0.5, "sandwiched")
    with pytest.raises(UserInputError):
        psi_eval(rho, sigma, 0.5, "unknown")
    p, q = np.array([0.6, 0.4]), np.array([0.3, 0.7])
    assert psi_tilde_eval(p, q, 0.5) == pytest.approx(0.5 * classical_psi(p, q, 2.0))
    assert psi_tilde_eval(p, q, 1.0) == pytest.approx(math.log(2.0))


def test_chernoff_classical_matches_grid():
    p = np.array([0.7, 0.2, 0.1])
    q = np.array([0.1, 0.3, 0.6])
    value, alpha = chernoff(p, q, return_alpha=True)
    grid = np.linspace(0, 1, 20001)
    brute = -min(classical_psi(p, q, a) for a in grid)
    assert value == pytest.approx(brute, abs=1e-8)
    assert 0 < alpha < 1


def test_chernoff_pure_states():
    t = 0.4
    psi = np.array([1.0, 0.0])
    phi = np.array([math.cos(t), math.sin(t)])
    rho, sigma = np.outer(psi, psi), np.outer(phi, phi)
    assert chernoff(rho, sigma) == pytest.approx(-math.log(math.cos(t) ** 2), abs=1e-8)


def test_chernoff_symmetric(qubit_pair):
    rho, sigma = qubit_pair
    assert chernoff(rho, sigma) == pytest.approx(chernoff(sigma, rho), abs=1e-8)


def test_evaluate_dispatch(coin_pair):
    rho, sigma = coin_pair
    assert evaluate("relative", rho, sigma).value == pytest.approx(0.143841, abs=1e-6)
    out = evaluate("chernoff", rho, sigma)
    assert out.kind is DivergenceKind.CHERNOFF
    assert 0 < out.extra["optimal_alpha"] < 1
    with pytest.raises(UserInputError):
        evaluate("petz", rho, sigma)
    with pytest.raises(UserInputError):
        parse_kind("bogus")
    assert parse_kind(" Sandwiched ") is DivergenceKind.SANDWICHED


def test_state_from_json():
    w = state_from_json([0.5, 0.5])
    assert isinstance(w, ClassicalWeight)
    assert state_from_json({"weights": [1.0, 1.0]}).mass() == 2.0
    m = state_from_json({"dim": 2, "re": [[0.5, 0.0], [0.0, 0.5]]})
    assert m.shape == (2, 2)
    assert state_from_json([[1.0, 0.0], [0.0, 0.0]]).shape == (2, 2)
    with pytest.raises(UserInputError):
        state_from_json("nope", field_name="rho")
    with pytest.raises(UserInputError):
        ClassicalWeight.from_values([0.3, 0.3])
