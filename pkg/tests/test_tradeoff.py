import math

import numpy as np
import pytest

from core.extreal import INF
from core.utils import KindMismatch, NoUniqueRoot, OutOfRange, SupportMismatch, UserInputError
from divergence import chernoff, classical_psi, max_rel_entropy, rel_entropy
from tradeoff import (
    LegendreData,
    big_psi,
    d1_plus,
    d2,
    hellinger_arc,
    hoeffding,
    hoeffding_anti,
    hoeffding_optimizer,
    inverse_big_psi,
    is_affine,
    legendre,
    lmgf,
    psi_derivatives,
    r_infty,
    shifted_legendre,
    solve_d2,
    solve_rate_alpha,
    tilde_psi,
)

P = np.array([0.6, 0.3, 0.1])
Q = np.array([0.2, 0.3, 0.5])


def test_coin_constants(coin_pair):
    rho, sigma = coin_pair
    data = LegendreData.from_pair(rho, sigma)
    assert data.d1_plus == pytest.approx(0.143841, abs=1e-6)
    assert data.d_infty == pytest.approx(0.693147, abs=1e-6)
    assert data.r_infty == pytest.approx(1.386294, abs=1e-6)
    assert r_infty(rho, sigma) == pytest.approx(math.log(4.0))


def test_hoeffding_zero_beyond_relative_entropy():
    d = rel_entropy(P, Q)
    assert hoeffding(P, Q, d) == pytest.approx(0.0, abs=1e-12)
    assert hoeffding(P, Q, d + 0.3) == pytest.approx(0.0, abs=1e-12)
    assert hoeffding(P, Q, 0.5 * d) > 0.0


def test_hoeffding_infinite_below_d0():
    p = np.array([0.5, 0.5, 0.0])
    q = np.array([0.25, 0.25, 0.5])
    # D_0 = -log sigma(supp rho) = log 2
    assert hoeffding(p, q, 0.5) == INF
    assert hoeffding(p, q, 0.8) < INF


def test_hoeffding_decreasing():
    values = [hoeffding(P, Q, r) for r in np.linspace(0.01, 0.5, 12)]
    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


def test_hoeffding_meets_chernoff():
    c, alpha = chernoff(P, Q, return_alpha=True)
    point = hellinger_arc(P, Q, alpha)
    assert point.rate_to_sigma == pytest.approx(c, abs=1e-8)
    assert point.rate_to_rho == pytest.approx(c, abs=1e-8)
    assert hoeffding(P, Q, c) == pytest.approx(c, abs=1e-8)


def test_arc_endpoints():
    at_one = hellinger_arc(P, Q, 1.0)
    assert np.allclose(at_one.mu.weights, P)
    assert at_one.rate_to_rho == pytest.approx(0.0, abs=1e-12)
    assert at_one.rate_to_sigma == pytest.approx(rel_entropy(P, Q), abs=1e-12)
    at_zero = hellinger_arc(P, Q, 0.0)
    assert np.allclose(at_zero.mu.weights, Q)
    assert at_zero.rate_to_sigma == pytest.approx(0.0, abs=1e-12)


def test_solve_rate_alpha_on_both_sides():
    d = rel_entropy(P, Q)
    r_inf = r_infty(P, Q)
    below = solve_rate_alpha(P, Q, 0.5 * d)
    assert 0.0 < below.alpha < 1.0
    assert below.rate_to_sigma == pytest.approx(0.5 * d, abs=1e-10)
    assert hoeffding(P, Q, 0.5 * d) == pytest.approx(below.rate_to_rho, abs=1e-8)
    r = 0.5 * (d + r_inf)
    above = solve_rate_alpha(P, Q, r)
    assert above.alpha > 1.0
    assert hoeffding_anti(P, Q, r) == pytest.approx(above.rate_to_rho, abs=1e-8)


def test_solve_rate_alpha_errors():
    with pytest.raises(OutOfRange):
        solve_rate_alpha(P, Q, r_infty(P, Q) + 0.1)
    with pytest.raises(NoUniqueRoot):
        solve_rate_alpha(P, P, 0.1)
    with pytest.raises(SupportMismatch):
        solve_rate_alpha(np.array([0.5, 0.5]), np.array([1.0, 0.0]), 0.1)
    assert is_affine(P, P)
    assert not is_affine(P, Q)


def test_psi_derivatives_classical_only():
    psi, mean, var = psi_derivatives(P, Q, 1.0)
    assert psi == pytest.approx(0.0, abs=1e-12)
    assert mean == pytest.approx(rel_entropy(P, Q), abs=1e-12)
    assert var > 0
    with pytest.raises(KindMismatch):
        psi_derivatives(np.diag(P), np.diag(Q), 0.5)


def test_anti_hoeffding_cases(coin_pair):
    rho, sigma = coin_pair
    d = rel_entropy(rho, sigma)
    assert hoeffding_anti(rho, sigma, 0.5 * d) == pytest.approx(0.0, abs=1e-12)
    assert hoeffding_anti(rho, sigma, 2.0) == pytest.approx(2.0 - math.log(2.0), abs=1e-12)
    mid = hoeffding_anti(rho, sigma, 0.5)
    assert 0.0 < mid < 0.5
    with pytest.raises(SupportMismatch):
        hoeffding_anti(np.array([0.5, 0.5]), np.array([1.0, 0.0]), 0.3)


def test_scaling_law():
    d = rel_entropy(P, Q)
    r = 0.4 * d
    base = hoeffding(P, Q, r)
    for t in (0.5, 3.0):
        for s in (0.25, 2.0):
            assert hoeffding(t * P, s * Q, r - math.log(s)) == pytest.approx(base - math.log(t), abs=1e-9)


def test_quantum_matches_classical_on_diagonal():
    d = rel_entropy(P, Q)
    for r in (0.3 * d, 0.7 * d):
        assert hoeffding(np.diag(P), np.diag(Q), r) == pytest.approx(hoeffding(P, Q, r), abs=1e-7)
    r = d + 0.4 * (r_infty(P, Q) - d)
    assert hoeffding_anti(np.diag(P), np.diag(Q), r) == pytest.approx(hoeffding_anti(P, Q, r), abs=1e-6)


def test_quantum_hoeffding_optimizer(qubit_pair):
    rho, sigma = qubit_pair
    d = rel_entropy(rho, sigma)
    value, alpha = hoeffding_optimizer(rho, sigma, 0.5 * d)
    assert value > 0
    assert 0 < alpha <= 1
    assert hoeffding(rho, sigma, 2 * d) == pytest.approx(0.0, abs=1e-9)


def test_tilde_psi_three_cases(coin_pair):
    rho, sigma = coin_pair
    data = LegendreData.from_pair(rho, sigma)
    value, case = tilde_psi(data, 0.1)
    assert case == "zero" and value == pytest.approx(0.0, abs=1e-12)
    value, case = tilde_psi(data, 2.0)
    assert case == "linear" and value == pytest.approx(2.0 - math.log(2.0), abs=1e-12)
    value, case = tilde_psi(data, 0.5)
    assert case == "legendre"
    assert value == pytest.approx(hoeffding_anti(rho, sigma, 0.5), abs=1e-7)


def test_tilde_psi_quantum_matches_anti(qubit_pair):
    rho, sigma = qubit_pair
    data = LegendreData.from_pair(rho, sigma)
    d = rel_entropy(rho, sigma)
    r = d + 0.2
    assert tilde_psi(data, r)[0] == pytest.approx(hoeffding_anti(rho, sigma, r), abs=1e-6)


def test_big_psi_regimes(coin_pair):
    rho, sigma = coin_pair
    data = LegendreData.from_pair(rho, sigma)
    assert big_psi(data, data.d_infty + 0.1) == INF
    assert big_psi(data, data.d_infty) == pytest.approx(data.r_infty)
    assert big_psi(data, 0.1) == pytest.approx(0.1)
    c = 0.5 * (data.d1_plus + data.d_infty)
    grid = max(c * a - classical_psi(np.asarray(rho), np.asarray(sigma), a) for a in np.linspace(1, 60, 20001))
    assert big_psi(data, c) == pytest.approx(grid, abs=1e-6)
    assert legendre(data, "PsiMinus", c) == pytest.approx(big_psi(data, c) - c)
    with pytest.raises(UserInputError):
        legendre(data, "Phi", c)


def test_lmgf(coin_pair):
    rho, sigma = coin_pair
    data = LegendreData.from_pair(rho, sigma)
    assert lmgf(data, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert lmgf(data, 1.0) == pytest.approx(math.log(0.25 / 0.25 + 0.25 / 0.75), abs=1e-12)
    with pytest.raises(OutOfRange):
        lmgf(data, -0.5)


def test_shifted_legendre_and_inverse(coin_pair):
    rho, sigma = coin_pair
    data = LegendreData.from_pair(rho, sigma)
    assert shifted_legendre(data, 0.1) == pytest.approx(0.0, abs=1e-12)
    assert shifted_legendre(data, data.d_infty + 0.1) == INF
    c = 0.4
    r = big_psi(data, c)
    assert shifted_legendre(data, c) == pytest.approx(r - c)
    assert inverse_big_psi(data, r) == pytest.approx(c, abs=1e-6)
    with pytest.raises(OutOfRange):
        inverse_big_psi(data, data.r_infty + 0.1)


def test_legendre_needs_nested_supports():
    with pytest.raises(SupportMismatch):
        LegendreData.from_pair(np.array([0.5, 0.5]), np.array([1.0, 0.0]))
    assert d1_plus(np.array([0.5, 0.5]), np.array([1.0, 0.0])) == INF
    assert max_rel_entropy(P, Q) == pytest.approx(math.log(3.0))


def test_binary_relative_entropy_root():
    assert d2(0.3, 0.3) == pytest.approx(0.0, abs=1e-15)
    for lam, target in ((0.3, 0.05), (0.5, 2.0), (0.9, 10.0)):
        mu = solve_d2(lam, target)
        assert 0 < mu <= lam
        assert d2(lam, mu) == pytest.approx(target, rel=1e-9)
    assert solve_d2(0.4, 0.0) == 0.4
    with pytest.raises(OutOfRange):
        solve_d2(1.0, 0.1)
    with pytest.raises(OutOfRange):
        solve_d2(0.5, -0.1)
