import math

import numpy as np
import pytest

from core.extreal import INF
from core.utils import CertificateFailed, DimensionMismatch, KindMismatch, OutOfRange, UserInputError
from composite import (
    HypothesisSet,
    MinimizerPair,
    SolverConfig,
    geommean_composite_bounds,
    minimize_Hr_over_hulls,
    optimality_certificate,
    pairwise_table,
    set_anti_divergence,
    set_chernoff,
    set_divergence,
    set_hoeffding,
    smooth_set,
)
from divergence import chernoff, rel_entropy
from tradeoff import hoeffding, hoeffding_optimizer

R_STATES = [np.array([0.7, 0.2, 0.1]), np.array([0.5, 0.4, 0.1])]
S_STATES = [np.array([0.1, 0.3, 0.6]), np.array([0.2, 0.2, 0.6])]


@pytest.fixture
def sets():
    return HypothesisSet.from_states("R", R_STATES), HypothesisSet.from_states("S", S_STATES)


def test_from_states_validation():
    with pytest.raises(UserInputError):
        HypothesisSet.from_states("R", [])
    with pytest.raises(DimensionMismatch):
        HypothesisSet.from_states("R", [np.array([0.5, 0.5]), np.array([0.2, 0.3, 0.5])])
    with pytest.raises(KindMismatch):
        HypothesisSet.from_states("R", [np.array([0.5, 0.5]), np.eye(2) / 2])


def test_from_json_and_round_trip_dict():
    hs = HypothesisSet.from_json({"kind": "classical", "label": "null", "states": [[0.5, 0.5], [0.9, 0.1]]})
    assert hs.label == "null" and len(hs) == 2 and hs.dim == 2
    assert hs.to_dict()["states"][1] == [0.9, 0.1]
    with pytest.raises(UserInputError):
        HypothesisSet.from_json({"kind": "classical"})
    q = HypothesisSet.from_json({"states": [{"dim": 2, "re": [[0.5, 0.0], [0.0, 0.5]]}]}, default_label="alt")
    assert q.kind == "quantum" and q.label == "alt"
    with pytest.raises(KindMismatch):
        q.full_support()


def test_mixture(sets):
    R, _ = sets
    assert np.allclose(R.mixture(np.array([0.5, 0.5])), [0.6, 0.3, 0.1])
    with pytest.raises(DimensionMismatch):
        R.mixture(np.array([1.0]))


def test_smooth_set():
    hs = HypothesisSet.from_states("R", [np.array([1.0, 0.0])])
    assert not hs.full_support()
    assert smooth_set(hs, 0.0) is hs
    smoothed = smooth_set(hs, 0.2)
    assert np.allclose(smoothed.states[0], [0.9, 0.1])
    assert smoothed.full_support()
    with pytest.raises(OutOfRange):
        smooth_set(hs, 1.0)


def test_set_divergence_is_table_minimum(sets):
    R, S = sets
    table = pairwise_table("relative", R, S)
    assert len(table) == 2 and len(table[0]) == 2
    assert table[1][0] == pytest.approx(rel_entropy(R_STATES[1], S_STATES[0]))
    assert set_divergence("relative", R, S) == min(min(row) for row in table)


def test_set_hoeffding_and_chernoff(sets):
    R, S = sets
    r = 0.2
    expected = min(hoeffding(a, b, r) for a in R_STATES for b in S_STATES)
    assert set_hoeffding(R, S, r) == pytest.approx(expected)
    with pytest.raises(UserInputError):
        set_divergence("hoeffding", R, S)
    assert set_chernoff(R, S) == pytest.approx(min(chernoff(a, b) for a in R_STATES for b in S_STATES))


def test_set_kinds_must_agree(sets):
    R, _ = sets
    Q = HypothesisSet.from_states("Q", [np.eye(3) / 3])
    with pytest.raises(KindMismatch):
        set_divergence("relative", R, Q)


def test_set_anti_divergence_excludes_unbounded_pairs():
    R = HypothesisSet.from_states("R", [np.array([0.5, 0.5]), np.array([0.6, 0.4])])
    S = HypothesisSet.from_states("S", [np.array([0.25, 0.75]), np.array([1.0, 0.0])])
    result = set_anti_divergence(2.0, R, S, alpha_grid=(0.5, 1.0, 2.0))
    assert result.excluded == [(0, 1), (1, 1)]
    assert result.argmax is not None
    assert result.value == pytest.approx(max(v for row in result.pairwise for v in row if v is not None))
    assert [a for a, _ in result.renyi] == [0.5, 1.0, 2.0]
    assert 0.0 < result.renyi[1][1] < INF
    assert result.to_dict()["excluded"] == [[0, 1], [1, 1]]


def test_hull_minimizer_beats_grid_and_certifies(sets):
    R, S = sets
    r = 0.3
    pair = minimize_Hr_over_hulls(R, S, r)
    assert pair.theta == 0.0
    assert np.isclose(pair.rho_weights.sum(), 1.0) and np.isclose(pair.sigma_weights.sum(), 1.0)
    pairwise = min(hoeffding(a, b, r) for a in R_STATES for b in S_STATES)
    assert pair.value <= pairwise + 1e-8
    grid = np.linspace(0.0, 1.0, 41)
    brute = min(
        hoeffding_optimizer(R.mixture(np.array([w, 1 - w])), S.mixture(np.array([v, 1 - v])), r)[0]
        for w in grid
        for v in grid
    )
    assert pair.value <= brute + 1e-8
    cert = optimality_certificate(pair, R, S, tol=1e-5, raise_on_failure=False)
    assert cert.passed and not cert.degenerate
    assert len(cert.rho_slacks) == 2 and len(cert.sigma_slacks) == 2
    assert min(cert.rho_slacks + cert.sigma_slacks) >= -cert.tol


def test_certificate_rejects_vertex_pair(sets):
    R, S = sets
    pair = MinimizerPair(
        rho_weights=np.array([1.0, 0.0]),
        sigma_weights=np.array([1.0, 0.0]),
        rho_star=R_STATES[0],
        sigma_star=S_STATES[0],
        value=0.0,
        alpha_star=0.5,
        c_star=0.0,
        r=0.3,
        theta=0.0,
        iterations=0,
        gap=0.0,
        converged=False,
    )
    # slack of S[1] is <sigma* - S[1], sqrt(rho*/sigma*)> = -0.1 sqrt(7) + 0.1 sqrt(2/3)
    expected = -0.1 * math.sqrt(7.0) + 0.1 * math.sqrt(2.0 / 3.0)
    with pytest.raises(CertificateFailed) as exc:
        optimality_certificate(pair, R, S)
    assert exc.value.generator == "S[1]"
    assert exc.value.slack == pytest.approx(expected, rel=1e-9)
    cert = optimality_certificate(pair, R, S, raise_on_failure=False)
    assert not cert.passed
    assert cert.rho_slacks[0] == pytest.approx(0.0, abs=1e-12)
    assert cert.rho_slacks[1] == pytest.approx(0.2 * (math.sqrt(1.0 / 7.0) - math.sqrt(1.5)), rel=1e-9)
    assert min(cert.sigma_slacks) == pytest.approx(expected, rel=1e-9)


def test_hull_minimizer_errors(sets):
    R, S = sets
    with pytest.raises(OutOfRange):
        minimize_Hr_over_hulls(R, S, 0.0)
    Q = HypothesisSet.from_states("Q", [np.eye(3) / 3])
    with pytest.raises(KindMismatch):
        minimize_Hr_over_hulls(Q, Q, 0.1)


def test_hull_minimizer_smooths_missing_support():
    R = HypothesisSet.from_states("R", [np.array([0.8, 0.2, 0.0]), np.array([0.6, 0.3, 0.1])])
    S = HypothesisSet.from_states("S", [np.array([0.1, 0.3, 0.6])])
    pair = minimize_Hr_over_hulls(R, S, 0.2, SolverConfig(max_iters=2000))
    assert pair.theta == pytest.approx(1e-6)
    assert np.all(pair.rho_star > 0)


def test_geommean_bounds_on_minimal_triple(triple):
    rho, s1, s2 = triple
    R = HypothesisSet.from_states("R", [rho])
    bounds = geommean_composite_bounds(R, s1, s2, r_grid=(0.5, 1.0))
    assert bounds.trace_geommean == pytest.approx(2 / math.sqrt(6), abs=1e-10)
    assert bounds.trace_geommean <= bounds.fidelity + 1e-12
    assert bounds.neg_log_trace == pytest.approx(-math.log(2 / math.sqrt(6)), abs=1e-10)
    assert bounds.stein_bound == pytest.approx(math.log(2 * math.sqrt(6)), abs=1e-10)
    assert bounds.stein_gap > 0.05
    assert [row[0] for row in bounds.hoeffding_rows] == [0.5, 1.0]
    payload = bounds.to_dict()
    assert payload["hoeffding"][0]["r"] == 0.5
    with pytest.raises(KindMismatch):
        geommean_composite_bounds(HypothesisSet.from_states("R", [np.array([0.5, 0.5])]), s1, s2)
