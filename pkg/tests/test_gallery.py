import math

import numpy as np
import pytest

from core.utils import (
    CommutingInput,
    DegenerateFamily,
    DepthTooSmall,
    NotSemiClassical,
    OutOfRange,
    ScanFailed,
    UserInputError,
)
from gallery import noncommutative
from gallery import (
    CounterexampleReport,
    IntervalModel,
    coin_example_report,
    coin_states,
    cylinder_errors,
    diff_delta,
    exact_projection_beta,
    finite_n_worst_ratio,
    hat_triple,
    interval_example_report,
    interval_monte_carlo,
    interval_supp_report,
    invertible_rho_half_delta,
    param_family,
    param_family_report,
    pure_state_report,
    semiclassical_combine,
    stein_gap_report,
    threshold_depth,
    tune_direct_example,
    tune_stein_example,
    vector_from_json,
)
from hermcore import geometric_mean
from hermcore.random_states import random_unit_vector


class TestCounterexampleReport:
    def test_relations(self):
        rep = CounterexampleReport(name="t")
        assert rep.check("le", 1.0, "<=", 1.0 + 1e-12).passed
        assert not rep.check("lt_needs_margin", 1.0, "<", 1.0 + 1e-12, 1e-9).passed
        assert rep.check("gt", 2.0, ">", 1.0, 0.5).passed
        assert rep.check("eq", 1.0, "==", 1.0 + 1e-10, 1e-9).passed
        assert rep.check("inf_eq", math.inf, "==", math.inf).passed
        assert not rep.passed
        assert [row.name for row in rep.failures()] == ["lt_needs_margin"]
        with pytest.raises(ValueError):
            rep.check("bad", 1.0, "~", 1.0)

    def test_merge_prefixes(self):
        outer = CounterexampleReport(name="outer")
        inner = CounterexampleReport(name="inner")
        inner.value("x", 3)
        inner.check("ok", 0.0, "<=", 1.0)
        inner.notes.append("note")
        outer.merge(inner, "part")
        assert outer.values == {"part.x": 3}
        assert outer.rows[0].name == "part.ok"
        assert outer.notes == ["note"]
        assert outer.to_dict()["pass"] is True


class TestCoin:
    def test_states(self):
        rho, s1, s2 = coin_states(2)
        assert np.allclose(rho, 0.25)
        assert np.allclose(s1, [1 / 16, 3 / 16, 3 / 16, 9 / 16])
        assert np.allclose(s2, s1[::-1])
        with pytest.raises(OutOfRange):
            coin_states(0)

    def test_finite_n_ratio_at_most_one(self):
        for flips in (1, 4, 9):
            ratio, mask = finite_n_worst_ratio(flips)
            assert 0.0 < ratio <= 1.0 + 1e-12
            assert 1 <= mask < 2 ** (flips + 1)

    @pytest.mark.parametrize("k", [1, 2])
    def test_report_passes(self, k):
        grid = [k * x for x in (0.2, 0.6, 1.0, 1.4, 1.6)]
        rep = coin_example_report(k, grid)
        assert rep.passed, rep.failures()
        assert rep.values["D"] == pytest.approx(k * 0.143841, abs=1e-6)
        assert rep.values["D_inf"] == pytest.approx(k * 0.693147, abs=1e-6)
        assert rep.values["r_inf"] == pytest.approx(k * 1.386294, abs=1e-6)
        assert len(rep.values["finite_n"]) == 14 // k
        top = rep.values["grid"][-1]
        assert top["gap"] >= k * math.log(math.sqrt(3.0)) - 1e-9


class TestInterval:
    def test_threshold_depth(self):
        assert threshold_depth(10, 0.3) == 21
        assert IntervalModel.tail_weight(0) == pytest.approx(1.0)
        assert IntervalModel.weight(1) + IntervalModel.tail_weight(1) == pytest.approx(1.0)
        with pytest.raises(OutOfRange):
            IntervalModel(n=0, m=3)

    def test_example_report(self):
        rep = interval_example_report(10, 0.3)
        assert rep.passed, rep.failures()
        m = rep.values["m_n"]
        assert m == 21
        assert rep.values["alpha_n"] == pytest.approx(1 - (1 - 2.0**-10) ** 21, rel=1e-12)
        assert rep.values["beta_n"] <= 6 / (math.pi**2 * m)
        with pytest.raises(DepthTooSmall):
            interval_example_report(10, 0.3, depth=5)
        with pytest.raises(OutOfRange):
            interval_example_report(10, 0.0)

    def test_cylinder_errors_of_trivial_tests(self):
        model = IntervalModel(n=2, m=3)
        accept_all = cylinder_errors(model, np.ones(model.cells))
        assert accept_all["alpha"] == 0.0
        assert accept_all["beta_mixture"] == pytest.approx(1.0)
        assert accept_all["beta_sup"] == 1.0
        reject_all = cylinder_errors(model, np.zeros(model.cells))
        assert reject_all["alpha"] == 1.0 and reject_all["beta_mixture"] == 0.0

    @pytest.mark.parametrize("projective", [False, True])
    def test_random_tests_respect_tradeoff(self, projective):
        rep = interval_supp_report(3, 2, trials=200, seed=4, projective=projective)
        assert rep.passed, rep.failures()
        assert rep.values["alpha_min"] < 0.2
        assert rep.values["alpha_max"] > 0.8
        rows = {row.name: row for row in rep.rows}
        # tests near reject-everything sit at lhs ~2 and ~1
        assert 0.0 <= rows["tradeoff_random_tests"].slack <= 1.5
        assert rep.values["worst_sup_tradeoff_lhs"] >= 1.0 - 1e-12
        assert rep.values["worst_sup_tradeoff_lhs"] <= 1.1
        with pytest.raises(OutOfRange):
            interval_supp_report(6, 4, trials=1)
        with pytest.raises(OutOfRange):
            interval_supp_report(3, 2, trials=0)

    def test_random_tests_default_to_projective(self):
        rep = interval_supp_report(2, 2, trials=20, seed=1)
        assert rep.parameters["projective"] is True
        assert rep.passed, rep.failures()

    def test_monte_carlo_close_to_exact(self):
        out = interval_monte_carlo(6, 0.3, samples=20000, seed=0)
        assert out["m_n"] == threshold_depth(6, 0.3)
        assert abs(out["alpha_hat"] - out["alpha_exact"]) <= 5 * out["alpha_stderr"] + 1e-3
        assert abs(out["beta_hat"] - out["beta_exact"]) <= 5 * out["beta_stderr"] + 1e-3


class TestNonCommutative:
    def test_diff_delta(self, triple):
        _, s1, s2 = triple
        diff, delta = diff_delta(s1, s2)
        assert abs(np.trace(diff)) < 1e-10
        assert delta > 0
        _, zero = diff_delta(np.diag([0.3, 0.7]), np.diag([0.6, 0.4]))
        assert zero == pytest.approx(0.0, abs=1e-12)

    def test_invertible_rho(self, triple):
        _, s1, s2 = triple
        rho, t = invertible_rho_half_delta(s1, s2)
        diff, delta = diff_delta(s1, s2)
        assert 0 < t < 1
        assert np.real(np.trace(rho @ diff)) == pytest.approx(delta / 2, abs=1e-10)
        assert np.linalg.eigvalsh(rho).min() > 0
        with pytest.raises(CommutingInput):
            invertible_rho_half_delta(np.diag([0.3, 0.7]), np.diag([0.6, 0.4]))

    def test_hat_triple_is_block_doubled(self, triple):
        rho, s1, s2 = triple
        rho_hat, s1_hat, s2_hat = hat_triple(rho, s1, s2)
        assert rho_hat.shape == (4, 4)
        assert np.isclose(np.trace(rho_hat).real, 1.0)
        assert np.allclose(s1_hat[:2, :2], s1 / 2) and np.allclose(s1_hat[2:, 2:], s2 / 2)
        assert np.allclose(s2_hat[:2, :2], s2 / 2)

    def test_stein_gap_report(self, triple):
        rho, s1, s2 = triple
        top = stein_gap_report(None, s1, s2)
        assert top.passed, top.failures()
        assert top.values["gap"] == pytest.approx(top.values["delta"], abs=1e-8)
        given = stein_gap_report(rho, s1, s2)
        assert given.passed
        assert [row.name for row in given.rows] == ["swap_symmetry", "gap_identity"]

    def test_param_family_closed_forms(self, triple):
        rho, s1, s2 = triple
        rep = param_family_report(rho, s1, s2, 0.5, 0.7, 0.4, 0.8)
        assert rep.passed, rep.failures()
        with pytest.raises(OutOfRange):
            param_family_report(rho, s1, s2, 1.5, 0.7, 0.4, 0.8)

    def test_param_family_states(self, triple):
        rho, s1, s2 = triple
        fam = param_family(rho, s1, s2, 0.5, 0.7, 0.4, 0.8)
        assert fam.rho_le.shape == (6, 6)
        for state in (fam.rho_le, fam.sigma1_mn, fam.sigma2_mn):
            assert np.trace(state).real == pytest.approx(1.0)
        direct = geometric_mean(fam.sigma1_mn, fam.sigma2_mn, 0.5)
        assert np.allclose(fam.geommean, direct, atol=1e-9)
        padded = param_family(rho, s1, s2, 1.0, 1.0, 1.0, 1.0)
        rho_hat, _, _ = hat_triple(rho, s1, s2)
        assert np.allclose(padded.rho_le[:4, :4], rho_hat)
        assert np.allclose(padded.rho_le[4:, :], 0.0)

    def test_tune_stein_example(self, triple):
        _, s1, s2 = triple
        rep = tune_stein_example(None, s1, s2, 0.3)
        assert rep.passed, rep.failures()
        assert rep.values["D_geommean"] == pytest.approx(0.3, abs=1e-8)
        assert rep.values["D_sigma1"] > 0.3
        with pytest.raises(CommutingInput):
            tune_stein_example(None, np.diag([0.3, 0.7]), np.diag([0.6, 0.4]), 0.3)

    def test_tune_direct_example(self, triple):
        rho, s1, s2 = triple
        rep = tune_direct_example(rho, s1, s2, 0.2, 0.2)
        assert rep.passed, rep.failures()
        assert rep.values["H_geommean"] < 0.2
        assert rep.values["H_pairwise"] > 0.2 + 2 * rep.values["kappa"] / 3
        assert len(rep.values["scan_trace"]) == rep.values["scan_steps"]
        with pytest.raises(OutOfRange):
            tune_direct_example(rho, s1, s2, 0.2, 0.2, s=0.5)

    def test_tune_direct_example_unreachable_separation(self, triple, monkeypatch):
        rho, s1, s2 = triple
        monkeypatch.setattr(noncommutative, "SCAN_DEPTH", 3)
        # t - H_geommean can never reach 10 when t = 0.2
        monkeypatch.setattr(noncommutative, "SCAN_SLACK", 10.0)
        with pytest.raises(ScanFailed, match="separates the exponents") as exc:
            tune_direct_example(rho, s1, s2, 0.2, 0.2)
        trace = exc.value.trace
        assert [step["j"] for step in trace] == [1, 2, 3]
        assert [step["nu"] for step in trace] == [0.5, 0.75, 0.875]
        assert all(step["H_geommean"] >= 0.0 for step in trace)


class TestPureStates:
    def _families(self):
        psis = [[1.0, 0.0, 0.0], [0.9, math.sqrt(0.19), 0.0]]
        phis = [[0.3, 0.3, math.sqrt(0.82)]]
        return psis, phis

    def test_gram_threshold(self):
        psis, phis = self._families()
        rep = pure_state_report(psis, phis, list(range(1, 13)))
        assert rep.passed, rep.failures()
        rows = {row["n"]: row for row in rep.values["grid"]}
        assert rows[7]["lambda_min"] == pytest.approx(1 - 0.9**7)
        assert rows[6]["lambda_min"] < 0.5 < rows[7]["lambda_min"]
        assert "rate_bound" in rows[7] and "rate_bound" not in rows[6]
        assert rep.values["pairwise_hoeffding"] == pytest.approx(rep.values["C_min"], abs=1e-8)

    def test_single_null_projection(self):
        psis = np.array([[1.0, 0.0]], dtype=complex)
        phi = np.array([math.sqrt(0.6), math.sqrt(0.4)], dtype=complex)
        assert exact_projection_beta(psis, phi, 3) == pytest.approx(0.6**3)

    def test_orthogonal_alternative(self):
        rep = pure_state_report([[1.0, 0.0, 0.0]], [[0.0, 0.0, 1.0]], [1, 2])
        assert rep.passed
        assert rep.values["C_min"] == math.inf

    def test_random_families(self, rng):
        psis = [random_unit_vector(3, rng) for _ in range(2)]
        phis = [random_unit_vector(3, rng) for _ in range(2)]
        assert pure_state_report(psis, phis, [1, 4, 16, 30]).passed

    def test_validation(self):
        with pytest.raises(DegenerateFamily):
            pure_state_report([[1.0, 0.0], [-1.0, 0.0]], [[0.0, 1.0]], [1])
        with pytest.raises(UserInputError):
            pure_state_report([[1.0, 1.0]], [[0.0, 1.0]], [1])
        assert np.allclose(vector_from_json({"re": [0.0, 1.0], "im": [1.0, 0.0]}), [1j, 1.0])
        with pytest.raises(UserInputError):
            vector_from_json({"im": [1.0]})


class TestSemiclassical:
    def test_diagonal_states(self):
        rhos = [np.diag([0.7, 0.2, 0.1]), np.diag([0.5, 0.3, 0.2])]
        sigmas = [np.diag([0.1, 0.3, 0.6])]
        q, rep = semiclassical_combine(rhos, sigmas)
        assert rep.passed, rep.failures()
        assert np.allclose(q @ q, q)
        assert rep.values["rank_Q"] in (1, 2)

    def test_rotated_blocks(self, rng):
        u, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        block_a = np.array([[0.3, 0.1], [0.1, 0.2]])
        block_b = np.array([[0.25, -0.05], [-0.05, 0.25]])
        rho = np.zeros((4, 4), dtype=complex)
        rho[:2, :2], rho[2:, 2:] = block_a, block_b
        sigma = np.diag([0.1, 0.1, 0.4, 0.4]).astype(complex)
        rho, sigma = u @ rho @ u.conj().T, u @ sigma @ u.conj().T
        q, rep = semiclassical_combine([rho], [sigma])
        assert rep.passed, rep.failures()
        assert np.allclose(q, q.conj().T, atol=1e-8)

    def test_rejects_noncommuting(self, triple):
        rho, s1, _ = triple
        with pytest.raises(NotSemiClassical):
            semiclassical_combine([rho], [s1])
