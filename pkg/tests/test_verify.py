import math

import pytest

from cli.verify import SUITES, run_suites
from conftest import mp_rel_entropy_pure, mp_rel_entropy_pure_geommean
from core.utils import UserInputError


def test_suite_names():
    assert set(SUITES) == {
        "coin",
        "interval",
        "stein",
        "minimal",
        "direct",
        "renyi_order",
        "hoeffding",
        "ball",
        "rounding",
        "adversarial",
        "pure",
        "geommean",
        "semiclassical",
    }
    assert all(suite.description for suite in SUITES.values())


def test_minimal_suite_passes():
    report = run_suites("minimal", 1e-7, 0)
    assert report.passed, report.failures()
    assert all(row.name.startswith("minimal.") for row in report.rows)
    assert report.values["minimal.D_rho_geommean"] == pytest.approx(math.log(2 * math.sqrt(6)), abs=1e-9)


def test_minimal_suite_matches_high_precision_oracle(triple):
    rho, s1, s2 = triple
    report = run_suites("minimal", 1e-7, 0)
    values = report.values
    assert values["minimal.D_rho_geommean"] == pytest.approx(mp_rel_entropy_pure_geommean(rho, s1, s2), abs=1e-10)
    assert values["minimal.D_rho_sigma1"] == pytest.approx(mp_rel_entropy_pure(rho, s1), abs=1e-10)
    assert values["minimal.D_rho_sigma2"] == pytest.approx(mp_rel_entropy_pure(rho, s2), abs=1e-10)


def test_geommean_suite_passes():
    report = run_suites("geommean", 1e-7, 3)
    assert report.passed, report.failures()
    assert [row.name for row in report.rows] == [
        "geommean.tensor_multiplicative",
        "geommean.trace_below_fidelity",
        "geommean.fidelity_at_most_one",
    ]


def test_unknown_suite():
    with pytest.raises(UserInputError, match="Unknown suite"):
        run_suites("everything", 1e-7, 0)
