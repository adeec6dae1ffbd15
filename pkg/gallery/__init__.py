"""
Explicit constructions with certified numeric reports: non-commutative
separations, the coin and interval examples, pure-state families and the
semiclassical test combiner.
"""

from gallery.coin import coin_example_report, coin_states, finite_n_worst_ratio
from gallery.interval import (
    IntervalModel,
    cylinder_errors,
    interval_example_report,
    interval_monte_carlo,
    interval_supp_report,
    threshold_depth,
)
from gallery.noncommutative import (
    ParamFamily,
    diff_delta,
    hat_triple,
    invertible_rho_half_delta,
    minimal_triple,
    param_family,
    param_family_report,
    stein_gap_report,
    tune_direct_example,
    tune_stein_example,
)
from gallery.pure import exact_projection_beta, gram_power, pure_state_report, vector_from_json
from gallery.report import CounterexampleReport, InequalityRow
from gallery.semiclassical import helstrom_tests, one_sided_combine, semiclassical_combine

__all__ = [
    "CounterexampleReport",
    "InequalityRow",
    "IntervalModel",
    "ParamFamily",
    "coin_example_report",
    "coin_states",
    "cylinder_errors",
    "diff_delta",
    "exact_projection_beta",
    "finite_n_worst_ratio",
    "gram_power",
    "hat_triple",
    "helstrom_tests",
    "interval_example_report",
    "interval_monte_carlo",
    "interval_supp_report",
    "invertible_rho_half_delta",
    "minimal_triple",
    "one_sided_combine",
    "param_family",
    "param_family_report",
    "pure_state_report",
    "vector_from_json",
    "semiclassical_combine",
    "stein_gap_report",
    "threshold_depth",
    "tune_direct_example",
    "tune_stein_example",
]
