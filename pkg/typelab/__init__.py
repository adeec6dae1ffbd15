"""
Exact finite-n classical computations over types: symmetric tests, their
exact errors, type rounding and adversarial product bounds.
"""

from typelab.adversarial import AdversarialReport, StrategyResult, adversarial_product_errors
from typelab.rounding import type_round_halfspace
from typelab.symmetric import (
    ErrorPair,
    SymmetricTest,
    acceptance_probability_product,
    ball_test,
    exact_errors,
    exact_errors_product,
    llr_statistic,
    maxmin_combine,
    np_test,
    projectivize,
    serialize_test,
    symmetric_test_from,
    tv_lower_bound,
)
from typelab.types import (
    TypeVector,
    count_types,
    enumerate_types,
    log_class_sizes,
    log_sum,
    log_type_probs,
    type_matrix,
    type_stats,
)

__all__ = [
    "AdversarialReport",
    "ErrorPair",
    "StrategyResult",
    "SymmetricTest",
    "TypeVector",
    "acceptance_probability_product",
    "adversarial_product_errors",
    "ball_test",
    "count_types",
    "enumerate_types",
    "exact_errors",
    "exact_errors_product",
    "llr_statistic",
    "log_class_sizes",
    "log_sum",
    "log_type_probs",
    "maxmin_combine",
    "np_test",
    "projectivize",
    "serialize_test",
    "symmetric_test_from",
    "tv_lower_bound",
    "type_matrix",
    "type_round_halfspace",
    "type_stats",
]
