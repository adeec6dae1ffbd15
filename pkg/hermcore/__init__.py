"""
Hermitian linear algebra core: operator types, matrix functions on supports,
Kubo-Ando geometric means, norms, fidelity and tensor powers.
"""

from hermcore.linalg import (
    apply_fn,
    commutator_norm,
    direct_sum,
    eig_herm,
    expm_herm,
    fidelity,
    geometric_mean,
    is_positive_definite,
    joint_eigenbasis,
    kron,
    kron_power,
    lambda_extremes,
    lambda_max,
    logn,
    mat_fn_on_support,
    positive_part_projector,
    powm,
    require_pd,
    support_projection,
    trace_norm,
)
from hermcore.operators import (
    DensityOperator,
    HermitianOperator,
    SupportProjector,
    as_matrix,
    operator_from_json,
)

__all__ = [
    "DensityOperator",
    "HermitianOperator",
    "SupportProjector",
    "apply_fn",
    "as_matrix",
    "commutator_norm",
    "direct_sum",
    "eig_herm",
    "expm_herm",
    "fidelity",
    "geometric_mean",
    "is_positive_definite",
    "joint_eigenbasis",
    "kron",
    "kron_power",
    "lambda_extremes",
    "lambda_max",
    "logn",
    "mat_fn_on_support",
    "operator_from_json",
    "positive_part_projector",
    "powm",
    "require_pd",
    "support_projection",
    "trace_norm",
]
