"""
Pairwise divergences for quantum and classical states.
"""

from divergence.chernoff import chernoff
from divergence.dispatch import evaluate, parse_kind
from divergence.renyi import (
    PETZ,
    SANDWICHED,
    classical_psi,
    classical_psi_derivatives,
    classical_tilted,
    d0,
    log_euclidean_renyi,
    max_rel_entropy,
    maximal_renyi,
    petz_renyi,
    psi_eval,
    psi_tilde_eval,
    rel_entropy,
    sandwiched_renyi,
    support_contained,
    supports_orthogonal,
)
from divergence.states import (
    ClassicalWeight,
    DivergenceKind,
    DivergenceValue,
    coerce_pair,
    is_classical,
    require_same_kind,
    state_from_json,
)

__all__ = [
    "PETZ",
    "SANDWICHED",
    "ClassicalWeight",
    "DivergenceKind",
    "DivergenceValue",
    "chernoff",
    "classical_psi",
    "classical_psi_derivatives",
    "classical_tilted",
    "coerce_pair",
    "d0",
    "evaluate",
    "is_classical",
    "log_euclidean_renyi",
    "max_rel_entropy",
    "maximal_renyi",
    "parse_kind",
    "petz_renyi",
    "psi_eval",
    "psi_tilde_eval",
    "rel_entropy",
    "require_same_kind",
    "sandwiched_renyi",
    "state_from_json",
    "support_contained",
    "supports_orthogonal",
]
