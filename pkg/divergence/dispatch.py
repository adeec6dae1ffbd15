"""
Single entry point selecting a divergence by kind.
"""

import logging
from typing import Any, Optional, Union

from core.utils import UserInputError
from divergence.chernoff import chernoff
from divergence.renyi import (
    log_euclidean_renyi,
    max_rel_entropy,
    maximal_renyi,
    petz_renyi,
    rel_entropy,
    sandwiched_renyi,
)
from divergence.states import DivergenceKind, DivergenceValue

logger = logging.getLogger(__name__)

_ALPHA_FUNCS = {
    DivergenceKind.PETZ: petz_renyi,
    DivergenceKind.SANDWICHED: sandwiched_renyi,
    DivergenceKind.LOG_EUCLIDEAN: log_euclidean_renyi,
    DivergenceKind.MAXIMAL: maximal_renyi,
}


def parse_kind(kind: Union[str, DivergenceKind]) -> DivergenceKind:
    if isinstance(kind, DivergenceKind):
        return kind
    try:
        return DivergenceKind(str(kind).strip().lower())
    except ValueError:
        valid = ", ".join(k.value for k in DivergenceKind)
        raise UserInputError(f"Unknown divergence kind '{kind}'. Valid kinds: {valid}", field="kind")


def evaluate(
    kind: Union[str, DivergenceKind],
    rho: Any,
    sigma: Any,
    alpha: Optional[float] = None,
) -> DivergenceValue:
    """
    Evaluate one divergence of the pair (rho, sigma).

    Args:
        kind: One of relative, petz, sandwiched, log_euclidean, maximal, max_rel, chernoff.
        rho: First state (weight vector or matrix).
        sigma: Second state.
        alpha: Order, required by the four Renyi families.

    Returns:
        DivergenceValue: value with its kind (and the optimal alpha for chernoff).
    """
    k = parse_kind(kind)
    if k.needs_alpha:
        if alpha is None:
            raise UserInputError(f"Divergence kind '{k.value}' requires alpha", field="alpha")
        return DivergenceValue(_ALPHA_FUNCS[k](rho, sigma, alpha), k, alpha=alpha)
    if k is DivergenceKind.RELATIVE:
        return DivergenceValue(rel_entropy(rho, sigma), k)
    if k is DivergenceKind.MAX_REL:
        return DivergenceValue(max_rel_entropy(rho, sigma), k)
    value, best_alpha = chernoff(rho, sigma, return_alpha=True)
    return DivergenceValue(value, k, extra={"optimal_alpha": best_alpha})
