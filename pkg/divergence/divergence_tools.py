"""
Divergence MCP Tools

This module exposes pairwise divergences and the psi cumulants as MCP tools.
States are passed as JSON values: a list of weights for classical states or
{"dim", "re", "im"} for density matrices.
"""

import asyncio
import logging
from typing import Any, Dict, List, Optional, Union

from core.extreal import dumps
from core.server import server
from core.utils import handle_numeric_errors
from divergence.chernoff import chernoff
from divergence.dispatch import evaluate
from divergence.renyi import psi_eval, psi_tilde_eval
from divergence.states import state_from_json

logger = logging.getLogger(__name__)

StatePayload = Union[List[Any], Dict[str, Any]]


@server.tool()  # type: ignore
@handle_numeric_errors("compute_divergence")  # type: ignore
async def compute_divergence(
    kind: str,
    rho: StatePayload,
    sigma: StatePayload,
    alpha: Optional[float] = None,
) -> str:
    """
    Compute a divergence between two states.

    Args:
        kind (str): relative, petz, sandwiched, log_euclidean, maximal, max_rel or chernoff.
        rho (StatePayload): First state.
        sigma (StatePayload): Second state (may be subnormalized).
        alpha (Optional[float]): Order for the Renyi families.

    Returns:
        str: JSON object with kind, value ("inf" for +infinity) and alpha.
    """
    logger.info(f"[compute_divergence] Invoked. Kind: '{kind}', alpha: {alpha}")
    r = state_from_json(rho, field_name="rho")
    s = state_from_json(sigma, field_name="sigma")
    result = await asyncio.to_thread(evaluate, kind, r, s, alpha)
    return dumps(result)


@server.tool()  # type: ignore
@handle_numeric_errors("compute_psi")  # type: ignore
async def compute_psi(
    rho: StatePayload,
    sigma: StatePayload,
    alphas: Optional[List[float]] = None,
    us: Optional[List[float]] = None,
    family: str = "petz",
) -> str:
    """
    Evaluate psi(alpha) and/or psi~(u) on grids.

    Args:
        rho (StatePayload): First state.
        sigma (StatePayload): Second state.
        alphas (Optional[List[float]]): Orders for psi.
        us (Optional[List[float]]): Points for psi~ (u = 1 gives D_infinity).
        family (str): "petz" or "sandwiched".

    Returns:
        str: JSON object with "psi" and "psi_tilde" lists of [x, value] pairs.
    """
    logger.info(f"[compute_psi] Invoked. Family: '{family}', {len(alphas or [])} alphas, {len(us or [])} us")
    r = state_from_json(rho, field_name="rho")
    s = state_from_json(sigma, field_name="sigma")

    def _run() -> dict:
        return {
            "family": family,
            "psi": [[a, psi_eval(r, s, a, family)] for a in (alphas or [])],
            "psi_tilde": [[u, psi_tilde_eval(r, s, u, family)] for u in (us or [])],
        }

    return dumps(await asyncio.to_thread(_run))


@server.tool()  # type: ignore
@handle_numeric_errors("compute_chernoff")  # type: ignore
async def compute_chernoff(rho: StatePayload, sigma: StatePayload) -> str:
    """
    Compute the Chernoff divergence and the optimal order.

    Args:
        rho (StatePayload): First state.
        sigma (StatePayload): Second state.

    Returns:
        str: JSON object with "value" and "optimal_alpha".
    """
    logger.info("[compute_chernoff] Invoked.")
    r = state_from_json(rho, field_name="rho")
    s = state_from_json(sigma, field_name="sigma")
    value, alpha = await asyncio.to_thread(chernoff, r, s, True)
    return dumps({"value": value, "optimal_alpha": alpha})
