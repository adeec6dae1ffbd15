"""
Trade-off MCP Tools

This module exposes Hoeffding-type exponents, Hellinger arc points and the
Legendre transforms of psi as MCP tools.
"""

import asyncio
import logging
from typing import Any, Dict, List, Union

from core.extreal import dumps
from core.parallel import parallel_map
from core.server import server
from core.utils import handle_numeric_errors
from divergence.states import state_from_json
from tradeoff.arc import hellinger_arc, solve_rate_alpha
from tradeoff.hoeffding import hoeffding, hoeffding_anti
from tradeoff.legendre import LegendreData, legendre, tilde_psi

logger = logging.getLogger(__name__)

StatePayload = Union[List[Any], Dict[str, Any]]


@server.tool()  # type: ignore
@handle_numeric_errors("compute_hoeffding")  # type: ignore
async def compute_hoeffding(rho: StatePayload, sigma: StatePayload, r_grid: List[float]) -> str:
    """
    Evaluate the Hoeffding divergence H_r on a grid of rates.

    Args:
        rho (StatePayload): First state.
        sigma (StatePayload): Second state.
        r_grid (List[float]): Type-II rates.

    Returns:
        str: JSON object with "curve" as [r, H_r] rows ("inf" for +infinity).
    """
    logger.info(f"[compute_hoeffding] Invoked. {len(r_grid)} rates")
    a = state_from_json(rho, field_name="rho")
    b = state_from_json(sigma, field_name="sigma")
    values = await asyncio.to_thread(parallel_map, lambda r: hoeffding(a, b, r), r_grid)
    return dumps({"curve": [[r, v] for r, v in zip(r_grid, values)]})


@server.tool()  # type: ignore
@handle_numeric_errors("compute_hoeffding_anti")  # type: ignore
async def compute_hoeffding_anti(rho: StatePayload, sigma: StatePayload, r_grid: List[float]) -> str:
    """
    Evaluate the Hoeffding anti-divergence H*_r on a grid of rates.

    Args:
        rho (StatePayload): First state.
        sigma (StatePayload): Second state; must dominate the support of rho.
        r_grid (List[float]): Type-II rates.

    Returns:
        str: JSON object with "curve" as [r, H*_r] rows.
    """
    logger.info(f"[compute_hoeffding_anti] Invoked. {len(r_grid)} rates")
    a = state_from_json(rho, field_name="rho")
    b = state_from_json(sigma, field_name="sigma")
    values = await asyncio.to_thread(parallel_map, lambda r: hoeffding_anti(a, b, r), r_grid)
    return dumps({"curve": [[r, v] for r, v in zip(r_grid, values)]})


@server.tool()  # type: ignore
@handle_numeric_errors("compute_arc_point")  # type: ignore
async def compute_arc_point(
    rho: List[float], sigma: List[float], alpha: float = 0.5, rate: float = 0.0
) -> str:
    """
    Compute a Hellinger arc point, either at a given alpha or at the alpha solving D(mu||sigma) = rate.

    Args:
        rho (List[float]): First classical weight.
        sigma (List[float]): Second classical weight.
        alpha (float): Arc parameter, used when rate is 0.
        rate (float): Target D(mu_alpha||sigma); positive values trigger the root solver.

    Returns:
        str: JSON ArcPoint.
    """
    logger.info(f"[compute_arc_point] Invoked. alpha={alpha}, rate={rate}")
    if rate > 0:
        point = await asyncio.to_thread(solve_rate_alpha, rho, sigma, rate)
    else:
        point = await asyncio.to_thread(hellinger_arc, rho, sigma, alpha)
    return dumps(point)


@server.tool()  # type: ignore
@handle_numeric_errors("compute_legendre")  # type: ignore
async def compute_legendre(
    rho: StatePayload, sigma: StatePayload, which: str, points: List[float]
) -> str:
    """
    Evaluate Psi(c), PsiMinus(c) or TildePsi(r) of a pair.

    Args:
        rho (StatePayload): First state.
        sigma (StatePayload): Second state.
        which (str): "Psi", "PsiMinus" or "TildePsi".
        points (List[float]): Arguments c or r.

    Returns:
        str: JSON with the pair constants and [x, value] rows; TildePsi rows carry the case tag.
    """
    logger.info(f"[compute_legendre] Invoked. which='{which}', {len(points)} points")
    a = state_from_json(rho, field_name="rho")
    b = state_from_json(sigma, field_name="sigma")

    def _run() -> dict:
        data = LegendreData.from_pair(a, b)
        if which == "TildePsi":
            rows = [[x, *tilde_psi(data, x)] for x in points]
        else:
            rows = [[x, legendre(data, which, x)] for x in points]
        return {"constants": data, "which": which, "rows": rows}

    return dumps(await asyncio.to_thread(_run))
