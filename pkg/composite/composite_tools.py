"""
Composite MCP Tools

This module exposes set divergences, hull minimization and the optimality
certificate as MCP tools. Hypothesis sets use the JSON shape
{"kind": "classical" | "quantum", "label": ..., "states": [...]}.
"""

import asyncio
import logging
from typing import Any, Dict, Optional

from composite.hulls import SolverConfig, minimize_Hr_over_hulls, optimality_certificate
from composite.sets import HypothesisSet
from composite.setdiv import pairwise_table
from core.extreal import dumps
from core.server import server
from core.utils import handle_numeric_errors

logger = logging.getLogger(__name__)


@server.tool()  # type: ignore
@handle_numeric_errors("compute_set_divergence")  # type: ignore
async def compute_set_divergence(
    kind: str,
    null_set: Dict[str, Any],
    alternative_set: Dict[str, Any],
    alpha: Optional[float] = None,
    r: Optional[float] = None,
) -> str:
    """
    Compute inf over pairs of a divergence between two hypothesis sets.

    Args:
        kind (str): A divergence kind, or "hoeffding" (requires r).
        null_set (Dict[str, Any]): Hypothesis set R.
        alternative_set (Dict[str, Any]): Hypothesis set S.
        alpha (Optional[float]): Order for Renyi kinds.
        r (Optional[float]): Rate for "hoeffding".

    Returns:
        str: JSON with "value" and the pairwise "table".
    """
    logger.info(f"[compute_set_divergence] Invoked. Kind: '{kind}'")
    R = HypothesisSet.from_json(null_set, "R")
    S = HypothesisSet.from_json(alternative_set, "S")
    table = await asyncio.to_thread(pairwise_table, kind, R, S, alpha, r)
    value = min(v for row in table for v in row)
    return dumps({"kind": kind, "value": value, "table": table})


@server.tool()  # type: ignore
@handle_numeric_errors("minimize_hoeffding_over_hulls")  # type: ignore
async def minimize_hoeffding_over_hulls(
    null_set: Dict[str, Any],
    alternative_set: Dict[str, Any],
    r: float,
    theta: Optional[float] = None,
    max_iters: int = 5000,
) -> str:
    """
    Minimize H_r over the convex hulls of two classical sets.

    Args:
        null_set (Dict[str, Any]): Classical hypothesis set R.
        alternative_set (Dict[str, Any]): Classical hypothesis set S.
        r (float): Type-II rate.
        theta (Optional[float]): Smoothing weight; default smooths only when needed.
        max_iters (int): Frank-Wolfe iteration cap.

    Returns:
        str: JSON MinimizerPair.
    """
    logger.info(f"[minimize_hoeffding_over_hulls] Invoked. r={r}, theta={theta}")
    R = HypothesisSet.from_json(null_set, "R")
    S = HypothesisSet.from_json(alternative_set, "S")
    cfg = SolverConfig(max_iters=max_iters, theta=theta)
    pair = await asyncio.to_thread(minimize_Hr_over_hulls, R, S, r, cfg)
    return dumps(pair)


@server.tool()  # type: ignore
@handle_numeric_errors("check_optimality_certificate")  # type: ignore
async def check_optimality_certificate(
    null_set: Dict[str, Any],
    alternative_set: Dict[str, Any],
    r: float,
    theta: Optional[float] = None,
) -> str:
    """
    Solve the hull problem and check its first-order optimality certificate.

    Args:
        null_set (Dict[str, Any]): Classical hypothesis set R.
        alternative_set (Dict[str, Any]): Classical hypothesis set S.
        r (float): Type-II rate.
        theta (Optional[float]): Smoothing weight.

    Returns:
        str: JSON with the minimizer and the certificate slacks (no exception on failure).
    """
    logger.info(f"[check_optimality_certificate] Invoked. r={r}")
    R = HypothesisSet.from_json(null_set, "R")
    S = HypothesisSet.from_json(alternative_set, "S")

    def _run() -> dict:
        pair = minimize_Hr_over_hulls(R, S, r, SolverConfig(theta=theta))
        cert = optimality_certificate(pair, R, S, raise_on_failure=False)
        return {"minimizer": pair, "certificate": cert}

    return dumps(await asyncio.to_thread(_run))
