"""
Typelab MCP Tools

This module exposes exact finite-n error computations for symmetric tests on
classical product states. Weights are passed as lists of nonnegative numbers.
"""

import asyncio
import logging
from typing import List, Optional

from core.extreal import dumps
from core.server import server
from core.utils import UserInputError, handle_numeric_errors
from divergence.states import classical_array
from tradeoff.arc import solve_rate_alpha
from typelab.rounding import type_round_halfspace
from typelab.symmetric import ball_test, exact_errors, np_test, tv_lower_bound

logger = logging.getLogger(__name__)


@server.tool()  # type: ignore
@handle_numeric_errors("compute_np_test_errors")  # type: ignore
async def compute_np_test_errors(
    rho: List[float],
    sigma: List[float],
    n: int,
    c: Optional[float] = None,
    r: Optional[float] = None,
) -> str:
    """
    Exact errors of the Neyman-Pearson type test on n copies.

    Args:
        rho (List[float]): Null weight.
        sigma (List[float]): Alternative weight.
        n (int): Number of copies.
        c (Optional[float]): LLR threshold per copy.
        r (Optional[float]): Type-II rate; sets c = psi'(alpha_r) when c is omitted.

    Returns:
        str: JSON with c, the ErrorPair and the total-variation lower bound on alpha + beta.
    """
    logger.info(f"[compute_np_test_errors] Invoked. n={n}, c={c}, r={r}")
    p, q = classical_array(rho), classical_array(sigma)

    def _run() -> dict:
        threshold = c
        alpha_r = None
        if threshold is None:
            if r is None:
                raise UserInputError("Either c or r is required", field="c")
            point = solve_rate_alpha(p, q, r)
            threshold, alpha_r = point.psi1, point.alpha
        test = np_test(p, q, threshold, n)
        errors = exact_errors(test, [p], [q])
        return {
            "n": n,
            "c": threshold,
            "alpha_r": alpha_r,
            "errors": errors,
            "tv_lower_bound": tv_lower_bound(p, q, n),
        }

    return dumps(await asyncio.to_thread(_run))


@server.tool()  # type: ignore
@handle_numeric_errors("compute_ball_test_errors")  # type: ignore
async def compute_ball_test_errors(
    rho: List[float],
    sigma: List[float],
    r: float,
    n: int,
) -> str:
    """
    Exact errors of the relative-entropy ball test B_{n,r} around sigma.

    Args:
        rho (List[float]): Null weight.
        sigma (List[float]): Alternative weight.
        r (float): Ball radius (type-II rate).
        n (int): Number of copies.

    Returns:
        str: JSON with the ErrorPair, the type bound on beta and whether it held.
    """
    logger.info(f"[compute_ball_test_errors] Invoked. n={n}, r={r}")
    p, q = classical_array(rho), classical_array(sigma)

    def _run() -> dict:
        test = ball_test(q, r, n)
        return {"n": n, "r": r, "errors": exact_errors(test, [p], [q]), "test": test}

    return dumps(await asyncio.to_thread(_run))


@server.tool()  # type: ignore
@handle_numeric_errors("round_type_to_halfspace")  # type: ignore
async def round_type_to_halfspace(
    rho: List[float],
    v: List[float],
    c: float,
    n: int,
) -> str:
    """
    Round a distribution in {sum v p >= c} to an n-type in the same halfspace.

    Args:
        rho (List[float]): Distribution with sum v rho >= c.
        v (List[float]): Halfspace normal.
        c (float): Halfspace offset.
        n (int): Type denominator (at least r(r-1), r = support size).

    Returns:
        str: JSON TypeVector.
    """
    logger.info(f"[round_type_to_halfspace] Invoked. n={n}, c={c}")
    result = type_round_halfspace(classical_array(rho), v, c, n)
    return dumps(result)
