"""
Gallery MCP Tools

This module exposes the explicit constructions and their certified reports as
MCP tools. Matrices use {"dim", "re", "im"}; omitted quantum states default to
the minimal qubit triple.
"""

import asyncio
import logging
from typing import Any, Dict, List, Optional, Union

from core.extreal import dumps
from core.server import server
from core.utils import UserInputError, handle_numeric_errors
from gallery.coin import coin_example_report
from gallery.interval import interval_example_report, interval_supp_report
from gallery.noncommutative import minimal_triple, stein_gap_report, tune_direct_example
from gallery.pure import pure_state_report, vector_from_json
from hermcore.operators import operator_from_json

logger = logging.getLogger(__name__)

VectorPayload = Union[List[float], Dict[str, List[float]]]


def _triple(rho: Optional[Dict[str, Any]], sigma1: Optional[Dict[str, Any]], sigma2: Optional[Dict[str, Any]]):
    default_rho, default_s1, default_s2 = minimal_triple()
    if (sigma1 is None) != (sigma2 is None):
        raise UserInputError("Pass both sigma1 and sigma2 or neither", field="sigma1")
    s1 = default_s1 if sigma1 is None else operator_from_json(sigma1, "sigma1")
    s2 = default_s2 if sigma2 is None else operator_from_json(sigma2, "sigma2")
    if rho is not None:
        r = operator_from_json(rho, "rho")
    elif sigma1 is None:
        r = default_rho
    else:
        r = None
    return r, s1, s2


@server.tool()  # type: ignore
@handle_numeric_errors("run_coin_report")  # type: ignore
async def run_coin_report(k: int = 1, r_grid: Optional[List[float]] = None) -> str:
    """
    Fair coin against two biased coins: constants, strong-converse gap and finite-n check.

    Args:
        k (int): Flips per copy.
        r_grid (Optional[List[float]]): Rates; defaults to 0.2, 0.5, 1.0, 1.5 times k.

    Returns:
        str: JSON CounterexampleReport.
    """
    logger.info(f"[run_coin_report] Invoked. k={k}")
    grid = r_grid if r_grid is not None else [k * x for x in (0.2, 0.5, 1.0, 1.5)]
    return dumps(await asyncio.to_thread(coin_example_report, k, grid))


@server.tool()  # type: ignore
@handle_numeric_errors("run_interval_report")  # type: ignore
async def run_interval_report(
    n: int,
    r: float,
    depth: Optional[int] = None,
    random_tests: int = 0,
    seed: int = 0,
) -> str:
    """
    Interval example: exact errors of the constructed test and trade-off checks.

    Args:
        n (int): Number of copies.
        r (float): Type-II rate.
        depth (Optional[int]): Digit depth available to the test.
        random_tests (int): Also check this many random digit-cylinder tests (depth 2).
        seed (int): Seed for the random tests.

    Returns:
        str: JSON with the report and, when requested, the random-test report.
    """
    logger.info(f"[run_interval_report] Invoked. n={n}, r={r}, depth={depth}")

    def _run() -> dict:
        out = {"constructed": interval_example_report(n, r, depth)}
        if random_tests > 0:
            out["random_tests"] = interval_supp_report(n, 2, random_tests, seed)
        return out

    return dumps(await asyncio.to_thread(_run))


@server.tool()  # type: ignore
@handle_numeric_errors("run_stein_report")  # type: ignore
async def run_stein_report(
    rho: Optional[Dict[str, Any]] = None,
    sigma1: Optional[Dict[str, Any]] = None,
    sigma2: Optional[Dict[str, Any]] = None,
) -> str:
    """
    Stein gap of the doubled states against the geometric-mean bound.

    Args:
        rho (Optional[Dict[str, Any]]): Null state; the top eigenvector of diff when omitted with custom sigmas.
        sigma1 (Optional[Dict[str, Any]]): First invertible alternative.
        sigma2 (Optional[Dict[str, Any]]): Second invertible alternative.

    Returns:
        str: JSON CounterexampleReport.
    """
    logger.info("[run_stein_report] Invoked.")
    r, s1, s2 = _triple(rho, sigma1, sigma2)
    return dumps(await asyncio.to_thread(stein_gap_report, r, s1, s2))


@server.tool()  # type: ignore
@handle_numeric_errors("run_direct_report")  # type: ignore
async def run_direct_report(
    r: float,
    t: float,
    s: float = 0.25,
    rho: Optional[Dict[str, Any]] = None,
    sigma1: Optional[Dict[str, Any]] = None,
    sigma2: Optional[Dict[str, Any]] = None,
) -> str:
    """
    Direct-exponent separation by the nu scan; t = r adds the Chernoff rows.

    Args:
        r (float): Type-II rate.
        t (float): Target exponent gap location.
        s (float): Shape parameter in (0, 1/3).
        rho (Optional[Dict[str, Any]]): Null state.
        sigma1 (Optional[Dict[str, Any]]): First invertible alternative.
        sigma2 (Optional[Dict[str, Any]]): Second invertible alternative.

    Returns:
        str: JSON CounterexampleReport including the scan trace.
    """
    logger.info(f"[run_direct_report] Invoked. r={r}, t={t}, s={s}")
    rr, s1, s2 = _triple(rho, sigma1, sigma2)
    return dumps(await asyncio.to_thread(tune_direct_example, rr, s1, s2, r, t, s))


@server.tool()  # type: ignore
@handle_numeric_errors("run_pure_state_report")  # type: ignore
async def run_pure_state_report(
    psis: List[VectorPayload],
    phis: List[VectorPayload],
    n_grid: List[int],
) -> str:
    """
    Pure-state families: overlap exponents, Gram eigenvalues and type-II bounds.

    Args:
        psis (List[VectorPayload]): Null unit vectors (real lists or {"re", "im"}).
        phis (List[VectorPayload]): Alternative unit vectors.
        n_grid (List[int]): Numbers of copies.

    Returns:
        str: JSON CounterexampleReport.
    """
    logger.info(f"[run_pure_state_report] Invoked. {len(psis)} x {len(phis)} states")
    a = [vector_from_json(v, "psis") for v in psis]
    b = [vector_from_json(v, "phis") for v in phis]
    return dumps(await asyncio.to_thread(pure_state_report, a, b, n_grid))
