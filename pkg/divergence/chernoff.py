"""
Chernoff divergence C(rho||sigma) = -min over alpha in [0, 1] of psi(alpha).
"""

import logging
import math
from typing import Any, Tuple, Union

from scipy.optimize import brentq, minimize_scalar

from core.config import EPS_SUPP
from core.extreal import INF, ExtReal
from divergence.renyi import PETZ, classical_psi_derivatives, psi_eval, supports_orthogonal
from divergence.states import coerce_pair

logger = logging.getLogger(__name__)

ALPHA_MARGIN = 1e-6
ALPHA_TOL = 1e-10


def _classical_stationary_point(p, q) -> Union[float, None]:
    """Root of psi'(alpha) in the interior, when the derivative changes sign."""
    lo, hi = ALPHA_MARGIN, 1.0 - ALPHA_MARGIN
    d_lo = classical_psi_derivatives(p, q, lo)[1]
    d_hi = classical_psi_derivatives(p, q, hi)[1]
    if d_lo >= 0.0 or d_hi <= 0.0:
        return None
    return brentq(lambda a: classical_psi_derivatives(p, q, a)[1], lo, hi, xtol=ALPHA_TOL)


def chernoff(
    rho: Any,
    sigma: Any,
    return_alpha: bool = False,
    eps_supp: float = EPS_SUPP,
) -> Union[ExtReal, Tuple[ExtReal, float]]:
    """
    Chernoff divergence by convex scalar minimization of the Petz psi.

    Args:
        rho: First state.
        sigma: Second state.
        return_alpha: Also return the minimizing order.

    Returns:
        ExtReal or (ExtReal, float): C, and the optimal alpha when requested
        (nan for orthogonal supports, where C = +inf).
    """
    kind, a, b = coerce_pair(rho, sigma)
    if supports_orthogonal(a, b, eps_supp):
        return (INF, math.nan) if return_alpha else INF

    def psi(alpha: float) -> float:
        return psi_eval(a, b, alpha, PETZ, eps_supp)

    candidates = [(psi(0.0), 0.0), (psi(1.0), 1.0)]
    stationary = _classical_stationary_point(a, b) if kind == "classical" else None
    if stationary is not None:
        candidates.append((psi(stationary), stationary))
    else:
        res = minimize_scalar(
            psi,
            bounds=(ALPHA_MARGIN, 1.0 - ALPHA_MARGIN),
            method="bounded",
            options={"xatol": ALPHA_TOL},
        )
        candidates.append((float(res.fun), float(res.x)))

    best_psi, best_alpha = min(candidates, key=lambda c: c[0])
    value = -best_psi
    logger.debug(f"Chernoff divergence {value:.12g} at alpha={best_alpha:.6f}")
    return (value, best_alpha) if return_alpha else value
