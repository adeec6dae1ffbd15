"""
Hoeffding divergence and anti-divergence.

Both are suprema of f(alpha) = ((alpha - 1) r - psi(alpha)) / alpha, over
alpha in (0, 1) with the Petz psi for H_r and over alpha >= 1 with the
sandwiched psi for H*_r. In u = (alpha - 1) / alpha this reads u r - psi~(u).
Classical pairs are solved through the stationarity condition
D(mu_alpha || sigma) = r; quantum pairs by bounded scalar search.
"""

import logging
import math
from typing import Any, Callable, Tuple

from scipy.optimize import brentq, minimize_scalar

from core.config import EPS_SUPP
from core.extreal import INF, ExtReal
from core.utils import SupportMismatch
from divergence.renyi import (
    PETZ,
    SANDWICHED,
    classical_psi,
    max_rel_entropy,
    psi_eval,
    psi_tilde_eval,
)
from divergence.states import coerce_pair
from tradeoff.arc import MAX_BRACKET_DOUBLINGS, arc_gap, r_infty

logger = logging.getLogger(__name__)

ALPHA_LO = 1e-9
XATOL = 1e-12


def _objective(psi: Callable[[float], float], r: float) -> Callable[[float], float]:
    def f(alpha: float) -> float:
        value = psi(alpha)
        if math.isinf(value):
            return -value
        return ((alpha - 1.0) * r - value) / alpha

    return f


def _classical_hoeffding(p, q, r: float) -> Tuple[ExtReal, float]:
    d0 = -classical_psi(p, q, 0.0)
    if r < d0:
        return INF, 0.0
    f = _objective(lambda a: classical_psi(p, q, a), r)
    g = arc_gap(p, q, r)
    if g(1.0) <= 0.0:
        return f(1.0), 1.0
    lo = ALPHA_LO
    if g(lo) >= 0.0:
        return f(lo), lo
    alpha = brentq(g, lo, 1.0, xtol=1e-15, maxiter=500)
    return f(alpha), alpha


def _quantum_hoeffding(rho, sigma, r: float, eps_supp: float) -> Tuple[ExtReal, float]:
    psi0 = psi_eval(rho, sigma, 0.0, PETZ, eps_supp)
    if psi0 == -INF or r < -psi0:
        return INF, 0.0
    f = _objective(lambda a: psi_eval(rho, sigma, a, PETZ, eps_supp), r)
    res = minimize_scalar(
        lambda a: -f(a), bounds=(ALPHA_LO, 1.0 - ALPHA_LO), method="bounded", options={"xatol": XATOL}
    )
    at_one = f(1.0)
    if at_one >= -float(res.fun):
        return at_one, 1.0
    return -float(res.fun), float(res.x)


def hoeffding(rho: Any, sigma: Any, r: float, eps_supp: float = EPS_SUPP) -> ExtReal:
    """
    Hoeffding divergence H_r = sup over alpha in (0, 1) of ((alpha - 1)/alpha)(r - D_alpha).

    Args:
        rho: First state (weights or matrix, possibly subnormalized).
        sigma: Second state.
        r: Type-II rate.

    Returns:
        ExtReal: +inf for r below D_0 = -psi(0); the alpha -> 1 value -psi(1)
        (zero for supp rho inside supp sigma) once r >= D.
    """
    return hoeffding_optimizer(rho, sigma, r, eps_supp)[0]


def hoeffding_optimizer(rho: Any, sigma: Any, r: float, eps_supp: float = EPS_SUPP) -> Tuple[ExtReal, float]:
    """H_r together with the maximizing alpha (1.0 when the supremum sits at alpha -> 1)."""
    kind, a, b = coerce_pair(rho, sigma)
    if kind == "classical":
        return _classical_hoeffding(a, b, r)
    return _quantum_hoeffding(a, b, r, eps_supp)


def _classical_anti(p, q, r: float) -> ExtReal:
    d_inf = max_rel_entropy(p, q)
    if math.isinf(d_inf):
        raise SupportMismatch("Hoeffding anti-divergence needs supp rho inside supp sigma (D_inf = +inf)")
    f = _objective(lambda a: classical_psi(p, q, a), r)
    g = arc_gap(p, q, r)
    if g(1.0) >= 0.0:
        return f(1.0)
    r_inf = r_infty(p, q)
    if r >= r_inf:
        return r - d_inf
    lo, hi = 1.0, 2.0
    doublings = 0
    while g(hi) < 0.0:
        lo, hi = hi, 2.0 * hi
        doublings += 1
        if doublings > MAX_BRACKET_DOUBLINGS:
            return r - d_inf
    alpha = brentq(g, lo, hi, xtol=1e-15, maxiter=500)
    return max(f(alpha), r - d_inf)


def _quantum_anti(rho, sigma, r: float, eps_supp: float) -> ExtReal:
    d_inf = max_rel_entropy(rho, sigma, eps_supp)
    if math.isinf(d_inf):
        raise SupportMismatch("Hoeffding anti-divergence needs supp rho inside supp sigma (D_inf = +inf)")

    def h(u: float) -> float:
        return u * r - psi_tilde_eval(rho, sigma, u, SANDWICHED, eps_supp)

    res = minimize_scalar(lambda u: -h(u), bounds=(0.0, 1.0 - ALPHA_LO), method="bounded", options={"xatol": XATOL})
    return max(h(0.0), r - d_inf, -float(res.fun))


def hoeffding_anti(rho: Any, sigma: Any, r: float, eps_supp: float = EPS_SUPP) -> ExtReal:
    """
    Hoeffding anti-divergence H*_r = max over u in [0, 1] of (u r - psi~*(u)).

    Zero for r <= D (normalized states), r - D_inf for r >= r_inf.

    Raises:
        SupportMismatch: when D_inf(rho||sigma) = +inf.
    """
    kind, a, b = coerce_pair(rho, sigma)
    if kind == "classical":
        return _classical_anti(a, b, r)
    return _quantum_anti(a, b, r, eps_supp)
