"""
Legendre-Fenchel transforms of psi on [1, inf) and the strong-converse case formula.

    Psi(c)  = sup over alpha >= 1 of (c alpha - psi(alpha))
    Psi-(c) = Psi(c) - c
    Psi~(r) = 0                 for r <= r1+ = Psi(D1+)
            = r - Psi^{-1}(r)   for r1+ < r < r_inf
            = r - D_inf         for r >= r_inf
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Tuple

from scipy.optimize import brentq, minimize_scalar
from scipy.special import rel_entr

from core.config import EPS_SUPP
from core.extreal import INF, ExtReal
from core.utils import OutOfRange, SupportMismatch, UserInputError
from divergence.renyi import (
    SANDWICHED,
    max_rel_entropy,
    psi_eval,
    rel_entropy,
    support_contained,
)
from divergence.states import coerce_pair
from tradeoff.arc import r_infty

logger = logging.getLogger(__name__)

ALPHA_CAP = 2.0**40
LOG_MU_FLOOR = -700.0


class LegendreWhich(str, Enum):
    PSI = "Psi"
    PSI_MINUS = "PsiMinus"
    TILDE_PSI = "TildePsi"


@dataclass(frozen=True)
class LegendreData:
    """psi on [1, inf) with the constants bounding its Legendre transform."""

    psi: Callable[[float], float]
    d1_plus: ExtReal
    d_infty: ExtReal
    r_infty: ExtReal
    psi_one: float = 0.0

    @classmethod
    def from_pair(cls, rho: Any, sigma: Any, eps_supp: float = EPS_SUPP) -> "LegendreData":
        """
        Build the data from the sandwiched psi (the Petz psi for classical pairs).

        Raises:
            SupportMismatch: when supp rho is not inside supp sigma.
        """
        kind, a, b = coerce_pair(rho, sigma)
        if not support_contained(a, b, eps_supp):
            raise SupportMismatch("Legendre data needs supp rho inside supp sigma")

        def psi(alpha: float) -> float:
            return psi_eval(a, b, alpha, SANDWICHED, eps_supp)

        d_inf = max_rel_entropy(a, b, eps_supp)
        if kind == "classical":
            r_inf = r_infty(a, b)
        else:
            r_inf = _limit_r_infty(psi, d_inf)
        return cls(
            psi=psi,
            d1_plus=rel_entropy(a, b, eps_supp),
            d_infty=d_inf,
            r_infty=r_inf,
            psi_one=psi(1.0),
        )

    def to_dict(self) -> dict:
        return {"D1_plus": self.d1_plus, "D_infty": self.d_infty, "r_infty": self.r_infty}


def _limit_r_infty(psi: Callable[[float], float], d_inf: float) -> float:
    """lim alpha D_inf - psi(alpha) as alpha -> inf; the sequence is nondecreasing."""
    previous = -INF
    alpha = 1.0
    value = d_inf - psi(1.0)
    while alpha < ALPHA_CAP:
        alpha *= 2.0
        value = alpha * d_inf - psi(alpha)
        if abs(value - previous) <= 1e-12 * max(1.0, abs(value)):
            break
        previous = value
    return value


def _expanding_sup(f: Callable[[float], float]) -> float:
    """sup over alpha >= 1 of a concave f, by doubling a bracket and bounded search."""
    a_prev, a_cur = 1.0, 2.0
    f_prev, f_cur = f(a_prev), f(a_cur)
    while f_cur > f_prev and a_cur < ALPHA_CAP:
        a_prev, a_cur = a_cur, 2.0 * a_cur
        f_prev, f_cur = f_cur, f(a_cur)
    lo = max(1.0, a_prev / 2.0)
    res = minimize_scalar(lambda a: -f(a), bounds=(lo, a_cur), method="bounded", options={"xatol": 1e-12 * a_cur})
    return max(-float(res.fun), f_prev, f(1.0))


def big_psi(data: LegendreData, c: float) -> ExtReal:
    """Psi(c) = sup over alpha >= 1 of (c alpha - psi(alpha))."""
    if c > data.d_infty:
        return INF
    if c == data.d_infty:
        return data.r_infty
    if c <= data.d1_plus:
        return c - data.psi_one
    return _expanding_sup(lambda a: c * a - data.psi(a))


def inverse_big_psi(data: LegendreData, r: float) -> float:
    """Psi^{-1}(r) on (r1+, r_inf) by bracketing c in (D1+, D_inf)."""
    r1 = big_psi(data, data.d1_plus)
    if not r1 < r < data.r_infty:
        raise OutOfRange(f"Psi^-1 defined on ({r1:.12g}, {data.r_infty:.12g}), got {r}")
    return brentq(lambda c: big_psi(data, c) - r, data.d1_plus, data.d_infty, xtol=1e-14, maxiter=500)


def tilde_psi(data: LegendreData, r: float) -> Tuple[ExtReal, str]:
    """Psi~(r) by the three-case formula; returns (value, case tag)."""
    r1 = big_psi(data, data.d1_plus)
    if r <= r1:
        return -data.psi_one, "zero"
    if r >= data.r_infty:
        return r - data.d_infty, "linear"
    return r - inverse_big_psi(data, r), "legendre"


def legendre(data: LegendreData, which: str, x: float) -> ExtReal:
    """
    Evaluate Psi(c), Psi-(c) or Psi~(r).

    Args:
        data: LegendreData of a pair.
        which: "Psi", "PsiMinus" or "TildePsi".
        x: c for Psi / PsiMinus, r for TildePsi.
    """
    try:
        w = LegendreWhich(which)
    except ValueError:
        raise UserInputError(f"Unknown transform {which!r}; expected Psi, PsiMinus or TildePsi", field="which")
    if w is LegendreWhich.PSI:
        return big_psi(data, x)
    if w is LegendreWhich.PSI_MINUS:
        value = big_psi(data, x)
        return value if math.isinf(value) else value - x
    return tilde_psi(data, x)[0]


def lmgf(data: LegendreData, a: float) -> ExtReal:
    """Log moment generating function of the log-likelihood ratio under rho: Lambda(a) = psi(a + 1)."""
    if a < 0.0:
        raise OutOfRange(f"Lambda is evaluated for a >= 0, got {a}")
    return data.psi(a + 1.0)


def shifted_legendre(data: LegendreData, c: float) -> ExtReal:
    """Legendre transform of Lambda on [0, inf): Psi(c) - c."""
    return legendre(data, LegendreWhich.PSI_MINUS.value, c)


def d1_plus(rho: Any, sigma: Any, eps_supp: float = EPS_SUPP) -> ExtReal:
    """Right limit of psi(alpha)/(alpha - 1) at 1: D for nested supports, +inf otherwise."""
    if not support_contained(rho, sigma, eps_supp):
        return INF
    return rel_entropy(rho, sigma, eps_supp)


def d2(a: float, b: float) -> ExtReal:
    """Binary relative entropy D((a, 1-a) || (b, 1-b))."""
    return float(rel_entr(a, b) + rel_entr(1.0 - a, 1.0 - b))


def solve_d2(lam: float, target: float) -> float:
    """
    The root mu in (0, lam] of d2(lam || mu) = target.

    d2(lam || .) decreases from +inf to 0 on (0, lam]; the root is found by
    bisection in log mu.

    Raises:
        OutOfRange: lam outside (0, 1), negative target, or target beyond the
            representable range.
    """
    if not 0.0 < lam < 1.0:
        raise OutOfRange(f"lambda must lie in (0, 1), got {lam}")
    if target < 0.0:
        raise OutOfRange(f"d2 target must be nonnegative, got {target}")
    if target == 0.0:
        return lam
    t_hi = math.log(lam)
    t_lo = max(LOG_MU_FLOOR, t_hi - (target + 1.0 + abs((1.0 - lam) * math.log(1.0 - lam))) / lam)

    def g(t: float) -> float:
        return d2(lam, math.exp(t)) - target

    if g(t_lo) <= 0.0:
        t_lo = LOG_MU_FLOOR
        if g(t_lo) <= 0.0:
            raise OutOfRange(f"d2 target {target} unreachable for lambda={lam}")
    t = brentq(g, t_lo, t_hi, xtol=1e-15, maxiter=1000)
    return math.exp(t)
