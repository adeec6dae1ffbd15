"""
Error-exponent trade-offs: Hoeffding divergence and anti-divergence, the
Hellinger arc, Legendre transforms of psi and the binary relative entropy.
"""

from divergence.renyi import d0
from tradeoff.arc import (
    ArcPoint,
    hellinger_arc,
    is_affine,
    psi_derivatives,
    r_infty,
    solve_rate_alpha,
)
from tradeoff.hoeffding import hoeffding, hoeffding_anti, hoeffding_optimizer
from tradeoff.legendre import (
    LegendreData,
    LegendreWhich,
    big_psi,
    d1_plus,
    d2,
    inverse_big_psi,
    legendre,
    lmgf,
    shifted_legendre,
    solve_d2,
    tilde_psi,
)

__all__ = [
    "ArcPoint",
    "LegendreData",
    "LegendreWhich",
    "big_psi",
    "d0",
    "d1_plus",
    "d2",
    "hellinger_arc",
    "hoeffding",
    "hoeffding_anti",
    "hoeffding_optimizer",
    "inverse_big_psi",
    "is_affine",
    "legendre",
    "lmgf",
    "psi_derivatives",
    "r_infty",
    "shifted_legendre",
    "solve_d2",
    "solve_rate_alpha",
    "tilde_psi",
]
