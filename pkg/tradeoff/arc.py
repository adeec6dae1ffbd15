"""
Hellinger arc of a classical pair and the rate-to-alpha solver.

For alpha on the real line the tilted weight mu_alpha ~ rho^alpha sigma^(1-alpha)
moves from sigma restricted to supp rho (alpha = 0) to rho (alpha = 1), and
its divergences to the endpoints are
    D(mu_alpha || sigma) = alpha psi'(alpha) - psi(alpha)
    D(mu_alpha || rho)   = (alpha - 1) psi'(alpha) - psi(alpha).
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Tuple

import numpy as np
from scipy.optimize import brentq

from core.extreal import INF, ExtReal
from core.utils import KindMismatch, NoUniqueRoot, OutOfRange, SupportMismatch
from divergence.renyi import (
    classical_psi,
    classical_psi_derivatives,
    classical_rel_entropy,
    classical_support_contained,
    classical_tilted,
)
from divergence.states import ClassicalWeight, coerce_pair

logger = logging.getLogger(__name__)

# psi'' below this at alpha = 1/2 marks an affine psi
AFFINE_TOL = 1e-12
# Relative tolerance defining the argmax set of rho / sigma
RATIO_TOL = 1e-10
ARC_CHECK_TOL = 1e-9
MAX_BRACKET_DOUBLINGS = 80


@dataclass(frozen=True)
class ArcPoint:
    alpha: float
    mu: ClassicalWeight
    rate_to_sigma: float
    rate_to_rho: float
    psi: float
    psi1: float
    psi2: float

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "mu": self.mu.weights.tolist(),
            "rate_to_sigma": self.rate_to_sigma,
            "rate_to_rho": self.rate_to_rho,
            "psi": self.psi,
            "psi1": self.psi1,
            "psi2": self.psi2,
        }


def classical_pair(rho: Any, sigma: Any) -> Tuple[np.ndarray, np.ndarray]:
    kind, p, q = coerce_pair(rho, sigma)
    if kind != "classical":
        raise KindMismatch("This operation is defined for classical weight vectors only")
    return p, q


def psi_derivatives(rho: Any, sigma: Any, alpha: float) -> Tuple[float, float, float]:
    """
    (psi, psi', psi'') of a classical pair at alpha.

    psi' and psi'' are the mean and variance of log rho - log sigma under mu_alpha.

    Raises:
        SupportMismatch: when the supports are disjoint.
    """
    p, q = classical_pair(rho, sigma)
    return classical_psi_derivatives(p, q, alpha)


def hellinger_arc(rho: Any, sigma: Any, alpha: float) -> ArcPoint:
    """
    Point mu_alpha of the Hellinger arc with its rates to both endpoints.

    The rates are computed directly from mu_alpha and cross-checked against
    the psi-derivative identities.
    """
    p, q = classical_pair(rho, sigma)
    psi, psi1, psi2 = classical_psi_derivatives(p, q, alpha)
    mu = classical_tilted(p, q, alpha)
    rate_sigma = classical_rel_entropy(mu, q)
    rate_rho = classical_rel_entropy(mu, p)
    for name, direct, identity in (
        ("sigma", rate_sigma, alpha * psi1 - psi),
        ("rho", rate_rho, (alpha - 1.0) * psi1 - psi),
    ):
        if abs(direct - identity) > ARC_CHECK_TOL * (1.0 + abs(direct)):
            logger.warning(
                f"Arc rate to {name} at alpha={alpha:.6g}: direct {direct:.12g} vs identity {identity:.12g}"
            )
    return ArcPoint(
        alpha=float(alpha),
        mu=ClassicalWeight.from_values(mu),
        rate_to_sigma=float(rate_sigma),
        rate_to_rho=float(rate_rho),
        psi=psi,
        psi1=psi1,
        psi2=psi2,
    )


def r_infty(rho: Any, sigma: Any) -> ExtReal:
    """
    -log sigma(X_inf), X_inf the argmax set of rho/sigma on supp rho.

    Raises:
        SupportMismatch: when supp rho is not inside supp sigma.
    """
    p, q = classical_pair(rho, sigma)
    if not classical_support_contained(p, q):
        raise SupportMismatch("r_infinity needs supp rho inside supp sigma")
    mask = p > 0
    if not np.any(mask):
        return INF
    ratio = np.full(p.shape, -np.inf)
    ratio[mask] = np.log(p[mask]) - np.log(q[mask])
    top = float(ratio.max())
    argmax = ratio >= top - RATIO_TOL * max(1.0, abs(top))
    return -math.log(float(q[argmax].sum()))


def is_affine(rho: Any, sigma: Any) -> bool:
    """psi'' vanishes at alpha = 1/2, so the log-likelihood ratio is constant on the common support."""
    return psi_derivatives(rho, sigma, 0.5)[2] < AFFINE_TOL


def arc_gap(p: np.ndarray, q: np.ndarray, r: float):
    def g(alpha: float) -> float:
        psi, psi1, _ = classical_psi_derivatives(p, q, alpha)
        return alpha * psi1 - psi - r

    return g


def solve_rate_alpha(rho: Any, sigma: Any, r: float) -> ArcPoint:
    """
    The unique alpha_r > 0 with D(mu_alpha_r || sigma) = r.

    alpha_r < 1 when r < D(rho||sigma) and alpha_r > 1 when r > D(rho||sigma);
    in both cases D(mu_alpha_r || rho) is the corresponding trade-off exponent.

    Raises:
        SupportMismatch: supp rho not inside supp sigma.
        NoUniqueRoot: affine psi.
        OutOfRange: r outside (D_0, r_infinity).
    """
    p, q = classical_pair(rho, sigma)
    if not classical_support_contained(p, q):
        raise SupportMismatch("solve_rate_alpha needs supp rho inside supp sigma")
    if classical_psi_derivatives(p, q, 0.5)[2] < AFFINE_TOL:
        raise NoUniqueRoot("psi is affine; D_0 = D = D_inf = r_inf and no interior rate has a root")
    d0 = -classical_psi(p, q, 0.0)
    r_inf = r_infty(p, q)
    if not d0 < r < r_inf:
        raise OutOfRange(f"Rate {r} outside (D_0, r_inf) = ({d0:.12g}, {r_inf:.12g})")

    g = arc_gap(p, q, r)
    lo, hi = 0.0, 1.0
    doublings = 0
    while g(hi) < 0.0:
        lo, hi = hi, 2.0 * hi
        doublings += 1
        if doublings > MAX_BRACKET_DOUBLINGS:
            raise OutOfRange(f"Could not bracket the arc root for r={r}")
    alpha = brentq(g, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    logger.debug(f"Arc root for r={r:.6g}: alpha={alpha:.12g}")
    return hellinger_arc(p, q, alpha)
