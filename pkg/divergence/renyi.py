"""
Relative entropy, Renyi families, max-relative entropy and the psi cumulants.

Classical pairs are evaluated on weight vectors; quantum pairs on dense
matrices with support-restricted matrix functions. Endpoint values
(alpha = 0, 1, infinity and u = 0, 1) use their closed forms.
"""

import logging
import math
from typing import Any, Tuple

import numpy as np
from scipy.special import logsumexp

from core.config import EPS_SUPP, TRACE_TOL
from core.extreal import INF, ExtReal
from core.utils import NotPD, OutOfRange, SupportMismatch, UserInputError
from divergence.states import coerce_pair
from hermcore.operators import as_matrix
from hermcore.linalg import (
    eig_herm,
    expm_herm,
    geometric_mean,
    logn,
    powm,
    require_pd,
    support_projection,
)

logger = logging.getLogger(__name__)

# Residual tolerance when testing range(rho) inside range(sigma)
SUPPORT_TOL = 1e-8

PETZ = "petz"
SANDWICHED = "sandwiched"
FAMILIES = (PETZ, SANDWICHED)


def _trace_real(m: np.ndarray) -> float:
    return float(np.real(np.trace(m)))


def _safe_log(x: float) -> ExtReal:
    return math.log(x) if x > 0 else -INF


# ---------------------------------------------------------------------------
# Support relations
# ---------------------------------------------------------------------------


def classical_support_contained(p: np.ndarray, q: np.ndarray) -> bool:
    """True when supp p is inside supp q."""
    return not bool(np.any((p > 0) & (q <= 0)))


def quantum_support_contained(rho: np.ndarray, sigma: np.ndarray, eps_supp: float = EPS_SUPP) -> bool:
    return support_projection(sigma, eps_supp).contains(support_projection(rho, eps_supp), tol=SUPPORT_TOL)


def support_contained(rho: Any, sigma: Any, eps_supp: float = EPS_SUPP) -> bool:
    kind, a, b = coerce_pair(rho, sigma)
    if kind == "classical":
        return classical_support_contained(a, b)
    return quantum_support_contained(a, b, eps_supp)


def supports_orthogonal(rho: Any, sigma: Any, eps_supp: float = EPS_SUPP) -> bool:
    """Orthogonal supports: Tr rho0 sigma0 below eps_supp times the smaller rank."""
    kind, a, b = coerce_pair(rho, sigma)
    if kind == "classical":
        return not bool(np.any((a > 0) & (b > 0)))
    pa = support_projection(a, eps_supp)
    pb = support_projection(b, eps_supp)
    if pa.rank == 0 or pb.rank == 0:
        return True
    overlap = _trace_real(pa.matrix @ pb.matrix)
    return overlap < eps_supp * max(1, min(pa.rank, pb.rank)) or overlap < 1e-12


# ---------------------------------------------------------------------------
# Classical primitives
# ---------------------------------------------------------------------------


def classical_psi(p: np.ndarray, q: np.ndarray, alpha: float) -> ExtReal:
    """log sum over supp p and supp q of p^alpha q^(1-alpha); -inf for disjoint supports."""
    mask = (p > 0) & (q > 0)
    if not np.any(mask):
        return -INF
    terms = alpha * np.log(p[mask]) + (1.0 - alpha) * np.log(q[mask])
    return float(logsumexp(terms))


def classical_psi_derivatives(p: np.ndarray, q: np.ndarray, alpha: float) -> Tuple[float, float, float]:
    """
    psi and its first two alpha-derivatives for a classical pair.

    The derivatives are the mean and variance of log p - log q under the
    tilted weight proportional to p^alpha q^(1-alpha) on the common support.
    """
    mask = (p > 0) & (q > 0)
    if not np.any(mask):
        raise SupportMismatch("psi derivatives need intersecting supports")
    llr = np.log(p[mask]) - np.log(q[mask])
    log_terms = np.log(q[mask]) + alpha * llr
    psi = float(logsumexp(log_terms))
    mu = np.exp(log_terms - psi)
    mean = float(np.dot(mu, llr))
    var = float(np.dot(mu, (llr - mean) ** 2))
    return psi, mean, max(var, 0.0)


def classical_tilted(p: np.ndarray, q: np.ndarray, alpha: float) -> np.ndarray:
    """Normalized p^alpha q^(1-alpha) on the common support, zero elsewhere."""
    mask = (p > 0) & (q > 0)
    if not np.any(mask):
        raise SupportMismatch("Tilted weight needs intersecting supports")
    log_terms = np.full(p.shape, -np.inf)
    log_terms[mask] = alpha * np.log(p[mask]) + (1.0 - alpha) * np.log(q[mask])
    mu = np.exp(log_terms - logsumexp(log_terms[mask]))
    mu[~mask] = 0.0
    return mu


def classical_rel_entropy(p: np.ndarray, q: np.ndarray) -> ExtReal:
    if not classical_support_contained(p, q):
        return INF
    mask = p > 0
    return float(np.sum(p[mask] * (np.log(p[mask]) - np.log(q[mask]))))


def classical_max_rel_entropy(p: np.ndarray, q: np.ndarray) -> ExtReal:
    if not classical_support_contained(p, q):
        return INF
    mask = p > 0
    if not np.any(mask):
        return -INF
    return float(np.max(np.log(p[mask]) - np.log(q[mask])))


# ---------------------------------------------------------------------------
# Quantum primitives
# ---------------------------------------------------------------------------


def _petz_trace(rho: np.ndarray, sigma: np.ndarray, alpha: float, eps_supp: float) -> float:
    return _trace_real(powm(rho, alpha, eps_supp) @ powm(sigma, 1.0 - alpha, eps_supp))


def _sandwiched_log_trace(rho: np.ndarray, sigma: np.ndarray, alpha: float, eps_supp: float) -> ExtReal:
    rho_half = powm(rho, 0.5, eps_supp)
    sigma_pow = powm(sigma, (1.0 - alpha) / alpha, eps_supp)
    inner = rho_half @ sigma_pow @ rho_half
    inner = (inner + inner.conj().T) / 2
    w, _ = eig_herm(inner)
    w = w[w > 0]
    if w.size == 0:
        return -INF
    return float(logsumexp(alpha * np.log(w)))


def _quantum_max_rel_entropy(rho: np.ndarray, sigma: np.ndarray, eps_supp: float) -> ExtReal:
    ps = support_projection(sigma, eps_supp)
    if not ps.contains(support_projection(rho, eps_supp), tol=SUPPORT_TOL):
        return INF
    u = ps.basis
    sigma_r = u.conj().T @ sigma @ u
    rho_r = u.conj().T @ rho @ u
    s_ihalf = powm(sigma_r, -0.5, 0.0)
    w, _ = eig_herm(s_ihalf @ rho_r @ s_ihalf)
    return _safe_log(float(w[-1]))


# ---------------------------------------------------------------------------
# Public divergences
# ---------------------------------------------------------------------------


def rel_entropy(rho: Any, sigma: Any, eps_supp: float = EPS_SUPP) -> ExtReal:
    """
    Umegaki relative entropy Tr rho (log rho - log sigma), +inf unless supp rho is inside supp sigma.

    sigma may be subnormalized (for example a geometric mean of two states).
    """
    kind, a, b = coerce_pair(rho, sigma)
    if kind == "classical":
        return classical_rel_entropy(a, b)
    if not quantum_support_contained(a, b, eps_supp):
        return INF
    return _trace_real(a @ (logn(a, eps_supp) - logn(b, eps_supp)))


def psi_eval(rho: Any, sigma: Any, alpha: float, family: str = PETZ, eps_supp: float = EPS_SUPP) -> ExtReal:
    """
    psi(rho||sigma|alpha) = log Q_alpha, so that the Renyi divergence is psi / (alpha - 1).

    Args:
        rho: First state.
        sigma: Second (PSD, possibly subnormalized) argument.
        alpha: Order. petz: [0, 1] for quantum input, any real for classical.
            sandwiched: alpha >= 1.
        family: "petz" or "sandwiched".

    Returns:
        ExtReal: -inf for orthogonal supports (petz); +inf for sandwiched
        orders above 1 when supp rho is not inside supp sigma.
    """
    if family not in FAMILIES:
        raise UserInputError(f"Unknown psi family {family!r}")
    kind, a, b = coerce_pair(rho, sigma)
    if not math.isfinite(alpha):
        raise OutOfRange(f"psi is evaluated at finite orders only, got {alpha}")

    if kind == "classical":
        if family == SANDWICHED:
            if alpha < 1.0:
                raise OutOfRange(f"Sandwiched psi needs alpha >= 1, got {alpha}")
            if alpha > 1.0 and not classical_support_contained(a, b):
                return INF
        return classical_psi(a, b, alpha)

    if family == PETZ:
        if not 0.0 <= alpha <= 1.0:
            raise OutOfRange(f"Quantum Petz psi needs alpha in [0, 1], got {alpha}")
        if supports_orthogonal(a, b, eps_supp):
            return -INF
        return _safe_log(_petz_trace(a, b, alpha, eps_supp))

    if alpha < 1.0:
        raise OutOfRange(f"Sandwiched psi needs alpha >= 1, got {alpha}")
    if alpha == 1.0:
        return _safe_log(_petz_trace(a, b, 1.0, eps_supp))
    if not quantum_support_contained(a, b, eps_supp):
        return INF
    return _sandwiched_log_trace(a, b, alpha, eps_supp)


def psi_tilde_eval(rho: Any, sigma: Any, u: float, family: str = PETZ, eps_supp: float = EPS_SUPP) -> ExtReal:
    """
    Reparametrized cumulant psi~(u) = (1 - u) psi(1 / (1 - u)).

    u = 1 is the closed-form limit D_infinity. Allowed ranges: classical
    u < 1 (petz) or [0, 1] (sandwiched); quantum petz u <= 0; quantum
    sandwiched u in [0, 1].
    """
    if u > 1.0:
        raise OutOfRange(f"psi~ is defined for u <= 1, got {u}")
    kind, a, b = coerce_pair(rho, sigma)
    if family == SANDWICHED and u < 0.0:
        raise OutOfRange(f"Sandwiched psi~ needs u in [0, 1], got {u}")
    if kind == "quantum" and family == PETZ and u > 0.0:
        raise OutOfRange(f"Quantum Petz psi~ needs u <= 0, got {u}")
    if u == 1.0:
        return max_rel_entropy(a, b, eps_supp)
    value = psi_eval(a, b, 1.0 / (1.0 - u), family, eps_supp)
    if math.isinf(value):
        return value
    return (1.0 - u) * value


def petz_renyi(rho: Any, sigma: Any, alpha: float, eps_supp: float = EPS_SUPP) -> ExtReal:
    """Petz Renyi divergence for alpha in [0, 1); +inf iff the supports are orthogonal."""
    if not 0.0 <= alpha < 1.0:
        raise OutOfRange(f"Petz Renyi divergence needs alpha in [0, 1), got {alpha}")
    psi = psi_eval(rho, sigma, alpha, PETZ, eps_supp)
    if psi == -INF:
        return INF
    return psi / (alpha - 1.0)


def max_rel_entropy(rho: Any, sigma: Any, eps_supp: float = EPS_SUPP) -> ExtReal:
    """inf{lambda : rho <= e^lambda sigma}; +inf unless supp rho is inside supp sigma."""
    kind, a, b = coerce_pair(rho, sigma)
    if kind == "classical":
        return classical_max_rel_entropy(a, b)
    return _quantum_max_rel_entropy(a, b, eps_supp)


def sandwiched_renyi(rho: Any, sigma: Any, alpha: float, eps_supp: float = EPS_SUPP) -> ExtReal:
    """Sandwiched Renyi divergence for alpha in (1, inf]; alpha = inf is max_rel_entropy."""
    if math.isinf(alpha) and alpha > 0:
        return max_rel_entropy(rho, sigma, eps_supp)
    if not alpha > 1.0:
        raise OutOfRange(f"Sandwiched Renyi divergence needs alpha > 1, got {alpha}")
    psi = psi_eval(rho, sigma, alpha, SANDWICHED, eps_supp)
    if math.isinf(psi):
        return psi
    return psi / (alpha - 1.0)


def _check_normalized(m: np.ndarray, what: str) -> None:
    trace = _trace_real(m)
    if abs(trace - 1.0) > TRACE_TOL:
        raise UserInputError(f"{what} must be normalized, trace is {trace:.12g}")


def log_euclidean_renyi(rho: Any, sigma: Any, alpha: float) -> float:
    """(1/(alpha-1)) log Tr exp(alpha log rho + (1-alpha) log sigma) for positive definite inputs."""
    if not 0.0 < alpha < 1.0:
        raise OutOfRange(f"Log-Euclidean Renyi divergence needs alpha in (0, 1), got {alpha}")
    _, a, b = coerce_pair(rho, sigma)
    a, b = as_matrix(a), as_matrix(b)
    try:
        require_pd(a, "rho")
        require_pd(b, "sigma")
    except NotPD as e:
        raise NotPD(f"Log-Euclidean Renyi divergence: {e}")
    _check_normalized(a, "rho")
    exponent = alpha * logn(a) + (1.0 - alpha) * logn(b)
    return math.log(_trace_real(expm_herm(exponent))) / (alpha - 1.0)


def maximal_renyi(rho: Any, sigma: Any, alpha: float) -> float:
    """(1/(alpha-1)) log Tr sigma #_alpha rho; needs definite inputs or equal supports."""
    if not 0.0 < alpha < 1.0:
        raise OutOfRange(f"Maximal Renyi divergence needs alpha in (0, 1), got {alpha}")
    _, a, b = coerce_pair(rho, sigma)
    a, b = as_matrix(a), as_matrix(b)
    _check_normalized(a, "rho")
    mean = geometric_mean(a, b, alpha)
    return math.log(_trace_real(mean)) / (alpha - 1.0)


def d0(rho: Any, sigma: Any, eps_supp: float = EPS_SUPP) -> ExtReal:
    """D_0 = -psi(0) = -log Tr rho0 sigma."""
    return petz_renyi(rho, sigma, 0.0, eps_supp)


__all__ = [
    "FAMILIES",
    "PETZ",
    "SANDWICHED",
    "classical_psi",
    "classical_psi_derivatives",
    "classical_tilted",
    "d0",
    "log_euclidean_renyi",
    "max_rel_entropy",
    "maximal_renyi",
    "petz_renyi",
    "psi_eval",
    "psi_tilde_eval",
    "rel_entropy",
    "sandwiched_renyi",
    "support_contained",
    "supports_orthogonal",
]
