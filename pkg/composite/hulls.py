"""
Minimization of the Hoeffding divergence over convex hulls of classical sets.

The objective F(w, v) = H_r(sum w_i rho_i || sum v_j sigma_j) is convex on
the product of simplices. It is minimized by away-step Frank-Wolfe with an
exact line search; the gradient comes from the envelope theorem at the
optimal alpha of the current pair:
    dF/drho(x)   = -rho^(alpha-1) sigma^(1-alpha) / Q
    dF/dsigma(x) = -((1-alpha)/alpha) rho^alpha sigma^(-alpha) / Q
with Q = sum rho^alpha sigma^(1-alpha).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from core.extreal import ExtReal
from core.utils import CertificateFailed, KindMismatch, OutOfRange
from composite.sets import HypothesisSet, smooth_set
from divergence.renyi import classical_psi, classical_psi_derivatives
from tradeoff.hoeffding import hoeffding_optimizer

logger = logging.getLogger(__name__)

DEFAULT_THETA = 1e-6
CERTIFICATE_TOL = 1e-8


@dataclass(frozen=True)
class SolverConfig:
    max_iters: int = 5000
    gap_tol: float = 1e-9
    line_xatol: float = 1e-13
    theta: Optional[float] = None


@dataclass(frozen=True, eq=False)
class MinimizerPair:
    """Minimizing mixtures of the (possibly smoothed) hulls."""

    rho_weights: np.ndarray
    sigma_weights: np.ndarray
    rho_star: np.ndarray
    sigma_star: np.ndarray
    value: ExtReal
    alpha_star: float
    c_star: float
    r: float
    theta: float
    iterations: int
    gap: float
    converged: bool

    def to_dict(self) -> dict:
        return {
            "rho_weights": self.rho_weights.tolist(),
            "sigma_weights": self.sigma_weights.tolist(),
            "rho_star": self.rho_star.tolist(),
            "sigma_star": self.sigma_star.tolist(),
            "value": self.value,
            "alpha_star": self.alpha_star,
            "c_star": self.c_star,
            "r": self.r,
            "theta": self.theta,
            "iterations": self.iterations,
            "gap": self.gap,
            "converged": self.converged,
        }


def _prepare(R: HypothesisSet, S: HypothesisSet, theta: Optional[float]) -> Tuple[HypothesisSet, HypothesisSet, float]:
    if R.kind != "classical" or S.kind != "classical":
        raise KindMismatch("Hull minimization is implemented for classical sets only")
    if theta is None:
        theta = 0.0 if (R.full_support() and S.full_support()) else DEFAULT_THETA
    if theta > 0.0:
        logger.info(f"Smoothing hypothesis sets with theta={theta:g}")
    return smooth_set(R, theta), smooth_set(S, theta), theta


def _gradients(p: np.ndarray, q: np.ndarray, alpha: float) -> Tuple[np.ndarray, np.ndarray]:
    log_terms = alpha * np.log(p) + (1.0 - alpha) * np.log(q)
    log_q = classical_psi(p, q, alpha)
    grad_p = -np.exp(log_terms - np.log(p) - log_q)
    grad_q = -((1.0 - alpha) / alpha) * np.exp(log_terms - np.log(q) - log_q)
    return grad_p, grad_q


def minimize_Hr_over_hulls(
    R: HypothesisSet,
    S: HypothesisSet,
    r: float,
    solver_cfg: Optional[SolverConfig] = None,
) -> MinimizerPair:
    """
    Minimize H_r over co(R) x co(S) for classical generator sets.

    Args:
        R: Null hypothesis generators.
        S: Alternative hypothesis generators.
        r: Type-II rate (> 0).
        solver_cfg: Iteration cap, gap tolerance and smoothing weight
            (None smooths with 1e-6 only when some generator lacks full support).

    Returns:
        MinimizerPair: best iterate; `converged` is False when max_iters was hit.
    """
    cfg = solver_cfg or SolverConfig()
    if r <= 0:
        raise OutOfRange(f"Rate must be positive, got {r}")
    Rs, Ss, theta = _prepare(R, S, cfg.theta)
    rho_mat = np.vstack(Rs.states)
    sigma_mat = np.vstack(Ss.states)
    nr, ns = len(Rs), len(Ss)
    w = np.full(nr, 1.0 / nr)
    v = np.full(ns, 1.0 / ns)

    def objective(wv: Tuple[np.ndarray, np.ndarray]) -> Tuple[float, float]:
        return hoeffding_optimizer(wv[0] @ rho_mat, wv[1] @ sigma_mat, r)

    value, alpha = objective((w, v))
    gap = math.inf
    converged = False
    it = 0
    for it in range(1, cfg.max_iters + 1):
        p, q = w @ rho_mat, v @ sigma_mat
        gp, gq = _gradients(p, q, alpha)
        gw, gv = rho_mat @ gp, sigma_mat @ gq

        # Frank-Wolfe vertex and gap
        i_fw, j_fw = int(np.argmin(gw)), int(np.argmin(gv))
        gap = float(w @ gw - gw[i_fw] + v @ gv - gv[j_fw])
        if gap < cfg.gap_tol:
            converged = True
            break

        # Away vertex among active atoms
        act_w, act_v = np.flatnonzero(w > 0), np.flatnonzero(v > 0)
        i_aw = int(act_w[np.argmax(gw[act_w])])
        j_aw = int(act_v[np.argmax(gv[act_v])])
        away_gain = float(gw[i_aw] - w @ gw + gv[j_aw] - v @ gv)

        if gap >= away_gain:
            dw, dv = -w.copy(), -v.copy()
            dw[i_fw] += 1.0
            dv[j_fw] += 1.0
            step_max = 1.0
        else:
            dw, dv = w.copy(), v.copy()
            dw[i_aw] -= 1.0
            dv[j_aw] -= 1.0
            ratios = [w[i_aw] / (1.0 - w[i_aw]) if w[i_aw] < 1.0 else math.inf,
                      v[j_aw] / (1.0 - v[j_aw]) if v[j_aw] < 1.0 else math.inf]
            step_max = min(ratios)
            if not math.isfinite(step_max):
                step_max = 1.0

        res = minimize_scalar(
            lambda g: objective((w + g * dw, v + g * dv))[0],
            bounds=(0.0, step_max),
            method="bounded",
            options={"xatol": cfg.line_xatol},
        )
        step = float(res.x)
        # bounded search never lands exactly on the boundary; snap drop steps
        if step_max - step < 10 * cfg.line_xatol:
            step = step_max
        new_w = np.clip(w + step * dw, 0.0, None)
        new_v = np.clip(v + step * dv, 0.0, None)
        new_w /= new_w.sum()
        new_v /= new_v.sum()
        new_value, new_alpha = objective((new_w, new_v))
        if new_value > value + 1e-15:
            logger.debug(f"Line search did not improve at iteration {it}; stopping")
            break
        w, v, value, alpha = new_w, new_v, new_value, new_alpha

    if converged:
        logger.info(f"Frank-Wolfe converged after {it} iterations, gap {gap:.3e}")
    else:
        logger.warning(f"Hull minimizer stopped after {it} iterations with gap {gap:.3e}")

    p, q = w @ rho_mat, v @ sigma_mat
    c_star = classical_psi_derivatives(p, q, alpha)[1]
    return MinimizerPair(
        rho_weights=w,
        sigma_weights=v,
        rho_star=p,
        sigma_star=q,
        value=value,
        alpha_star=alpha,
        c_star=c_star,
        r=r,
        theta=theta,
        iterations=it,
        gap=gap,
        converged=converged,
    )


@dataclass
class CertificateReport:
    alpha: float
    q_value: float
    rho_slacks: List[float]
    sigma_slacks: List[float]
    degenerate: bool
    passed: bool
    tol: float = CERTIFICATE_TOL
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "Q": self.q_value,
            "rho_slacks": self.rho_slacks,
            "sigma_slacks": self.sigma_slacks,
            "degenerate": self.degenerate,
            "pass": self.passed,
            "tol": self.tol,
            "notes": self.notes,
        }


def optimality_certificate(
    pair: MinimizerPair,
    R: HypothesisSet,
    S: HypothesisSet,
    tol: float = CERTIFICATE_TOL,
    raise_on_failure: bool = True,
) -> CertificateReport:
    """
    Check the first-order conditions of a hull minimizer against every generator.

    For rho_i in R:   sum rho_i (sigma*/rho*)^(1-a) <= sum rho* (sigma*/rho*)^(1-a)
    For sigma_j in S: sum sigma_j (rho*/sigma*)^a  <= sum sigma* (rho*/sigma*)^a
    where the right-hand sides both equal Q = sum rho*^a sigma*^(1-a). Generators
    are smoothed with the pair's theta before the check.

    Raises:
        CertificateFailed: when some slack is below -tol (and raise_on_failure).
    """
    Rs, Ss, _ = _prepare(R, S, pair.theta)
    p, q, a = pair.rho_star, pair.sigma_star, pair.alpha_star
    if np.any(p <= 0) or np.any(q <= 0):
        raise OutOfRange("Certificate needs a full-support minimizer")
    ratio_r = (q / p) ** (1.0 - a)
    ratio_s = (p / q) ** a
    q_value = float(np.sum(p**a * q ** (1.0 - a)))
    rho_slacks = [float(q_value - np.dot(g, ratio_r)) for g in Rs.states]
    degenerate = a >= 1.0
    notes = []
    if degenerate:
        notes.append("H_r = 0 at the minimizer; sigma-side condition is vacuous")
        sigma_slacks: List[float] = []
    else:
        sigma_slacks = [float(q_value - np.dot(g, ratio_s)) for g in Ss.states]

    worst = None
    for label, slacks in (("R", rho_slacks), ("S", sigma_slacks)):
        for idx, s in enumerate(slacks):
            if worst is None or s < worst[1]:
                worst = (f"{label}[{idx}]", s)
    passed = worst is None or worst[1] >= -tol
    report = CertificateReport(
        alpha=a,
        q_value=q_value,
        rho_slacks=rho_slacks,
        sigma_slacks=sigma_slacks,
        degenerate=degenerate,
        passed=passed,
        tol=tol,
        notes=notes,
    )
    if not passed and raise_on_failure:
        raise CertificateFailed("Optimality certificate violated", generator=worst[0], slack=worst[1])
    return report
