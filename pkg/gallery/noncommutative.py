"""
Quantum constructions where the composite Stein, direct and Chernoff
exponents fall strictly below the worst pairwise exponents.

Everything is built from a pair of non-commuting invertible densities
sigma1, sigma2 through
    diff(A, B) = log(A # B) - (log A + log B) / 2,   delta = lambda_max(diff),
the block doubling
    rho^ = (rho + rho)/2,  sigma1^ = (sigma1 + sigma2)/2,  sigma2^ = (sigma2 + sigma1)/2,
and the four-parameter family on H + H + C + C
    rho_{l,e}     = e l rho^ + e(1-l) + (1-e)
    sigma_{j,m,v} = v m sigma_j^ + v(1-m) + (1-v).
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from core.extreal import ExtReal
from core.utils import CommutingInput, OutOfRange, ScanFailed
from divergence.chernoff import chernoff
from divergence.renyi import rel_entropy
from gallery.report import CounterexampleReport
from hermcore.linalg import (
    commutator_norm,
    direct_sum,
    eig_herm,
    geometric_mean,
    logn,
    require_pd,
)
from hermcore.operators import as_matrix
from tradeoff.hoeffding import hoeffding
from tradeoff.legendre import d2, solve_d2

logger = logging.getLogger(__name__)

IDENTITY_TOL = 1e-8
CLOSED_FORM_TOL = 1e-9
COMMUTING_TOL = 1e-10
SCAN_DEPTH = 40
SCAN_SLACK = 1e-6


def minimal_triple() -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The smallest instance: rho pure on (1, -1)/sqrt 2 and two qubit densities with overlap."""
    rho = 0.5 * np.array([[1.0, -1.0], [-1.0, 1.0]], dtype=complex)
    sigma1 = 0.25 * np.array([[3.0, 1.0], [1.0, 1.0]], dtype=complex)
    sigma2 = 0.25 * np.array([[1.0, 1.0], [1.0, 3.0]], dtype=complex)
    return rho, sigma1, sigma2


def _trace_real(m: np.ndarray) -> float:
    return float(np.real(np.trace(m)))


def diff_delta(A: Any, B: Any) -> Tuple[np.ndarray, float]:
    """
    diff(A, B) and its largest eigenvalue.

    Tr diff = 0 since det(A # B) = sqrt(det A det B), so delta >= 0, with
    delta = 0 exactly when A and B commute.

    Raises:
        NotPD: A or B is singular.
    """
    a = require_pd(A, "A")
    b = require_pd(B, "B")
    g = geometric_mean(a, b, 0.5)
    diff = logn(g) - 0.5 * (logn(a) + logn(b))
    diff = (diff + diff.conj().T) / 2
    tr = _trace_real(diff)
    if abs(tr) > IDENTITY_TOL:
        logger.warning(f"Tr diff = {tr:.3e} is not zero")
    delta = max(float(eig_herm(diff)[0][-1]), 0.0)
    return diff, delta


def top_eigenvector_state(H: np.ndarray) -> np.ndarray:
    _, v = eig_herm(H)
    top = v[:, -1]
    return np.outer(top, top.conj())


def invertible_rho_half_delta(sigma1: Any, sigma2: Any) -> Tuple[np.ndarray, float]:
    """
    An invertible density rho with Tr rho diff(sigma1, sigma2) = delta / 2.

    Bisects along rho_t = (1 - t)|v><v| + t I/d from the top eigenvector v of diff.

    Returns:
        (rho, t): the state and the mixing weight found.
    """
    diff, delta = diff_delta(sigma1, sigma2)
    if delta <= 0.0:
        raise CommutingInput("sigma1 and sigma2 commute; delta is zero")
    top = top_eigenvector_state(diff)
    d = diff.shape[0]
    mixed = np.eye(d, dtype=complex) / d

    def state(t: float) -> np.ndarray:
        return (1.0 - t) * top + t * mixed

    t = brentq(lambda t: _trace_real(state(t) @ diff) - 0.5 * delta, 0.0, 1.0, xtol=1e-15)
    return state(t), float(t)


def hat_triple(rho: Any, sigma1: Any, sigma2: Any) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Doubled states rho^ = (rho + rho)/2, sigma1^ = (sigma1 + sigma2)/2, sigma2^ = (sigma2 + sigma1)/2.

    The swap of the two blocks exchanges sigma1^ and sigma2^ and fixes rho^,
    so Tr rho^ log sigma1^ = Tr rho^ log sigma2^.

    Raises:
        NotPD: sigma1 or sigma2 is singular.
    """
    r = as_matrix(rho)
    s1 = require_pd(sigma1, "sigma1")
    s2 = require_pd(sigma2, "sigma2")
    rho_hat = 0.5 * direct_sum(r, r)
    s1_hat = 0.5 * direct_sum(s1, s2)
    s2_hat = 0.5 * direct_sum(s2, s1)
    cross1 = _trace_real(rho_hat @ logn(s1_hat))
    cross2 = _trace_real(rho_hat @ logn(s2_hat))
    if abs(cross1 - cross2) > IDENTITY_TOL:
        logger.warning(f"Doubled states are not swap-symmetric: {cross1:.12g} vs {cross2:.12g}")
    return rho_hat, s1_hat, s2_hat


def stein_gap_report(rho: Optional[Any], sigma1: Any, sigma2: Any) -> CounterexampleReport:
    """
    D(rho^ || sigma_j^) - D(rho^ || sigma1^ # sigma2^) against Tr rho diff(sigma1, sigma2).

    With rho = None the top eigenvector of diff is used and the gap equals delta.
    """
    logger.debug("[stein_gap_report] Invoked.")
    diff, delta = diff_delta(sigma1, sigma2)
    default_rho = rho is None
    r = top_eigenvector_state(diff) if default_rho else as_matrix(rho)
    rho_hat, s1_hat, s2_hat = hat_triple(r, sigma1, sigma2)
    g_hat = geometric_mean(s1_hat, s2_hat, 0.5)

    rep = CounterexampleReport(name="stein_gap", parameters={"rho": "top_eigenvector" if default_rho else "given"})
    d1 = rep.value("D_rho_sigma1", rel_entropy(rho_hat, s1_hat))
    d2_ = rep.value("D_rho_sigma2", rel_entropy(rho_hat, s2_hat))
    dg = rep.value("D_rho_geommean", rel_entropy(rho_hat, g_hat))
    gap = rep.value("gap", min(d1, d2_) - dg)
    tr = rep.value("trace_rho_diff", _trace_real(r @ diff))
    rep.value("two_trace_rho_diff", 2.0 * tr)
    rep.value("delta", delta)

    rep.check("swap_symmetry", d1, "==", d2_, IDENTITY_TOL)
    rep.check("gap_identity", gap, "==", tr, IDENTITY_TOL)
    if default_rho:
        rep.check("gap_nonnegative", gap, ">=", 0.0, IDENTITY_TOL)
        rep.check("gap_equals_delta", gap, "==", delta, IDENTITY_TOL)
    else:
        rep.notes.append("gap sign depends on rho; only the identity is asserted")
    return rep


@dataclass(frozen=True, eq=False)
class ParamFamily:
    lam: float
    eta: float
    mu: float
    nu: float
    rho_le: np.ndarray
    sigma1_mn: np.ndarray
    sigma2_mn: np.ndarray
    geommean: np.ndarray
    hat_rel_entropies: Tuple[ExtReal, ExtReal, ExtReal]

    def closed_form(self, j: int) -> ExtReal:
        """l e D(rho^ || sigma_j^) + e d2(l || m) + d2(e || v); j = 0 is the geometric mean."""
        base = self.hat_rel_entropies[j]
        lead = self.lam * self.eta * base if self.lam * self.eta > 0 else 0.0
        return lead + self.eta * d2(self.lam, self.mu) + d2(self.eta, self.nu)

    def sigma(self, j: int) -> np.ndarray:
        return {0: self.geommean, 1: self.sigma1_mn, 2: self.sigma2_mn}[j]


def _check_unit(name: str, x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise OutOfRange(f"{name} must lie in [0, 1], got {x}")


def param_family(
    rho: Any, sigma1: Any, sigma2: Any, lam: float, eta: float, mu: float, nu: float
) -> ParamFamily:
    """
    rho_{lam,eta}, sigma_{j,mu,nu} and the closed-form geometric mean
    nu mu (sigma1^ # sigma2^) + nu(1-mu) + (1-nu).

    Raises:
        OutOfRange: a parameter outside [0, 1].
    """
    for name, x in (("lambda", lam), ("eta", eta), ("mu", mu), ("nu", nu)):
        _check_unit(name, x)
    rho_hat, s1_hat, s2_hat = hat_triple(rho, sigma1, sigma2)
    g_hat = geometric_mean(s1_hat, s2_hat, 0.5)

    def block(scale: float, top: np.ndarray, a: float, b: float) -> np.ndarray:
        return direct_sum(scale * top, a, b)

    return ParamFamily(
        lam=lam,
        eta=eta,
        mu=mu,
        nu=nu,
        rho_le=block(eta * lam, rho_hat, eta * (1.0 - lam), 1.0 - eta),
        sigma1_mn=block(nu * mu, s1_hat, nu * (1.0 - mu), 1.0 - nu),
        sigma2_mn=block(nu * mu, s2_hat, nu * (1.0 - mu), 1.0 - nu),
        geommean=block(nu * mu, g_hat, nu * (1.0 - mu), 1.0 - nu),
        hat_rel_entropies=(
            rel_entropy(rho_hat, g_hat),
            rel_entropy(rho_hat, s1_hat),
            rel_entropy(rho_hat, s2_hat),
        ),
    )


def param_family_report(
    rho: Any, sigma1: Any, sigma2: Any, lam: float, eta: float, mu: float, nu: float
) -> CounterexampleReport:
    """Closed forms against direct evaluation for one parameter point."""
    fam = param_family(rho, sigma1, sigma2, lam, eta, mu, nu)
    rep = CounterexampleReport(
        name="param_family", parameters={"lambda": lam, "eta": eta, "mu": mu, "nu": nu}
    )
    for j, label in ((0, "geommean"), (1, "sigma1"), (2, "sigma2")):
        direct = rep.value(f"D_{label}", rel_entropy(fam.rho_le, fam.sigma(j)))
        closed = rep.value(f"D_{label}_closed_form", fam.closed_form(j))
        rep.check(f"closed_form_{label}", direct, "==", closed, CLOSED_FORM_TOL)
    numeric_g = geometric_mean(fam.sigma1_mn, fam.sigma2_mn, 0.5)
    err = float(np.max(np.abs(numeric_g - fam.geommean)))
    rep.check("geommean_closed_form", err, "<=", 0.0, CLOSED_FORM_TOL)
    return rep


def _require_noncommuting(sigma1: Any, sigma2: Any) -> None:
    a, b = as_matrix(sigma1), as_matrix(sigma2)
    scale = max(float(np.linalg.norm(a, 2)), float(np.linalg.norm(b, 2)))
    if commutator_norm(a, b) <= COMMUTING_TOL * scale * scale:
        raise CommutingInput("sigma1 and sigma2 commute; no separation is possible")


@dataclass(frozen=True)
class SteinTuning:
    lam: float
    mu: float
    r0: float
    gap: float


def _stein_tuning(rho_hat: np.ndarray, s1_hat: np.ndarray, s2_hat: np.ndarray, r: float, lam_fraction: float) -> SteinTuning:
    if r <= 0:
        raise OutOfRange(f"Rate must be positive, got {r}")
    if not 0.0 < lam_fraction < 1.0:
        raise OutOfRange(f"lambda fraction must lie in (0, 1), got {lam_fraction}")
    g_hat = geometric_mean(s1_hat, s2_hat, 0.5)
    r0 = rel_entropy(rho_hat, g_hat)
    gap = min(rel_entropy(rho_hat, s1_hat), rel_entropy(rho_hat, s2_hat)) - r0
    lam = lam_fraction * min(1.0, r / r0)
    mu = solve_d2(lam, r - lam * r0)
    return SteinTuning(lam=lam, mu=mu, r0=r0, gap=gap)


def tune_stein_example(
    rho: Optional[Any], sigma1: Any, sigma2: Any, r: float, lam_fraction: float = 0.5
) -> CounterexampleReport:
    """
    States with composite Stein exponent at most r while every pairwise one is r + lambda delta.

    lambda = lam_fraction * min(1, r / D(rho^ || sigma1^ # sigma2^)) and mu is the
    root of d2(lambda || mu) = r - lambda D(rho^ || sigma1^ # sigma2^).

    Raises:
        CommutingInput: sigma1 and sigma2 commute.
    """
    logger.debug(f"[tune_stein_example] Invoked. r={r}")
    _require_noncommuting(sigma1, sigma2)
    diff, _ = diff_delta(sigma1, sigma2)
    r_state = top_eigenvector_state(diff) if rho is None else as_matrix(rho)
    rho_hat, s1_hat, s2_hat = hat_triple(r_state, sigma1, sigma2)
    tun = _stein_tuning(rho_hat, s1_hat, s2_hat, r, lam_fraction)
    fam = param_family(r_state, sigma1, sigma2, tun.lam, 1.0, tun.mu, 1.0)

    rep = CounterexampleReport(name="stein_example", parameters={"r": r, "lambda_fraction": lam_fraction})
    rep.value("lambda", tun.lam)
    rep.value("mu", tun.mu)
    rep.value("r0", tun.r0)
    rep.value("gap", tun.gap)
    dg = rep.value("D_geommean", rel_entropy(fam.rho_le, fam.geommean))
    d_pair = [rep.value(f"D_sigma{j}", rel_entropy(fam.rho_le, fam.sigma(j))) for j in (1, 2)]

    rep.check("composite_bound_equals_r", dg, "==", r, IDENTITY_TOL)
    for j, dj in zip((1, 2), d_pair):
        rep.check(f"pairwise_sigma{j}", dj, "==", r + tun.lam * tun.gap, IDENTITY_TOL)
    rep.check("strict_separation", min(d_pair), ">", r, IDENTITY_TOL)
    return rep


def _family_hoeffding(fam: ParamFamily, r: float) -> Tuple[ExtReal, ExtReal]:
    hg = hoeffding(fam.rho_le, fam.geommean, r)
    hs = min(hoeffding(fam.rho_le, fam.sigma1_mn, r), hoeffding(fam.rho_le, fam.sigma2_mn, r))
    return hg, hs


def tune_direct_example(
    rho: Optional[Any],
    sigma1: Any,
    sigma2: Any,
    r: float,
    t: float,
    s: float = 0.25,
    lam_fraction: float = 0.5,
) -> CounterexampleReport:
    """
    States whose composite direct exponent at rate r is below t while every
    pairwise one exceeds t + 2 kappa / 3.

    kappa = H_r(rho_{l,1} || sigma_{j,m,1}), eta = exp(s kappa - t), and nu runs
    over 1 - 2^-j for j = 1..40 until both strict inequalities hold with slack
    at least 1e-6. As nu -> 1 the two exponents tend to t - s kappa and
    t + (1 - s) kappa.

    Raises:
        CommutingInput: sigma1 and sigma2 commute.
        OutOfRange: s outside (0, 1/3) or t <= 0.
        ScanFailed: no nu on the grid satisfied both inequalities.
    """
    logger.debug(f"[tune_direct_example] Invoked. r={r}, t={t}, s={s}")
    if not 0.0 < s < 1.0 / 3.0:
        raise OutOfRange(f"s must lie in (0, 1/3), got {s}")
    if t <= 0:
        raise OutOfRange(f"t must be positive, got {t}")
    _require_noncommuting(sigma1, sigma2)
    diff, _ = diff_delta(sigma1, sigma2)
    r_state = top_eigenvector_state(diff) if rho is None else as_matrix(rho)
    rho_hat, s1_hat, s2_hat = hat_triple(r_state, sigma1, sigma2)
    tun = _stein_tuning(rho_hat, s1_hat, s2_hat, r, lam_fraction)

    base = param_family(r_state, sigma1, sigma2, tun.lam, 1.0, tun.mu, 1.0)
    kappa = min(hoeffding(base.rho_le, base.sigma1_mn, r), hoeffding(base.rho_le, base.sigma2_mn, r))
    if not kappa > 0:
        raise ScanFailed(f"kappa = {kappa} is not positive", trace=[])
    notes = []
    if s * kappa >= t:
        s_eff = 0.5 * t / kappa
        notes.append(f"s lowered from {s:g} to {s_eff:.6g} so that eta < 1")
        s = s_eff
    eta = math.exp(s * kappa - t)
    target_hi = t + 2.0 * kappa / 3.0

    trace: List[dict] = []
    found = None
    for j in range(1, SCAN_DEPTH + 1):
        nu = 1.0 - 2.0 ** (-j)
        fam = param_family(r_state, sigma1, sigma2, tun.lam, eta, tun.mu, nu)
        hg, hs = _family_hoeffding(fam, r)
        trace.append({"j": j, "nu": nu, "H_geommean": hg, "H_pairwise": hs})
        if t - hg >= SCAN_SLACK and hs - target_hi >= SCAN_SLACK:
            found = (j, nu, fam, hg, hs)
            break
    if found is None:
        raise ScanFailed(f"No nu = 1 - 2^-j (j <= {SCAN_DEPTH}) separates the exponents", trace=trace)
    j, nu, fam, hg, hs = found
    logger.info(f"Direct-exponent separation found at nu = 1 - 2^-{j}")

    rep = CounterexampleReport(
        name="direct_example", parameters={"r": r, "t": t, "s": s, "lambda_fraction": lam_fraction}
    )
    for key, val in (
        ("lambda", tun.lam), ("mu", tun.mu), ("eta", eta), ("nu", nu), ("kappa", kappa),
        ("scan_steps", j), ("limit_geommean", t - s * kappa), ("limit_pairwise", t + (1.0 - s) * kappa),
        ("H_geommean", hg), ("H_pairwise", hs),
    ):
        rep.value(key, val)
    rep.values["scan_trace"] = trace
    rep.notes.extend(notes)
    rep.check("composite_below_t", hg, "<", t, SCAN_SLACK / 2)
    rep.check("pairwise_above_t_plus", hs, ">", target_hi, SCAN_SLACK / 2)

    swapped = min(hoeffding(fam.sigma1_mn, fam.rho_le, t), hoeffding(fam.sigma2_mn, fam.rho_le, t))
    rep.value("H_swapped", swapped)
    rep.check("swapped_pairwise_at_least_r", swapped, ">=", r, IDENTITY_TOL)

    if abs(t - r) <= 1e-15 * max(1.0, r):
        c_comp = rep.value("chernoff_geommean", chernoff(fam.rho_le, fam.geommean))
        c_pair = rep.value(
            "chernoff_pairwise",
            min(chernoff(fam.rho_le, fam.sigma1_mn), chernoff(fam.rho_le, fam.sigma2_mn)),
        )
        rep.check("chernoff_composite_at_most_r", c_comp, "<=", r, IDENTITY_TOL)
        rep.check("chernoff_pairwise_above_r", c_pair, ">", r, 0.0)
        if r_state.shape[0] == 2:
            rep.notes.append(
                "symmetric separation directly on the 2x2 states (tens of tensor powers) is not evaluated"
            )
    return rep
