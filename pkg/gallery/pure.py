"""
Finite families of pure states.

Null hypotheses psi_i, alternatives phi_j. The test projecting onto
span{psi_i^{(x)n}} never errs on the null side; its type-II error against
phi_j^{(x)n} is v^* G_n^{-1} v with v_i = <psi_i, phi_j>^n and Gram matrix
(G_n)_{il} = <psi_i, psi_l>^n. Once lambda_min(G_n) > 1/2,
    beta_n <= 2 max_j sum_i |<psi_i, phi_j>|^{2n},
so the exponent is C_min = min_ij -log |<psi_i, phi_j>|^2.
"""

import logging
import math
from typing import Any, Sequence

import numpy as np

from core.extreal import INF
from core.parallel import parallel_map
from core.utils import DegenerateFamily, UserInputError
from gallery.report import CounterexampleReport
from hermcore.linalg import eig_herm
from tradeoff.hoeffding import hoeffding

logger = logging.getLogger(__name__)

UNIT_TOL = 1e-10
DISTINCT_TOL = 1e-10
GRAM_THRESHOLD = 0.5
HOEFFDING_OFFSET = 0.1


def vector_from_json(payload: Any, field: str = "vector") -> np.ndarray:
    """A real list, or {"re": [...], "im": [...]} for complex amplitudes."""
    if isinstance(payload, dict):
        if "re" not in payload:
            raise UserInputError("Vector object needs 're'", field=field)
        re = np.asarray(payload["re"], dtype=float)
        im = np.asarray(payload.get("im", np.zeros_like(re)), dtype=float)
        if re.shape != im.shape:
            raise UserInputError(f"Vector re/im shapes differ: {re.shape} vs {im.shape}", field=field)
        return re + 1j * im
    try:
        return np.asarray(payload, dtype=complex)
    except (TypeError, ValueError) as e:
        raise UserInputError(f"Malformed vector: {e}", field=field)


def _unit_vectors(vectors: Sequence[Sequence[complex]], label: str) -> np.ndarray:
    mat = np.array([np.asarray(v, dtype=complex) for v in vectors])
    if mat.ndim != 2 or mat.shape[0] == 0:
        raise UserInputError(f"{label} must be a nonempty list of equal-length vectors", field=label)
    norms = np.linalg.norm(mat, axis=1)
    if np.any(np.abs(norms - 1.0) > UNIT_TOL):
        raise UserInputError(f"{label} vectors must have unit norm, got {norms.tolist()}", field=label)
    return mat


def _require_distinct(mat: np.ndarray, label: str) -> None:
    overlaps = np.abs(mat.conj() @ mat.T)
    np.fill_diagonal(overlaps, 0.0)
    if np.any(overlaps >= 1.0 - DISTINCT_TOL):
        i, j = np.unravel_index(int(np.argmax(overlaps)), overlaps.shape)
        raise DegenerateFamily(f"{label}[{i}] and {label}[{j}] are the same state up to phase")


def gram_power(psis: np.ndarray, n: int) -> np.ndarray:
    g = psis.conj() @ psis.T
    return g**n


def exact_projection_beta(psis: np.ndarray, phi: np.ndarray, n: int) -> float:
    """<phi^n| P_n |phi^n> for the projector P_n onto span{psi_i^n}."""
    g = gram_power(psis, n)
    v = (psis.conj() @ phi) ** n
    x = np.linalg.pinv(g, hermitian=True) @ v
    return float(max(np.real(v.conj() @ x), 0.0))


def pure_state_report(
    psis: Sequence[Sequence[complex]], phis: Sequence[Sequence[complex]], n_grid: Sequence[int]
) -> CounterexampleReport:
    """
    Overlap exponents, Gram eigenvalues and the type-II bound per n.

    Raises:
        DegenerateFamily: a family repeats a state.
    """
    logger.debug(f"[pure_state_report] Invoked. {len(psis)} null, {len(phis)} alternative states")
    a = _unit_vectors(psis, "psis")
    b = _unit_vectors(phis, "phis")
    if a.shape[1] != b.shape[1]:
        raise UserInputError("psis and phis live in different dimensions")
    _require_distinct(a, "psis")
    _require_distinct(b, "phis")
    k = a.shape[0]

    fid = np.abs(a.conj() @ b.T) ** 2  # Tr sigma_j rho_i
    with np.errstate(divide="ignore"):
        c = -np.log(fid)
    c_min = float(c.min())

    rep = CounterexampleReport(
        name="pure_states", parameters={"k": k, "m": int(b.shape[0]), "dim": int(a.shape[1]), "n_grid": list(n_grid)}
    )
    rep.value("C", c.tolist())
    rep.value("C_min", c_min)

    def _row(n: int) -> dict:
        lam_min = float(eig_herm(gram_power(a, n))[0][0])
        betas = [exact_projection_beta(a, phi, n) for phi in b]
        bound = 2.0 * float(np.max((fid**n).sum(axis=0)))
        return {"n": n, "lambda_min": lam_min, "beta": max(betas), "beta_bound": bound}

    rows = parallel_map(_row, sorted(int(n) for n in n_grid))
    rep.values["grid"] = rows
    prev = -math.inf
    for row in rows:
        n = row["n"]
        rep.check(f"gram_monotone_n={n}", row["lambda_min"], ">=", prev, 1e-12)
        prev = row["lambda_min"]
        if row["lambda_min"] <= GRAM_THRESHOLD:
            continue
        rep.check(f"beta_bound_n={n}", row["beta"], "<=", row["beta_bound"], 1e-12)
        if math.isinf(c_min):
            rep.check(f"beta_zero_n={n}", row["beta"], "<=", 0.0, 1e-12)
            continue
        rate = -math.log(row["beta_bound"]) / n
        row["rate_bound"] = rate
        rep.check(f"rate_near_C_min_n={n}", abs(rate - c_min), "<=", math.log(2.0 * k) / n, 1e-12)

    if math.isfinite(c_min):
        rho_states = [np.outer(v, v.conj()) for v in a]
        sigma_states = [np.outer(v, v.conj()) for v in b]
        r = c_min + HOEFFDING_OFFSET
        pairwise = min(hoeffding(rho, sigma, r) for rho in rho_states for sigma in sigma_states)
        rep.value("pairwise_hoeffding", pairwise)
        rep.check("hoeffding_equals_C_min", pairwise, "==", c_min, 1e-8)
    else:
        rep.value("pairwise_hoeffding", INF)
    return rep
