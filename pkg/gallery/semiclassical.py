"""
Projective test combination when every null state commutes with every
alternative state.

One-sided step: given A_1..A_k and B with [A_i, B] = 0 and tests T_i, pinch
each T_i in a joint eigenbasis of (A_i, B), round at 1/2 to Q_i, and take
Q = supp(sum Q_i). Then
    max_i alpha(A_i|Q) <= 2 sum_i alpha(A_i|T_i),  beta(B|Q) <= 2 sum_i beta(B|T_i).
Applying it per alternative and once more with the roles swapped (alternatives
against the sum of the nulls, tests I - Q_j) gives a projective Q with factors
4k and 4 against the double sums.
"""

import logging
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from core.utils import DimensionMismatch, NotSemiClassical, SupportMismatch
from gallery.report import CounterexampleReport
from hermcore.linalg import commutator_norm, joint_eigenbasis, positive_part_projector
from hermcore.operators import as_matrix

logger = logging.getLogger(__name__)

COMMUTING_TOL = 1e-10
SUPPORT_TOL = 1e-8
BOUND_TOL = 1e-9


def _alpha(a: np.ndarray, t: np.ndarray) -> float:
    return float(np.real(np.trace(a @ (np.eye(a.shape[0]) - t))))


def _beta(b: np.ndarray, t: np.ndarray) -> float:
    return float(np.real(np.trace(b @ t)))


def pinch_and_round(a: np.ndarray, b: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Projective test diagonal in a joint eigenbasis of a and b, rounded at 1/2."""
    try:
        v = joint_eigenbasis(a, b)
    except SupportMismatch as exc:
        raise NotSemiClassical("Operators do not commute within tolerance") from exc
    diag = np.real(np.diag(v.conj().T @ t @ v))
    keep = diag >= 0.5
    return v[:, keep] @ v[:, keep].conj().T


def one_sided_combine(As: Sequence[np.ndarray], B: np.ndarray, tests: Sequence[np.ndarray]) -> np.ndarray:
    """Support of the sum of the rounded, pinched tests."""
    if len(As) != len(tests):
        raise DimensionMismatch(f"{len(As)} operators but {len(tests)} tests")
    total = sum(pinch_and_round(a, B, t) for a, t in zip(As, tests))
    return positive_part_projector(total, SUPPORT_TOL)


def _require_commuting(rhos: Sequence[np.ndarray], sigmas: Sequence[np.ndarray]) -> None:
    for i, r in enumerate(rhos):
        for j, s in enumerate(sigmas):
            scale = max(float(np.linalg.norm(r, 2)) * float(np.linalg.norm(s, 2)), 1e-300)
            if commutator_norm(r, s) > COMMUTING_TOL * scale:
                raise NotSemiClassical(f"rho[{i}] and sigma[{j}] do not commute")


def helstrom_tests(rhos: Sequence[np.ndarray], sigmas: Sequence[np.ndarray]) -> List[List[np.ndarray]]:
    """Per-pair tests {rho_i - sigma_j > 0}."""
    return [[positive_part_projector(r - s) for s in sigmas] for r in rhos]


def semiclassical_combine(
    rhos: Sequence[Any],
    sigmas: Sequence[Any],
    tests: Optional[Sequence[Sequence[Any]]] = None,
) -> Tuple[np.ndarray, CounterexampleReport]:
    """
    Projective Q from a k x m grid of tests with
        max_i alpha(rho_i|Q) <= 4k sum_ij alpha(rho_i|T_ij),
        max_j beta(sigma_j|Q) <= 4  sum_ij beta(sigma_j|T_ij).

    Args:
        rhos: Null states.
        sigmas: Alternative states.
        tests: Grid tests[i][j]; defaults to the per-pair Helstrom tests.

    Raises:
        NotSemiClassical: some rho_i and sigma_j do not commute.
    """
    logger.debug(f"[semiclassical_combine] Invoked. k={len(rhos)}, m={len(sigmas)}")
    R = [as_matrix(r) for r in rhos]
    S = [as_matrix(s) for s in sigmas]
    _require_commuting(R, S)
    grid = helstrom_tests(R, S) if tests is None else [[as_matrix(t) for t in row] for row in tests]
    k, m = len(R), len(S)
    if len(grid) != k or any(len(row) != m for row in grid):
        raise DimensionMismatch(f"Test grid must be {k} x {m}")

    per_alt = [one_sided_combine(R, S[j], [grid[i][j] for i in range(k)]) for j in range(m)]
    r_sum = sum(R)
    q_tilde = one_sided_combine(S, r_sum, [np.eye(r_sum.shape[0]) - qj for qj in per_alt])
    q = np.eye(r_sum.shape[0]) - q_tilde

    alpha_sum = sum(_alpha(R[i], grid[i][j]) for i in range(k) for j in range(m))
    beta_sum = sum(_beta(S[j], grid[i][j]) for i in range(k) for j in range(m))
    rep = CounterexampleReport(name="semiclassical_combine", parameters={"k": k, "m": m})
    max_alpha = rep.value("max_alpha", max(_alpha(r, q) for r in R))
    max_beta = rep.value("max_beta", max(_beta(s, q) for s in S))
    rep.value("alpha_double_sum", alpha_sum)
    rep.value("beta_double_sum", beta_sum)
    rep.value("rank_Q", int(round(float(np.real(np.trace(q))))))
    for j in range(m):
        col_alpha = sum(_alpha(R[i], grid[i][j]) for i in range(k))
        col_beta = sum(_beta(S[j], grid[i][j]) for i in range(k))
        rep.check(
            f"one_sided_alpha_j={j}", max(_alpha(r, per_alt[j]) for r in R), "<=", 2.0 * col_alpha, BOUND_TOL
        )
        rep.check(f"one_sided_beta_j={j}", _beta(S[j], per_alt[j]), "<=", 2.0 * col_beta, BOUND_TOL)
    rep.check("alpha_bound", max_alpha, "<=", 4.0 * k * alpha_sum, BOUND_TOL)
    rep.check("beta_bound", max_beta, "<=", 4.0 * beta_sum, BOUND_TOL)
    return q, rep
