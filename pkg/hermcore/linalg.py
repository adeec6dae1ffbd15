"""
Hermitian linear algebra on dense matrices.

Matrix functions are computed through the eigendecomposition and applied on
the support only: eigenvalues at or below eps_supp * lambda_max are treated
as exact zeros and mapped to 0, which gives the logn 0 := 0 convention for
the logarithm and support-restricted negative powers.
"""

import logging
from typing import Callable, Optional, Tuple, Union

import numpy as np
import scipy.linalg

from core.config import DIM_CAP, EPS_SUPP
from core.utils import (
    CapExceeded,
    EigenSolverError,
    NotPD,
    NotPSD,
    SupportMismatch,
    UserInputError,
    ZeroOperator,
)
from hermcore.operators import SupportProjector, as_matrix

logger = logging.getLogger(__name__)


def eig_herm(H) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a Hermitian matrix.

    Args:
        H: Hermitian operator or array.

    Returns:
        tuple: (eigenvalues ascending, unitary matrix of eigenvectors as columns)
    """
    m = as_matrix(H)
    try:
        w, v = scipy.linalg.eigh(m, check_finite=True)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError, ValueError) as e:
        raise EigenSolverError(f"Hermitian eigensolver failed on a {m.shape[0]}x{m.shape[0]} matrix: {e}")
    return w, v


def _support_threshold(w: np.ndarray, eps_supp: float) -> float:
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    return eps_supp * scale


def _check_psd(w: np.ndarray, eps_supp: float, what: str = "operator") -> None:
    if w.size and w[0] < -max(_support_threshold(w, eps_supp), 1e-300):
        raise NotPSD(
            f"{what} has negative eigenvalue {w[0]:.3e} beyond tolerance",
            min_eigenvalue=float(w[0]),
        )


def support_projection(A, eps_supp: float = EPS_SUPP) -> SupportProjector:
    """
    Projector onto the span of eigenvectors with eigenvalue above eps_supp * lambda_max.

    Raises:
        NotPSD: if A has a negative eigenvalue beyond tolerance.
    """
    w, v = eig_herm(A)
    _check_psd(w, eps_supp)
    keep = w > _support_threshold(w, eps_supp)
    basis = v[:, keep]
    return SupportProjector(dim=v.shape[0], rank=int(keep.sum()), basis=basis)


def apply_fn(H, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a scalar function to every eigenvalue of a Hermitian matrix."""
    w, v = eig_herm(H)
    return (v * fn(w)) @ v.conj().T


def mat_fn_on_support(
    A,
    fn: Union[str, Callable[[np.ndarray], np.ndarray]],
    t: Optional[float] = None,
    eps_supp: float = EPS_SUPP,
) -> np.ndarray:
    """
    Apply log or pow(t) to the nonzero eigenvalues of a PSD operator; zero eigenvalues map to 0.

    Args:
        A: PSD operator.
        fn: "log", "pow" (requires t), or a callable used on positive eigenvalues.
        t: Exponent for "pow"; any real value.
        eps_supp: Relative support threshold.

    Returns:
        np.ndarray: f(A) on the support of A.
    """
    w, v = eig_herm(A)
    _check_psd(w, eps_supp)
    keep = w > _support_threshold(w, eps_supp)
    values = np.zeros_like(w)
    if fn == "log":
        values[keep] = np.log(w[keep])
    elif fn == "pow":
        if t is None:
            raise UserInputError("mat_fn_on_support('pow') requires an exponent t")
        values[keep] = np.power(w[keep], t)
    elif callable(fn):
        values[keep] = fn(w[keep])
    else:
        raise UserInputError(f"Unknown matrix function {fn!r}")
    return (v * values) @ v.conj().T


def logn(A, eps_supp: float = EPS_SUPP) -> np.ndarray:
    return mat_fn_on_support(A, "log", eps_supp=eps_supp)


def powm(A, t: float, eps_supp: float = EPS_SUPP) -> np.ndarray:
    return mat_fn_on_support(A, "pow", t=t, eps_supp=eps_supp)


def expm_herm(H) -> np.ndarray:
    return apply_fn(H, np.exp)


def is_positive_definite(A, eps_supp: float = EPS_SUPP) -> bool:
    w, _ = eig_herm(A)
    return bool(w.size and w[0] > _support_threshold(w, eps_supp))


def require_pd(A, what: str = "operator", eps_supp: float = EPS_SUPP) -> np.ndarray:
    m = as_matrix(A)
    if not is_positive_definite(m, eps_supp):
        raise NotPD(f"{what} must be positive definite")
    return m


def _geometric_mean_pd(A: np.ndarray, B: np.ndarray, alpha: float) -> np.ndarray:
    b_half = powm(B, 0.5)
    b_ihalf = powm(B, -0.5)
    inner = b_ihalf @ A @ b_ihalf
    inner = (inner + inner.conj().T) / 2
    mid = mat_fn_on_support(inner, "pow", t=alpha, eps_supp=0.0)
    g = b_half @ mid @ b_half
    return (g + g.conj().T) / 2


def geometric_mean(A, B, alpha: float = 0.5, eps_supp: float = EPS_SUPP) -> np.ndarray:
    """
    Kubo-Ando weighted geometric mean B^{1/2} (B^{-1/2} A B^{-1/2})^alpha B^{1/2}.

    With B = sigma and A = rho this is sigma #_alpha rho. Singular inputs are
    accepted only when both supports coincide; the mean is then computed on
    the common support and embedded back.

    Raises:
        SupportMismatch: when the supports differ and either input is singular.
    """
    if not 0.0 <= alpha <= 1.0:
        raise UserInputError(f"alpha must lie in [0, 1], got {alpha}")
    a = as_matrix(A)
    b = as_matrix(B)
    if a.shape != b.shape:
        raise SupportMismatch(f"Shape mismatch {a.shape} vs {b.shape}")
    if is_positive_definite(a, eps_supp) and is_positive_definite(b, eps_supp):
        return _geometric_mean_pd(a, b, alpha)

    pa = support_projection(a, eps_supp)
    pb = support_projection(b, eps_supp)
    if not pa.equals(pb, tol=1e-8):
        raise SupportMismatch(
            f"Geometric mean of singular operators needs equal supports (ranks {pa.rank} and {pb.rank})"
        )
    if pa.rank == 0:
        return np.zeros_like(a)
    u = pa.basis
    a_r = u.conj().T @ a @ u
    b_r = u.conj().T @ b @ u
    g_r = _geometric_mean_pd((a_r + a_r.conj().T) / 2, (b_r + b_r.conj().T) / 2, alpha)
    logger.debug(f"Geometric mean computed on deflated support of rank {pa.rank}")
    g = u @ g_r @ u.conj().T
    return (g + g.conj().T) / 2


def kron(A, B) -> np.ndarray:
    return np.kron(as_matrix(A), as_matrix(B))


def kron_power(A, n: int, dim_cap: int = DIM_CAP) -> np.ndarray:
    """n-fold tensor power; n = 0 gives the 1x1 identity."""
    a = as_matrix(A)
    if n < 0:
        raise UserInputError(f"Tensor power must be nonnegative, got {n}")
    required = a.shape[0] ** n
    if required > dim_cap:
        raise CapExceeded("Tensor power dimension exceeds cap", required=required, cap=dim_cap)
    out = np.eye(1, dtype=complex)
    for _ in range(n):
        out = np.kron(out, a)
    return out


def direct_sum(*blocks) -> np.ndarray:
    """Block-diagonal direct sum; scalars are 1x1 blocks."""
    mats = [np.atleast_2d(np.asarray(b, dtype=complex)) for b in blocks]
    return scipy.linalg.block_diag(*mats)


def trace_norm(A) -> float:
    w, _ = eig_herm(A)
    return float(np.sum(np.abs(w)))


def fidelity(rho, sigma, eps_supp: float = EPS_SUPP) -> float:
    """Tr (rho^{1/2} sigma rho^{1/2})^{1/2}, clipped to [0, 1]."""
    r = as_matrix(rho)
    s = as_matrix(sigma)
    _check_psd(eig_herm(s)[0], eps_supp, "sigma")
    r_half = powm(r, 0.5, eps_supp)
    inner = r_half @ s @ r_half
    w, _ = eig_herm(inner)
    value = float(np.sum(np.sqrt(np.clip(w, 0.0, None))))
    return float(min(max(value, 0.0), 1.0))


def lambda_extremes(A, eps_supp: float = EPS_SUPP) -> Tuple[float, float]:
    """
    Largest eigenvalue and smallest nonzero eigenvalue.

    Raises:
        ZeroOperator: when A has no eigenvalue above the support threshold.
    """
    w, _ = eig_herm(A)
    lam_max = float(w[-1])
    positive = w[w > _support_threshold(w, eps_supp)]
    if positive.size == 0:
        raise ZeroOperator("Operator has no nonzero eigenvalue")
    return lam_max, float(positive[0])


def lambda_max(A) -> float:
    return float(eig_herm(A)[0][-1])


def commutator_norm(A, B) -> float:
    a = as_matrix(A)
    b = as_matrix(B)
    return float(np.linalg.norm(a @ b - b @ a, 2))


def positive_part_projector(H, tol: float = 0.0) -> np.ndarray:
    """Projector onto the eigenspaces of H with eigenvalue > tol."""
    w, v = eig_herm(H)
    keep = w > tol
    return v[:, keep] @ v[:, keep].conj().T


def joint_eigenbasis(A, B, tol: float = 1e-8) -> np.ndarray:
    """
    Orthonormal basis diagonalizing two commuting Hermitian matrices.

    Diagonalizes A + c B for a few irrational mixing coefficients and keeps
    the first basis in which both matrices are diagonal within tol.
    """
    a = as_matrix(A)
    b = as_matrix(B)
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))), 1e-300)
    for c in (0.7548776662466927, 1.3247179572447460, 2.6180339887498949, 0.4142135623730950):
        _, v = eig_herm(a + c * b)
        for m in (a, b):
            d = v.conj().T @ m @ v
            off = d - np.diag(np.diag(d))
            if np.max(np.abs(off)) > tol * scale:
                break
        else:
            return v
    raise SupportMismatch("Matrices do not share an eigenbasis within tolerance")
