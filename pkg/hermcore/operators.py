"""
Operator value types.

HermitianOperator, DensityOperator and SupportProjector are immutable
wrappers around dense complex matrices. Every library function also accepts
plain numpy arrays; the wrappers add construction-time validation and a
cached spectrum.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Optional, Tuple, Union

import numpy as np

from core.config import HERM_TOL, TRACE_TOL
from core.utils import DimensionMismatch, NotHermitian, NotPSD, UserInputError

logger = logging.getLogger(__name__)

ArrayLike = Union[np.ndarray, "HermitianOperator", "DensityOperator", list]


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Dense complex Hermitian matrix, hermitized at construction."""

    entries: np.ndarray
    herm_tol: float = HERM_TOL

    @classmethod
    def from_matrix(cls, matrix: Any, herm_tol: float = HERM_TOL) -> "HermitianOperator":
        m = np.array(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"Expected a square matrix, got shape {m.shape}")
        scale = float(np.max(np.abs(m))) if m.size else 0.0
        deviation = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if deviation > herm_tol * max(scale, 1e-300) and deviation > 0.0:
            raise NotHermitian(
                f"Matrix deviates from Hermitian by {deviation:.3e} (tolerance {herm_tol:.1e} relative)"
            )
        m = (m + m.conj().T) / 2
        m.setflags(write=False)
        return cls(entries=m, herm_tol=herm_tol)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @cached_property
    def spectrum(self) -> Tuple[np.ndarray, np.ndarray]:
        from hermcore.linalg import eig_herm

        return eig_herm(self.entries)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectrum[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "re": self.entries.real.tolist(),
            "im": self.entries.imag.tolist(),
        }


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian operator with nonnegative spectrum and unit trace."""

    op: HermitianOperator
    trace_tol: float = TRACE_TOL

    @classmethod
    def from_matrix(
        cls, matrix: Any, trace_tol: float = TRACE_TOL, herm_tol: float = HERM_TOL
    ) -> "DensityOperator":
        op = matrix if isinstance(matrix, HermitianOperator) else HermitianOperator.from_matrix(matrix, herm_tol)
        evals = op.eigenvalues
        if evals.size and evals[0] < -trace_tol:
            raise NotPSD(
                f"Density operator has eigenvalue {evals[0]:.3e} below -{trace_tol:.1e}",
                min_eigenvalue=float(evals[0]),
            )
        trace = float(np.real(np.trace(op.entries)))
        if abs(trace - 1.0) > trace_tol:
            raise UserInputError(f"Density operator has trace {trace:.12g}, expected 1")
        return cls(op=op, trace_tol=trace_tol)

    @property
    def dim(self) -> int:
        return self.op.dim

    @property
    def entries(self) -> np.ndarray:
        return self.op.entries

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.op.entries, dtype=dtype)

    def to_dict(self) -> dict:
        return self.op.to_dict()


@dataclass(frozen=True, eq=False)
class SupportProjector:
    """Orthogonal projector onto the range of a PSD operator."""

    dim: int
    rank: int
    basis: np.ndarray  # dim x rank, orthonormal columns

    @cached_property
    def matrix(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def contains(self, other: "SupportProjector", tol: float = 1e-10) -> bool:
        """True when range(other) is a subspace of range(self)."""
        if other.rank == 0:
            return True
        residual = other.basis - self.basis @ (self.basis.conj().T @ other.basis)
        return bool(np.max(np.abs(residual)) <= tol) if residual.size else True

    def equals(self, other: "SupportProjector", tol: float = 1e-10) -> bool:
        return self.rank == other.rank and self.contains(other, tol)


def as_matrix(value: ArrayLike) -> np.ndarray:
    """Coerce an operator-like value to a Hermitian complex ndarray."""
    if isinstance(value, (HermitianOperator, DensityOperator)):
        return np.asarray(value.entries)
    m = np.asarray(value, dtype=complex)
    if m.ndim == 1:
        return np.diag(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"Expected a square matrix, got shape {m.shape}")
    return (m + m.conj().T) / 2


def operator_from_json(payload: dict, field: Optional[str] = None) -> np.ndarray:
    """Parse the {"dim", "re", "im"} matrix format."""
    try:
        dim = int(payload["dim"])
        re = np.asarray(payload["re"], dtype=float)
        im = np.asarray(payload.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as e:
        raise UserInputError(f"Malformed matrix JSON: {e}", field=field)
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise UserInputError(
            f"Matrix JSON declares dim {dim} but re/im have shapes {re.shape}/{im.shape}",
            field=field,
        )
    return HermitianOperator.from_matrix(re + 1j * im).entries


__all__ = [
    "HermitianOperator",
    "DensityOperator",
    "SupportProjector",
    "as_matrix",
    "operator_from_json",
]
