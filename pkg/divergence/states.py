"""
State value types for the divergence layer.

Classical states are ClassicalWeight vectors; quantum states are dense
matrices (or hermcore operator wrappers). `coerce_pair` decides which code
path a pair of arguments takes.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Tuple

import numpy as np

from core.config import TRACE_TOL
from core.extreal import ExtReal
from core.utils import DimensionMismatch, KindMismatch, NotPSD, UserInputError
from hermcore.operators import DensityOperator, HermitianOperator, as_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ClassicalWeight:
    """Nonnegative weight vector over a finite alphabet."""

    weights: np.ndarray
    normalized: bool = True
    norm_tol: float = TRACE_TOL

    @classmethod
    def from_values(
        cls, values: Any, normalized: bool = True, norm_tol: float = TRACE_TOL
    ) -> "ClassicalWeight":
        w = np.array(values, dtype=float).reshape(-1)
        if w.size == 0:
            raise UserInputError("Classical weight must have at least one entry")
        if np.any(~np.isfinite(w)):
            raise UserInputError("Classical weight has non-finite entries")
        if np.any(w < -norm_tol):
            raise NotPSD(
                f"Classical weight has negative entry {w.min():.3e}",
                min_eigenvalue=float(w.min()),
            )
        w = np.clip(w, 0.0, None)
        if normalized and abs(float(w.sum()) - 1.0) > norm_tol:
            raise UserInputError(f"Classical weight sums to {w.sum():.12g}, expected 1")
        w.setflags(write=False)
        return cls(weights=w, normalized=normalized, norm_tol=norm_tol)

    @property
    def size(self) -> int:
        return int(self.weights.size)

    @property
    def support(self) -> np.ndarray:
        return self.weights > 0

    def mass(self) -> float:
        return float(self.weights.sum())

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.weights, dtype=dtype)

    def to_dict(self) -> dict:
        return {"weights": self.weights.tolist()}


class DivergenceKind(str, Enum):
    RELATIVE = "relative"
    PETZ = "petz"
    SANDWICHED = "sandwiched"
    LOG_EUCLIDEAN = "log_euclidean"
    MAXIMAL = "maximal"
    MAX_REL = "max_rel"
    CHERNOFF = "chernoff"

    @property
    def needs_alpha(self) -> bool:
        return self in (
            DivergenceKind.PETZ,
            DivergenceKind.SANDWICHED,
            DivergenceKind.LOG_EUCLIDEAN,
            DivergenceKind.MAXIMAL,
        )


@dataclass(frozen=True)
class DivergenceValue:
    value: ExtReal
    kind: DivergenceKind
    alpha: Optional[float] = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"kind": self.kind.value, "value": self.value}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        out.update(self.extra)
        return out


def is_classical(value: Any) -> bool:
    if isinstance(value, ClassicalWeight):
        return True
    if isinstance(value, (HermitianOperator, DensityOperator)):
        return False
    return np.ndim(value) == 1


def classical_array(value: Any) -> np.ndarray:
    if isinstance(value, ClassicalWeight):
        return np.asarray(value.weights, dtype=float)
    w = np.asarray(value)
    if np.iscomplexobj(w):
        if np.max(np.abs(w.imag), initial=0.0) > 1e-12:
            raise UserInputError("Classical weight has complex entries")
        w = w.real
    w = np.asarray(w, dtype=float)
    if np.any(w < -TRACE_TOL):
        raise NotPSD(f"Classical weight has negative entry {w.min():.3e}", min_eigenvalue=float(w.min()))
    return np.clip(w, 0.0, None)


def coerce_pair(rho: Any, sigma: Any) -> Tuple[str, np.ndarray, np.ndarray]:
    """
    Normalize a pair of states to a common representation.

    Returns:
        tuple: ("classical", p, q) when both are weight vectors, otherwise
        ("quantum", rho_matrix, sigma_matrix) with vectors embedded as diagonals.
    """
    if is_classical(rho) and is_classical(sigma):
        p = classical_array(rho)
        q = classical_array(sigma)
        if p.shape != q.shape:
            raise DimensionMismatch(f"Alphabet sizes differ: {p.size} vs {q.size}")
        return "classical", p, q
    a = as_matrix(classical_array(rho) if is_classical(rho) else rho)
    b = as_matrix(classical_array(sigma) if is_classical(sigma) else sigma)
    if a.shape != b.shape:
        raise DimensionMismatch(f"Operator dimensions differ: {a.shape[0]} vs {b.shape[0]}")
    return "quantum", a, b


def state_kind(value: Any) -> str:
    return "classical" if is_classical(value) else "quantum"


def require_same_kind(*values: Any) -> str:
    kinds = {state_kind(v) for v in values}
    if len(kinds) != 1:
        raise KindMismatch(f"Mixed classical and quantum states: {sorted(kinds)}")
    return kinds.pop()


def state_from_json(payload: Any, kind: Optional[str] = None, field_name: Optional[str] = None):
    """
    Parse a state: a bare list or {"weights": [...]} is classical, {"dim","re","im"} is quantum.
    """
    from hermcore.operators import operator_from_json

    if isinstance(payload, list):
        if payload and isinstance(payload[0], list):
            return as_matrix(np.asarray(payload, dtype=complex))
        return ClassicalWeight.from_values(payload, normalized=False)
    if isinstance(payload, dict):
        if "weights" in payload:
            return ClassicalWeight.from_values(payload["weights"], normalized=False)
        if "re" in payload:
            return operator_from_json(payload, field=field_name)
    raise UserInputError(f"Unrecognized state encoding ({kind or 'auto'})", field=field_name)


__all__ = [
    "ClassicalWeight",
    "DivergenceKind",
    "DivergenceValue",
    "classical_array",
    "coerce_pair",
    "is_classical",
    "require_same_kind",
    "state_from_json",
    "state_kind",
]
