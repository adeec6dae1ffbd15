"""
Hypothesis sets and their JSON encoding.
"""

import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from core.utils import DimensionMismatch, KindMismatch, OutOfRange, UserInputError
from divergence.states import classical_array, require_same_kind, state_from_json
from hermcore.operators import as_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HypothesisSet:
    """Finite, homogeneous (all classical or all quantum) set of states."""

    label: str
    states: Tuple[np.ndarray, ...]
    kind: str

    @classmethod
    def from_states(cls, label: str, states: Sequence[Any]) -> "HypothesisSet":
        if len(states) == 0:
            raise UserInputError(f"Hypothesis set '{label}' is empty")
        kind = require_same_kind(*states)
        if kind == "classical":
            arrays = tuple(classical_array(s) for s in states)
        else:
            arrays = tuple(as_matrix(s) for s in states)
        shapes = {a.shape for a in arrays}
        if len(shapes) != 1:
            raise DimensionMismatch(f"Hypothesis set '{label}' mixes shapes {sorted(shapes)}")
        for a in arrays:
            a.setflags(write=False)
        return cls(label=label, states=arrays, kind=kind)

    @classmethod
    def from_json(cls, payload: dict, default_label: str = "set") -> "HypothesisSet":
        """Parse {"kind": "classical"|"quantum", "label": ..., "states": [...]}."""
        if not isinstance(payload, dict) or "states" not in payload:
            raise UserInputError("Hypothesis set JSON needs a 'states' list", field="states")
        declared = payload.get("kind")
        label = str(payload.get("label", default_label))
        states = [
            state_from_json(s, kind=declared, field_name=f"states[{i}]")
            for i, s in enumerate(payload["states"])
        ]
        hs = cls.from_states(label, states)
        if declared is not None and declared != hs.kind:
            raise KindMismatch(f"Set '{label}' declared {declared} but holds {hs.kind} states")
        return hs

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    @property
    def dim(self) -> int:
        return int(self.states[0].shape[0])

    def full_support(self) -> bool:
        if self.kind != "classical":
            raise KindMismatch("full_support is defined for classical sets")
        return all(bool(np.all(s > 0)) for s in self.states)

    def mixture(self, weights: np.ndarray) -> np.ndarray:
        w = np.asarray(weights, dtype=float)
        if w.shape != (len(self),):
            raise DimensionMismatch(f"Expected {len(self)} mixture weights, got {w.shape}")
        return sum(wi * s for wi, s in zip(w, self.states))

    def to_dict(self) -> dict:
        if self.kind == "classical":
            states: List[Any] = [s.tolist() for s in self.states]
        else:
            states = [{"dim": s.shape[0], "re": s.real.tolist(), "im": s.imag.tolist()} for s in self.states]
        return {"kind": self.kind, "label": self.label, "states": states}


def smooth_set(hs: HypothesisSet, theta: float, label: Optional[str] = None) -> HypothesisSet:
    """
    Mix every generator with the uniform weight: sigma -> (1 - theta) sigma + theta / |X|.

    Raises:
        OutOfRange: theta outside [0, 1).
    """
    if hs.kind != "classical":
        raise KindMismatch("Smoothing is defined for classical sets")
    if not 0.0 <= theta < 1.0:
        raise OutOfRange(f"Smoothing weight must lie in [0, 1), got {theta}")
    if theta == 0.0:
        return hs
    size = hs.dim
    smoothed = [(1.0 - theta) * s + theta / size for s in hs.states]
    return HypothesisSet.from_states(label or f"{hs.label}~{theta:g}", smoothed)
