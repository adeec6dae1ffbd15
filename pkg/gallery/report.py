"""
Report containers shared by the gallery constructions.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List

from core.extreal import ExtReal

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9


@dataclass
class InequalityRow:
    """A checked relation lhs <rel> rhs; slack is oriented so that pass means slack >= -tol."""

    name: str
    lhs: ExtReal
    relation: str
    rhs: ExtReal
    slack: ExtReal
    tol: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "relation": self.relation,
            "rhs": self.rhs,
            "slack": self.slack,
            "tol": self.tol,
            "pass": self.passed,
        }


def _slack(relation: str, lhs: ExtReal, rhs: ExtReal) -> ExtReal:
    if relation in ("<=", "<"):
        diff = rhs - lhs
    elif relation in (">=", ">"):
        diff = lhs - rhs
    elif relation == "==":
        diff = -abs(lhs - rhs)
    else:
        raise ValueError(f"Unknown relation {relation!r}")
    if math.isnan(diff):
        # inf - inf: both sides infinite and equal
        return 0.0 if lhs == rhs else -math.inf
    return diff


@dataclass
class CounterexampleReport:
    """Named values and checked inequalities of one construction."""

    name: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    values: Dict[str, Any] = field(default_factory=dict)
    rows: List[InequalityRow] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def value(self, key: str, val: Any) -> Any:
        self.values[key] = val
        return val

    def check(self, name: str, lhs: ExtReal, relation: str, rhs: ExtReal, tol: float = DEFAULT_TOL) -> InequalityRow:
        """
        Record lhs <relation> rhs. Strict relations need slack > tol; the
        others accept slack >= -tol.
        """
        slack = _slack(relation, float(lhs), float(rhs))
        if relation in ("<", ">"):
            passed = slack > tol
        else:
            passed = slack >= -tol
        row = InequalityRow(name=name, lhs=float(lhs), relation=relation, rhs=float(rhs), slack=slack, tol=tol, passed=passed)
        self.rows.append(row)
        if not passed:
            logger.warning(f"[{self.name}] {name}: {lhs!r} {relation} {rhs!r} failed (slack {slack:.3e}, tol {tol:g})")
        return row

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def failures(self) -> List[InequalityRow]:
        return [row for row in self.rows if not row.passed]

    def merge(self, other: "CounterexampleReport", prefix: str) -> None:
        for key, val in other.values.items():
            self.values[f"{prefix}.{key}"] = val
        for row in other.rows:
            row.name = f"{prefix}.{row.name}"
            self.rows.append(row)
        self.notes.extend(other.notes)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "parameters": self.parameters,
            "values": self.values,
            "inequalities": self.rows,
            "notes": self.notes,
            "pass": self.passed,
        }
