"""
Run configuration for the command-line surface: grids, tolerances, seeds and
the JSON input files holding states and hypothesis sets.
"""

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional, Tuple

from core.utils import UserInputError

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("json", "csv")
DEFAULT_TOL = 1e-8


def parse_grid(text: Optional[str], field_name: str = "grid") -> Tuple[float, ...]:
    """
    Parse "start:stop:step" (stop included when hit within step/2), a comma
    list "a,b,c", or a single number.

    Raises:
        UserInputError: unparsable text, nonpositive step, or a grid that is
            empty or not strictly increasing.
    """
    if text is None:
        return ()
    raw = text.strip()
    try:
        if ":" in raw:
            parts = [float(x) for x in raw.split(":")]
            if len(parts) != 3:
                raise UserInputError(f"Grid '{text}' must be start:stop:step", field=field_name)
            start, stop, step = parts
            if not step > 0:
                raise UserInputError(f"Grid step must be positive, got {step}", field=field_name)
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            values = tuple(min(start + i * step, stop) for i in range(max(count, 0)))
        else:
            values = tuple(float(x) for x in raw.split(",") if x.strip())
    except ValueError:
        raise UserInputError(f"Cannot parse grid '{text}'", field=field_name)
    if not values:
        raise UserInputError(f"Grid '{text}' is empty", field=field_name)
    if any(b <= a for a, b in zip(values, values[1:])):
        raise UserInputError(f"Grid '{text}' is not strictly increasing", field=field_name)
    return values


def parse_int_grid(text: Optional[str], field_name: str = "n") -> Tuple[int, ...]:
    values = parse_grid(text, field_name)
    out = tuple(int(round(v)) for v in values)
    if any(abs(v - o) > 1e-9 for v, o in zip(values, out)):
        raise UserInputError(f"Grid '{text}' must hold integers", field=field_name)
    return out


def load_json(path: Optional[str], field_name: str) -> Any:
    """
    Read a JSON input file.

    Raises:
        UserInputError: missing file, or invalid JSON with its line number.
    """
    if path is None:
        raise UserInputError(f"--{field_name} is required", field=field_name)
    p = Path(path)
    if not p.exists():
        raise UserInputError(f"Input file not found: {path}", field=field_name)
    try:
        return json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise UserInputError(f"Invalid JSON in {path}: {e.msg}", line=e.lineno, field=field_name)


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI invocation needs; identical configs give identical output."""

    command: str
    target: Optional[str] = None
    kind: Optional[str] = None
    rho: Optional[str] = None
    sigma: Optional[str] = None
    sigma2: Optional[str] = None
    null_set: Optional[str] = None
    alt_set: Optional[str] = None
    alpha: Tuple[float, ...] = ()
    r: Tuple[float, ...] = ()
    n: Tuple[int, ...] = ()
    grid: Tuple[float, ...] = ()
    k: int = 1
    t: Optional[float] = None
    s: float = 0.25
    c: Optional[float] = None
    v: Tuple[float, ...] = ()
    theta: Optional[float] = None
    depth: Optional[int] = None
    trials: int = 0
    samples: int = 0
    tol: float = DEFAULT_TOL
    seed: int = 0
    format: str = "json"
    out: Optional[str] = None

    def __post_init__(self):
        if self.format not in OUTPUT_FORMATS:
            raise UserInputError(f"Unknown output format '{self.format}'", field="format")
        if not self.tol > 0:
            raise UserInputError(f"Tolerance must be positive, got {self.tol}", field="tol")
        for name in ("alpha", "r", "n", "grid"):
            grid = getattr(self, name)
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise UserInputError(f"Grid --{name} is not strictly increasing", field=name)

    def single(self, name: str) -> float:
        """The only value of a grid flag."""
        grid: List[float] = list(getattr(self, name))
        if len(grid) != 1:
            raise UserInputError(f"--{name} takes a single value here, got {len(grid)}", field=name)
        return grid[0]

    def require(self, name: str) -> Tuple:
        grid = getattr(self, name)
        if not grid:
            where = " ".join(x for x in (self.command, self.target) if x)
            raise UserInputError(f"--{name} is required for '{where}'", field=name)
        return grid
