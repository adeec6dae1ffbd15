"""
Rounding a distribution in a halfspace {p : sum v p >= c} to a nearby n-type
that stays in the halfspace.
"""

import logging
import math
from typing import Any, Sequence

import numpy as np

from core.utils import DimensionMismatch, NTooSmall, OutOfRange
from divergence.states import classical_array
from typelab.types import TypeVector

logger = logging.getLogger(__name__)

HALFSPACE_TOL = 1e-12
INTEGER_SNAP = 1e-9


def _snap(x: float) -> float:
    nearest = round(x)
    return float(nearest) if abs(x - nearest) < INTEGER_SNAP else x


def type_round_halfspace(rho: Any, v: Sequence[float], c: float, n: int) -> TypeVector:
    """
    Round rho to an n-type rho_n with supp rho_n in supp rho,
    sum v rho_n >= c and ||rho - rho_n||_1 <= 2(r-1)/n, r = |supp rho|.

    A pivot letter with rho(pivot) >= 1/r absorbs the remainder; every other
    support letter rounds up when v exceeds v(pivot) and down otherwise, so
    each correction (v_i - v_pivot)(k_i - n rho_i) is nonnegative.

    Raises:
        OutOfRange: rho is not in the halfspace.
        NTooSmall: n < r(r-1).
    """
    logger.debug(f"[type_round_halfspace] Invoked. n={n}, c={c}")
    p = classical_array(rho)
    vv = np.asarray(v, dtype=float)
    if vv.shape != p.shape:
        raise DimensionMismatch(f"Halfspace normal has {vv.size} entries, weight has {p.size}")
    level = float(vv @ p)
    if level < c - HALFSPACE_TOL * max(1.0, abs(c)):
        raise OutOfRange(f"rho is outside the halfspace: sum v rho = {level:.12g} < c = {c:.12g}")
    support = np.flatnonzero(p > 0)
    r = support.size
    counts = np.zeros(p.size, dtype=np.int64)
    if r == 1:
        counts[support[0]] = n
        return TypeVector.from_counts(counts)
    if n < r * (r - 1):
        raise NTooSmall(f"Need n >= r(r-1) = {r * (r - 1)} for support size {r}, got n={n}")

    pivot = int(support[np.argmax(p[support])])
    for i in support:
        if i == pivot:
            continue
        x = _snap(n * p[i])
        counts[i] = math.ceil(x) if vv[i] > vv[pivot] else math.floor(x)
    counts[pivot] = n - int(counts.sum())
    if counts[pivot] < 0:
        raise NTooSmall(f"Pivot count went negative at n={n}")

    result = TypeVector.from_counts(counts)
    emp = result.empirical()
    l1 = float(np.abs(emp - p).sum())
    if l1 > 2.0 * (r - 1) / n + 1e-12 or float(vv @ emp) < level - 1e-12 * max(1.0, abs(level)):
        logger.warning(f"Rounded type misses a guarantee: l1={l1:.3g}, level={float(vv @ emp):.12g}")
    return result
