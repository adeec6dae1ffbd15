"""
Types (empirical distributions) of length-n sequences and their probabilities.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterator, Sequence, Tuple

import numpy as np
from scipy.special import gammaln

from core.config import TYPE_CAP
from core.utils import CapExceeded, DimensionMismatch, UserInputError
from divergence.states import classical_array

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TypeVector:
    """Composition of n over a finite alphabet."""

    counts: Tuple[int, ...]

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "TypeVector":
        c = tuple(int(k) for k in counts)
        if any(k < 0 for k in c):
            raise UserInputError(f"Type counts must be nonnegative, got {c}")
        return cls(counts=c)

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def alphabet_size(self) -> int:
        return len(self.counts)

    def empirical(self) -> np.ndarray:
        if self.n == 0:
            return np.zeros(self.alphabet_size)
        return np.asarray(self.counts, dtype=float) / self.n

    def to_dict(self) -> dict:
        return {"counts": list(self.counts), "n": self.n}


def count_types(n: int, alphabet_size: int) -> int:
    """Number of n-types over an alphabet: C(n + |X| - 1, |X| - 1)."""
    if n < 0 or alphabet_size < 1:
        raise UserInputError(f"Need n >= 0 and alphabet size >= 1, got n={n}, |X|={alphabet_size}")
    return math.comb(n + alphabet_size - 1, alphabet_size - 1)


def _check_cap(n: int, alphabet_size: int, cap: int) -> None:
    total = count_types(n, alphabet_size)
    if total > cap:
        raise CapExceeded(f"Too many types for n={n}, |X|={alphabet_size}", required=total, cap=cap)


@lru_cache(maxsize=64)
def _compositions(n: int, k: int) -> np.ndarray:
    if k == 1:
        out = np.array([[n]], dtype=np.int64)
    else:
        blocks = []
        for first in range(n, -1, -1):
            rest = _compositions(n - first, k - 1)
            blocks.append(np.column_stack([np.full(len(rest), first, dtype=np.int64), rest]))
        out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def type_matrix(n: int, alphabet_size: int, cap: int = TYPE_CAP) -> np.ndarray:
    """All n-types as rows of a (num_types x |X|) integer array, lexicographically descending."""
    _check_cap(n, alphabet_size, cap)
    return _compositions(n, alphabet_size)


def enumerate_types(n: int, alphabet_size: int, cap: int = TYPE_CAP) -> Iterator[TypeVector]:
    """
    Every composition of n into |X| nonnegative parts, each exactly once.

    Order is lexicographic with the first coordinate descending:
    n=2, |X|=2 gives (2,0), (1,1), (0,2).

    Raises:
        CapExceeded: more than `cap` types.
    """
    for row in type_matrix(n, alphabet_size, cap):
        yield TypeVector(counts=tuple(int(k) for k in row))


def log_class_sizes(types: np.ndarray) -> np.ndarray:
    """log of the multinomial coefficient n! / prod k_i! for each row."""
    n = types.sum(axis=1)
    return gammaln(n + 1.0) - gammaln(types + 1.0).sum(axis=1)


def log_type_probs(p: Any, types: np.ndarray) -> np.ndarray:
    """log p^n(type class) for each row; -inf when a used letter has p = 0."""
    w = classical_array(p)
    if w.size != types.shape[1]:
        raise DimensionMismatch(f"Weight has {w.size} letters, types have {types.shape[1]}")
    with np.errstate(divide="ignore"):
        log_w = np.log(w)
    contrib = np.where(types > 0, types * np.where(np.isfinite(log_w), log_w, 0.0), 0.0).sum(axis=1)
    forbidden = ((types > 0) & ~np.isfinite(log_w)).any(axis=1)
    out = log_class_sizes(types) + contrib
    out[forbidden] = -np.inf
    return out


def type_stats(p: Any, t: TypeVector) -> Tuple[float, float]:
    """
    (log |type class|, log p^n(type class)) for one type.

    Raises:
        DimensionMismatch: alphabet sizes differ.
    """
    row = np.asarray([t.counts], dtype=np.int64)
    return float(log_class_sizes(row)[0]), float(log_type_probs(p, row)[0])


def log_sum(log_terms: np.ndarray, weights: np.ndarray = None) -> float:
    """
    log sum_i w_i exp(t_i) with exactly rounded summation of the scaled terms.
    """
    t = np.asarray(log_terms, dtype=float)
    w = np.ones_like(t) if weights is None else np.asarray(weights, dtype=float)
    keep = (w > 0) & np.isfinite(t)
    if not np.any(keep):
        return -math.inf
    t, w = t[keep], w[keep]
    m = float(t.max())
    s = math.fsum((w * np.exp(t - m)).tolist())
    return m + math.log(s) if s > 0 else -math.inf
