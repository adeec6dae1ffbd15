"""
Permutation-symmetric tests on n-fold classical products.

A symmetric test is an acceptance probability per type. Tests accept the
null hypothesis: alpha(p|T) = p^n(1 - a) and beta(q|T) = q^n(a).
"""

import csv
import io
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional, Sequence

import numpy as np

from core.config import TYPE_CAP
from core.parallel import parallel_map
from core.utils import DimensionMismatch, OutOfRange, UserInputError
from divergence.states import classical_array
from typelab.types import log_sum, log_type_probs, type_matrix

logger = logging.getLogger(__name__)

TIE_TOL = 1e-12
CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class SymmetricTest:
    """Acceptance probability for every n-type, rows aligned with type_matrix(n, |X|)."""

    n: int
    types: np.ndarray
    accept: np.ndarray
    label: str = ""
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.types.shape[0] != self.accept.shape[0]:
            raise DimensionMismatch(
                f"{self.types.shape[0]} types but {self.accept.shape[0]} acceptance values"
            )
        if np.any(self.accept < 0.0) or np.any(self.accept > 1.0):
            raise OutOfRange("Acceptance probabilities must lie in [0, 1]")

    @property
    def alphabet_size(self) -> int:
        return int(self.types.shape[1])

    def is_projective(self) -> bool:
        return bool(np.all((self.accept == 0.0) | (self.accept == 1.0)))

    def with_accept(self, accept: np.ndarray, label: str) -> "SymmetricTest":
        return replace(self, accept=np.asarray(accept, dtype=float), label=label, meta={})

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alphabet_size": self.alphabet_size,
            "label": self.label,
            "accepted_types": int(np.count_nonzero(self.accept)),
            "num_types": int(self.types.shape[0]),
            "meta": self.meta,
        }


@dataclass(frozen=True)
class ErrorPair:
    alpha_n: float
    beta_n: float
    log_alpha: float
    log_beta: float

    @classmethod
    def from_logs(cls, log_alpha: float, log_beta: float) -> "ErrorPair":
        log_alpha, log_beta = min(log_alpha, 0.0), min(log_beta, 0.0)
        return cls(
            alpha_n=math.exp(log_alpha),
            beta_n=math.exp(log_beta),
            log_alpha=log_alpha,
            log_beta=log_beta,
        )

    def to_dict(self) -> dict:
        return {
            "alpha_n": self.alpha_n,
            "beta_n": self.beta_n,
            "log_alpha": self.log_alpha,
            "log_beta": self.log_beta,
        }


def _logn(w: np.ndarray) -> np.ndarray:
    out = np.zeros_like(w)
    pos = w > 0
    out[pos] = np.log(w[pos])
    return out


def _pair_arrays(rho: Any, sigma: Any) -> tuple:
    p, q = classical_array(rho), classical_array(sigma)
    if p.size != q.size:
        raise DimensionMismatch(f"Alphabet sizes differ: {p.size} vs {q.size}")
    return p, q


def _type_rel_entropies(types: np.ndarray, q: np.ndarray) -> np.ndarray:
    """D(type/n || q) per row; +inf when the type uses a letter outside supp q."""
    emp = types / types.sum(axis=1, keepdims=True).astype(float)
    used = emp > 0
    log_q = _logn(q)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(used, emp * (np.log(np.where(used, emp, 1.0)) - log_q), 0.0)
    out = terms.sum(axis=1)
    out[(used & (q <= 0)).any(axis=1)] = np.inf
    return out


def llr_statistic(rho: Any, sigma: Any, types: np.ndarray) -> np.ndarray:
    """(1/n) sum_i k_i (logn rho_i - logn sigma_i) per type row."""
    p, q = _pair_arrays(rho, sigma)
    n = types.sum(axis=1)
    llr = _logn(p) - _logn(q)
    with np.errstate(invalid="ignore", divide="ignore"):
        stat = (types @ llr) / np.where(n > 0, n, 1)
    return stat


def np_test(rho: Any, sigma: Any, c: float, n: int, cap: int = TYPE_CAP) -> SymmetricTest:
    """
    Neyman-Pearson type test: accept a type iff its average log-likelihood
    ratio is at least c (ties within 1e-12 accepted).

    Args:
        rho: Null weight.
        sigma: Alternative weight.
        c: Threshold; -inf accepts everything.
        n: Number of copies.

    Raises:
        CapExceeded: too many types.
    """
    logger.debug(f"[np_test] Invoked. n={n}, c={c}")
    p, _ = _pair_arrays(rho, sigma)
    types = type_matrix(n, p.size, cap)
    stat = llr_statistic(rho, sigma, types)
    thresh = c - TIE_TOL * max(1.0, abs(c)) if math.isfinite(c) else c
    accept = (stat >= thresh).astype(float)
    return SymmetricTest(n=n, types=types, accept=accept, label="np", meta={"c": c})


def ball_test(sigma: Any, r: float, n: int, cap: int = TYPE_CAP) -> SymmetricTest:
    """
    Relative-entropy ball test: keep H0 on types with D(type/n || sigma) >= r.

    The exact beta is compared against (n+1)^|X| e^{-n r}; a violation is logged
    at ERROR and recorded in meta["bound_ok"].
    """
    logger.debug(f"[ball_test] Invoked. n={n}, r={r}")
    if r < 0:
        raise OutOfRange(f"Ball radius must be nonnegative, got {r}")
    q = classical_array(sigma)
    types = type_matrix(n, q.size, cap)
    if n == 0:
        accept = np.ones(types.shape[0])
    else:
        dist = _type_rel_entropies(types, q)
        accept = (dist >= r - TIE_TOL).astype(float)
    log_beta = log_sum(log_type_probs(q, types), accept)
    log_bound = q.size * math.log(n + 1) - n * r
    ok = log_beta <= log_bound + 1e-9
    if not ok:
        logger.error(f"Ball test beta bound violated: log beta {log_beta:.6g} > {log_bound:.6g}")
    return SymmetricTest(
        n=n,
        types=types,
        accept=accept,
        label="ball",
        meta={"r": r, "log_beta": log_beta, "log_beta_bound": log_bound, "bound_ok": ok},
    )


def _chunked_log_sum(log_probs: np.ndarray, weights: np.ndarray) -> float:
    if log_probs.size <= CHUNK:
        return log_sum(log_probs, weights)
    starts = range(0, log_probs.size, CHUNK)
    partial = parallel_map(lambda s: log_sum(log_probs[s : s + CHUNK], weights[s : s + CHUNK]), starts)
    return log_sum(np.asarray(partial))


def _log_accept(test: SymmetricTest, p: Any) -> float:
    return _chunked_log_sum(log_type_probs(p, test.types), test.accept)


def _log_reject(test: SymmetricTest, p: Any) -> float:
    return _chunked_log_sum(log_type_probs(p, test.types), 1.0 - test.accept)


def exact_errors(test: SymmetricTest, p_null: Sequence[Any], q_alt: Sequence[Any]) -> ErrorPair:
    """
    Worst-case exact errors over i.i.d. states from the supplied lists.

    Returns:
        ErrorPair: alpha = max_p p^n(reject), beta = max_q q^n(accept).
    """
    if not p_null or not q_alt:
        raise UserInputError("exact_errors needs nonempty state lists")
    log_alpha = max(_log_reject(test, p) for p in p_null)
    log_beta = max(_log_accept(test, q) for q in q_alt)
    return ErrorPair.from_logs(log_alpha, log_beta)


def _count_distribution(states: Sequence[Any], k: int) -> np.ndarray:
    """Distribution of the count vector of independent letters drawn from `states`."""
    n = len(states)
    dist = np.zeros((n + 1,) * k)
    dist[(0,) * k] = 1.0
    for s in states:
        w = classical_array(s)
        if w.size != k:
            raise DimensionMismatch(f"State has {w.size} letters, expected {k}")
        nxt = np.zeros_like(dist)
        for x in range(k):
            if w[x] <= 0:
                continue
            dst = tuple(slice(1, None) if ax == x else slice(None) for ax in range(k))
            src = tuple(slice(0, -1) if ax == x else slice(None) for ax in range(k))
            nxt[dst] += w[x] * dist[src]
        dist = nxt
    return dist


def acceptance_probability_product(test: SymmetricTest, states: Sequence[Any], reject: bool = False) -> float:
    """Probability that the test accepts (or rejects) under the product of per-coordinate states."""
    if len(states) != test.n:
        raise DimensionMismatch(f"Need {test.n} coordinate states, got {len(states)}")
    dist = _count_distribution(states, test.alphabet_size)
    probs = dist[tuple(test.types.T)]
    weights = 1.0 - test.accept if reject else test.accept
    return float(math.fsum((probs * weights).tolist()))


def exact_errors_product(
    test: SymmetricTest, null_states: Sequence[Any], alt_states: Sequence[Any]
) -> ErrorPair:
    """Exact errors under products of non-identical classical states (one state per coordinate)."""
    rej_null = acceptance_probability_product(test, null_states, reject=True)
    a_alt = acceptance_probability_product(test, alt_states)
    log_alpha = math.log(rej_null) if rej_null > 0.0 else -math.inf
    log_beta = math.log(a_alt) if a_alt > 0.0 else -math.inf
    return ErrorPair.from_logs(log_alpha, log_beta)


def tv_lower_bound(p: Any, q: Any, n: int, cap: int = TYPE_CAP) -> float:
    """
    1 - (1/2)||p^n - q^n||_1, a lower bound on alpha + beta for every test.

    Within a type class both products are constant, so the norm is the
    type-wise sum |p^n(class) - q^n(class)|.
    """
    a, b = _pair_arrays(p, q)
    types = type_matrix(n, a.size, cap)
    pa = np.exp(log_type_probs(a, types))
    pb = np.exp(log_type_probs(b, types))
    tv = 0.5 * math.fsum(np.abs(pa - pb).tolist())
    return 1.0 - tv


def _require_aligned(tests: Sequence[SymmetricTest]) -> None:
    first = tests[0]
    for t in tests[1:]:
        if t.n != first.n or t.types.shape != first.types.shape:
            raise DimensionMismatch("Tests must share n and alphabet")


def maxmin_combine(grid: Sequence[Sequence[SymmetricTest]]) -> SymmetricTest:
    """
    Combine a k x m grid of tests into T = max_i min_j T_ij, per type.

    The result satisfies 1 - T <= sum_j (1 - T_ij) for every i and
    T <= sum_i T_ij for every j; both are checked and reported in meta.
    """
    if not grid or not grid[0]:
        raise DimensionMismatch("Test grid must be nonempty")
    m = len(grid[0])
    if any(len(row) != m for row in grid):
        raise DimensionMismatch("Test grid rows must have equal length")
    flat = [t for row in grid for t in row]
    _require_aligned(flat)
    stack = np.array([[t.accept for t in row] for row in grid])  # (k, m, types)
    combined = stack.min(axis=1).max(axis=0)
    tol = 1e-12
    rows_ok = bool(np.all(1.0 - combined[None, :] <= (1.0 - stack).sum(axis=1) + tol))
    cols_ok = bool(np.all(combined[None, :] <= stack.sum(axis=0) + tol))
    if not (rows_ok and cols_ok):
        logger.warning(f"Max-min guarantees failed: rows {rows_ok}, columns {cols_ok}")
    out = flat[0].with_accept(combined, "maxmin")
    out.meta.update({"rows_ok": rows_ok, "columns_ok": cols_ok, "grid": [len(grid), m]})
    return out


def projectivize(test: SymmetricTest) -> SymmetricTest:
    """Round acceptance to {0, 1} at 1/2; errors at most double."""
    return test.with_accept((test.accept >= 0.5).astype(float), f"{test.label or 'test'}:proj")


def serialize_test(test: SymmetricTest) -> str:
    """CSV rows (x0, ..., x{|X|-1}, accept), one per type, in enumeration order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"x{i}" for i in range(test.alphabet_size)] + ["accept"])
    for counts, a in zip(test.types.tolist(), test.accept.tolist()):
        writer.writerow(counts + [repr(float(a))])
    return buf.getvalue()


def symmetric_test_from(n: int, alphabet_size: int, accept: Optional[Sequence[float]] = None, label: str = "") -> SymmetricTest:
    """Build a symmetric test from explicit per-type acceptance values (default all-accept)."""
    types = type_matrix(n, alphabet_size)
    a = np.ones(types.shape[0]) if accept is None else np.asarray(accept, dtype=float)
    return SymmetricTest(n=n, types=types, accept=a, label=label)
