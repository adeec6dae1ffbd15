"""
Uniform distribution on [0, 1] against infinitely many alternatives.

H_k is the set of points whose k-th binary digit is 0 and mu_k the uniform
distribution on H_k; the alternative is the mixture sum_k q_k mu_k^n with
q_k = (6/pi^2) k^-2. Binary digits are independent under every measure
involved, so all error probabilities of tests that depend on finitely many
digits are closed-form.

The constructed test keeps H0 unless some digit k <= m_n is 0 in every
coordinate, with m_n = ceil(e^{n r}).
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import polygamma

from core.utils import DepthTooSmall, OutOfRange
from gallery.report import CounterexampleReport

logger = logging.getLogger(__name__)

SIX_OVER_PI2 = 6.0 / math.pi**2
MAX_CYLINDER_BITS = 20
RATE_SLACK = 3.0 * math.log(2.0)
ACCEPT_DENSITY_SHAPE = 0.2
DENSITY_FLOOR = 1e-12


@dataclass(frozen=True)
class IntervalModel:
    """n copies, tests measurable with respect to the first m binary digits."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise OutOfRange(f"Need n >= 1 and m >= 1, got n={self.n}, m={self.m}")

    @staticmethod
    def weight(k: int) -> float:
        return SIX_OVER_PI2 / (k * k)

    @staticmethod
    def tail_weight(m: int) -> float:
        """sum_{k > m} q_k via the trigamma function."""
        return SIX_OVER_PI2 * float(polygamma(1, m + 1))

    @property
    def cells(self) -> int:
        return 2 ** (self.n * self.m)

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m}


def threshold_depth(n: int, r: float) -> int:
    """m_n = ceil(e^{n r})."""
    return int(math.ceil(math.exp(n * r)))


def _log_no_full_zero_digit(n: int, m: int) -> float:
    """log P(no digit among m is 0 in all n coordinates) = m log(1 - 2^-n)."""
    return m * math.log1p(-(2.0 ** (-n)))


def interval_example_report(n: int, r: float, depth: Optional[int] = None) -> CounterexampleReport:
    """
    Exact errors and trade-off checks for the constructed test at (n, r).

    alpha_n = 1 - (1 - 2^-n)^{m_n},
    beta_n  = (1 - 2^-n)^{m_n} sum_{k > m_n} q_k <= 6 / (pi^2 m_n).

    Raises:
        DepthTooSmall: depth < m_n.
    """
    logger.debug(f"[interval_example_report] Invoked. n={n}, r={r}, depth={depth}")
    if n < 1 or r <= 0:
        raise OutOfRange(f"Need n >= 1 and r > 0, got n={n}, r={r}")
    m = threshold_depth(n, r)
    if depth is not None and depth < m:
        raise DepthTooSmall(f"Test needs {m} digits, depth is {depth}")
    log_keep = _log_no_full_zero_digit(n, m)
    alpha = -math.expm1(log_keep)
    tail = IntervalModel.tail_weight(m)
    beta = math.exp(log_keep) * tail

    rep = CounterexampleReport(name="interval_example", parameters={"n": n, "r": r, "depth": depth})
    rep.value("m_n", m)
    rep.value("alpha_n", alpha)
    rep.value("beta_n", beta)
    rep.value("tail_weight", tail)
    rate_alpha = rep.value("rate_alpha", -math.log(alpha) / n if alpha > 0 else math.inf)
    rate_beta = rep.value("rate_beta", -math.log(beta) / n if beta > 0 else math.inf)
    target = rep.value("rate_alpha_target", max(math.log(2.0) - r, 0.0))

    rep.check("beta_bound", beta, "<=", SIX_OVER_PI2 / m, 1e-15)
    if m <= 2**n:
        rep.check("tradeoff_depth_m", 2.0 ** (n + 1) * alpha + (math.pi**2 / 3.0) * m * m * beta, ">=", m, 1e-9 * m)
    rep.check("tradeoff_depth_2n", 2.0 * alpha + (math.pi**2 / 3.0) * 2.0**n * beta, ">=", 1.0, 1e-12)
    rep.check("rate_alpha_near_target", abs(rate_alpha - target), "<=", RATE_SLACK / n, 0.0)
    rep.check("rate_beta_at_least_r", rate_beta, ">=", r - RATE_SLACK / n, 0.0)
    return rep


def _cylinder_masks(model: IntervalModel) -> np.ndarray:
    """
    Boolean (m, cells) array: entry [k, c] is True when cell c has digit k+1
    equal to 0 in every coordinate. Bit i*m + d of a cell index is digit d+1
    of coordinate i.
    """
    if model.n * model.m > MAX_CYLINDER_BITS:
        raise OutOfRange(f"{model.n * model.m} cylinder bits exceed the limit {MAX_CYLINDER_BITS}")
    cells = np.arange(model.cells, dtype=np.int64)
    out = np.empty((model.m, model.cells), dtype=bool)
    for d in range(model.m):
        digit_mask = sum(1 << (i * model.m + d) for i in range(model.n))
        out[d] = (cells & digit_mask) == 0
    return out


def cylinder_errors(model: IntervalModel, accept: np.ndarray, masks: Optional[np.ndarray] = None) -> dict:
    """
    Exact errors of a test given by acceptance values on the 2^{nm} digit cells.

    Under mu_k^n with k > m the first m digits are uniform, so mu_k^n agrees
    with the null distribution on such tests.
    """
    masks = _cylinder_masks(model) if masks is None else masks
    p_accept = float(accept.mean())
    per_k = np.array([float(accept[masks[d]].mean()) for d in range(model.m)])
    weights = np.array([IntervalModel.weight(k) for k in range(1, model.m + 1)])
    tail = IntervalModel.tail_weight(model.m)
    return {
        "alpha": 1.0 - p_accept,
        "beta_mixture": float(weights @ per_k) + tail * p_accept,
        "beta_sup": float(max(per_k.max(), p_accept)),
    }


def _random_acceptance(rng: np.random.Generator, cells: int, projective: bool) -> np.ndarray:
    """
    One random cylinder test. The acceptance density is drawn per test from
    Beta(ACCEPT_DENSITY_SHAPE, ACCEPT_DENSITY_SHAPE), which piles up near 0
    and 1, so alpha ranges over the whole of [0, 1]. Fractional tests use
    u^c with mean equal to the density.
    """
    density = float(np.clip(rng.beta(ACCEPT_DENSITY_SHAPE, ACCEPT_DENSITY_SHAPE), DENSITY_FLOOR, 1.0))
    u = rng.random(cells)
    if projective:
        return (u < density).astype(float)
    return u ** ((1.0 - density) / density)


def interval_supp_report(
    n: int, depth: int, trials: int = 1000, seed: int = 0, projective: bool = True
) -> CounterexampleReport:
    """
    Random digit-cylinder tests: the averaged trade-off
    2 alpha + (pi^2/3) 2^n beta >= 1 and the supremum version
    alpha + sup_k beta_k >= 1 - (1 - 2^-n)^{2^n}.

    The smallest left-hand sides over the sweep are reported with the alpha
    range the sweep reached.
    """
    logger.debug(f"[interval_supp_report] Invoked. n={n}, depth={depth}, trials={trials}, projective={projective}")
    if trials < 1:
        raise OutOfRange(f"Need trials >= 1, got {trials}")
    model = IntervalModel(n=n, m=depth)
    masks = _cylinder_masks(model)
    rng = np.random.default_rng(seed)
    floor_sup = -math.expm1(_log_no_full_zero_digit(n, 2**n))

    worst_avg, worst_sup = math.inf, math.inf
    alpha_min, alpha_max = math.inf, -math.inf
    for _ in range(trials):
        e = cylinder_errors(model, _random_acceptance(rng, model.cells, projective), masks)
        alpha_min = min(alpha_min, e["alpha"])
        alpha_max = max(alpha_max, e["alpha"])
        worst_avg = min(worst_avg, 2.0 * e["alpha"] + (math.pi**2 / 3.0) * 2.0**n * e["beta_mixture"])
        worst_sup = min(worst_sup, e["alpha"] + e["beta_sup"])

    rep = CounterexampleReport(
        name="interval_supp",
        parameters={"n": n, "depth": depth, "trials": trials, "seed": seed, "projective": projective},
    )
    rep.value("sup_floor", floor_sup)
    rep.value("alpha_min", alpha_min)
    rep.value("alpha_max", alpha_max)
    rep.value("worst_tradeoff_lhs", worst_avg)
    rep.value("worst_sup_tradeoff_lhs", worst_sup)
    rep.check("tradeoff_random_tests", worst_avg, ">=", 1.0, 1e-12)
    rep.check("sup_tradeoff_random_tests", worst_sup, ">=", floor_sup, 1e-12)
    return rep


def interval_monte_carlo(n: int, r: float, samples: int = 100000, seed: int = 0) -> dict:
    """
    Seeded Monte Carlo estimate of the constructed test's errors, for
    demonstration next to the exact values.

    Components k are drawn from q by a Zipf(2) sampler; given k, the number of
    digits d <= m_n that vanish in all coordinates is binomial.
    """
    m = threshold_depth(n, r)
    rng = np.random.default_rng(seed)
    p0 = 2.0 ** (-n)
    null_reject = rng.binomial(m, p0, size=samples) > 0
    k = rng.zipf(2.0, size=samples)
    alt_accept = (k > m) & (rng.binomial(m, p0, size=samples) == 0)
    alpha_hat = float(null_reject.mean())
    beta_hat = float(alt_accept.mean())
    log_keep = _log_no_full_zero_digit(n, m)
    return {
        "n": n,
        "r": r,
        "m_n": m,
        "samples": samples,
        "seed": seed,
        "alpha_hat": alpha_hat,
        "alpha_stderr": math.sqrt(alpha_hat * (1.0 - alpha_hat) / samples),
        "beta_hat": beta_hat,
        "beta_stderr": math.sqrt(beta_hat * (1.0 - beta_hat) / samples),
        "alpha_exact": -math.expm1(log_keep),
        "beta_exact": math.exp(log_keep) * IntervalModel.tail_weight(m),
    }
