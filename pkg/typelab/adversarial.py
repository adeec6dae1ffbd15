"""
Exact errors of the Neyman-Pearson test of a certified hull minimizer under
arbitrarily varying product states.

For a strategy (k_1, ..., k_n) of generator indices, the product state is
sigma_{k_1} x ... x sigma_{k_n}. Markov's inequality on the likelihood ratio
and the first-order optimality conditions give
    beta  <= exp(-n (r   + log(1 - theta)))
    alpha <= exp(-n (H_r + log(1 - theta)))
for every strategy; the check evaluates both sides exactly.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from core.config import STRATEGY_CAP
from core.parallel import parallel_map
from core.utils import CertificateMissing, KindMismatch
from composite.hulls import CertificateReport, MinimizerPair
from composite.sets import HypothesisSet
from divergence.renyi import classical_psi
from typelab.symmetric import SymmetricTest, acceptance_probability_product, np_test

logger = logging.getLogger(__name__)

BOUND_RTOL = 1e-9
RANDOM_STRATEGIES = 256

Strategy = Tuple[int, ...]


@dataclass
class StrategyResult:
    strategy: Strategy
    probability: float

    def to_dict(self) -> dict:
        return {"strategy": list(self.strategy), "probability": self.probability}


@dataclass
class AdversarialReport:
    n: int
    r: float
    c: float
    alpha_star: float
    theta: float
    r_eff: float
    hr_eff: float
    beta_bound: float
    alpha_bound: float
    worst_beta: StrategyResult
    worst_alpha: StrategyResult
    beta_at_minimizer: float
    alpha_at_minimizer: float
    strategies_checked: int
    exhaustive: bool
    passed: bool
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "c": self.c,
            "alpha_star": self.alpha_star,
            "theta": self.theta,
            "r_eff": self.r_eff,
            "hr_eff": self.hr_eff,
            "beta_bound": self.beta_bound,
            "alpha_bound": self.alpha_bound,
            "worst_beta": self.worst_beta,
            "worst_alpha": self.worst_alpha,
            "beta_at_minimizer": self.beta_at_minimizer,
            "alpha_at_minimizer": self.alpha_at_minimizer,
            "strategies_checked": self.strategies_checked,
            "exhaustive": self.exhaustive,
            "pass": self.passed,
            "notes": self.notes,
        }


def _single_letter_factor(generator: np.ndarray, ratio: np.ndarray) -> float:
    return float(np.dot(generator, ratio))


def _strategies(
    generators: Sequence[np.ndarray],
    ratio: np.ndarray,
    n: int,
    supplied: Optional[Iterable[Sequence[int]]],
    cap: int,
    seed: int,
) -> Tuple[List[Strategy], bool]:
    if supplied is not None:
        return [tuple(int(k) for k in s) for s in supplied], False
    m = len(generators)
    # the test is symmetric, so only the multiset of choices matters
    if math.comb(n + m - 1, m - 1) <= cap:
        return list(itertools.combinations_with_replacement(range(m), n)), True
    logger.info(f"Strategy multisets for m={m}, n={n} exceed the cap {cap}; using greedy and random strategies")
    greedy = int(np.argmax([_single_letter_factor(g, ratio) for g in generators]))
    rng = np.random.default_rng(seed)
    out = [(greedy,) * n]
    out += [tuple(int(k) for k in rng.integers(0, m, size=n)) for _ in range(RANDOM_STRATEGIES)]
    return out, False


def _worst(
    test: SymmetricTest, generators: Sequence[np.ndarray], strategies: List[Strategy], reject: bool
) -> StrategyResult:
    def _eval(s: Strategy) -> float:
        return acceptance_probability_product(test, [generators[k] for k in s], reject=reject)

    probs = parallel_map(_eval, strategies)
    idx = int(np.argmax(probs))
    return StrategyResult(strategy=strategies[idx], probability=float(probs[idx]))


def adversarial_product_errors(
    pair: MinimizerPair,
    R: HypothesisSet,
    S: HypothesisSet,
    n: int,
    certificate: Optional[CertificateReport] = None,
    strategies: Optional[Iterable[Sequence[int]]] = None,
    null_strategies: Optional[Iterable[Sequence[int]]] = None,
    cap: int = STRATEGY_CAP,
    seed: int = 0,
) -> AdversarialReport:
    """
    Check the adversarial error bounds of the minimizer's NP test.

    Args:
        pair: Hull minimizer (over smoothed sets when pair.theta > 0).
        R: Unsmoothed null generators.
        S: Unsmoothed alternative generators.
        n: Number of copies.
        certificate: A passing optimality certificate for `pair`.
        strategies: Alternative strategies (index sequences); default enumerates
            all multisets when within `cap`, else greedy plus seeded random.
        null_strategies: Same for the null side.

    Raises:
        CertificateMissing: no passing certificate supplied.
    """
    logger.debug(f"[adversarial_product_errors] Invoked. n={n}, r={pair.r}")
    if certificate is None or not certificate.passed:
        raise CertificateMissing("A passing optimality certificate is required before the adversarial check")
    if R.kind != "classical" or S.kind != "classical":
        raise KindMismatch("Adversarial check needs classical sets")

    p, q, a = pair.rho_star, pair.sigma_star, pair.alpha_star
    psi = classical_psi(p, q, a)
    log_theta = math.log1p(-pair.theta)
    r_eff = a * pair.c_star - psi
    hr_eff = (a - 1.0) * pair.c_star - psi
    notes = []
    if certificate.degenerate:
        notes.append("degenerate certificate: the beta bound is not implied by the first-order conditions")
    if abs(r_eff - pair.r) > 1e-6 * max(1.0, pair.r):
        notes.append(f"alpha c - psi = {r_eff:.12g} differs from r = {pair.r:.12g}")

    test = np_test(p, q, pair.c_star, n)
    beta_bound = math.exp(-n * (r_eff + log_theta))
    alpha_bound = math.exp(-n * (hr_eff + log_theta))

    s_gens = [np.asarray(g) for g in S.states]
    r_gens = [np.asarray(g) for g in R.states]
    s_strats, exhaustive_s = _strategies(s_gens, (p / q) ** a, n, strategies, cap, seed)
    r_strats, exhaustive_r = _strategies(r_gens, (q / p) ** (1.0 - a), n, null_strategies, cap, seed + 1)

    worst_beta = _worst(test, s_gens, s_strats, reject=False)
    worst_alpha = _worst(test, r_gens, r_strats, reject=True)
    beta_min = acceptance_probability_product(test, [q] * n)
    alpha_min = acceptance_probability_product(test, [p] * n, reject=True)

    passed = (
        worst_beta.probability <= beta_bound * (1.0 + BOUND_RTOL)
        and worst_alpha.probability <= alpha_bound * (1.0 + BOUND_RTOL)
    )
    if passed:
        logger.info(
            f"Adversarial check passed at n={n}: beta {worst_beta.probability:.3e} <= {beta_bound:.3e}, "
            f"alpha {worst_alpha.probability:.3e} <= {alpha_bound:.3e}"
        )
    else:
        logger.warning(
            f"Adversarial bound violated at n={n}: beta {worst_beta.probability:.3e} vs {beta_bound:.3e}, "
            f"alpha {worst_alpha.probability:.3e} vs {alpha_bound:.3e}"
        )
    return AdversarialReport(
        n=n,
        r=pair.r,
        c=pair.c_star,
        alpha_star=a,
        theta=pair.theta,
        r_eff=r_eff,
        hr_eff=hr_eff,
        beta_bound=beta_bound,
        alpha_bound=alpha_bound,
        worst_beta=worst_beta,
        worst_alpha=worst_alpha,
        beta_at_minimizer=beta_min,
        alpha_at_minimizer=alpha_min,
        strategies_checked=len(s_strats) + len(r_strats),
        exhaustive=exhaustive_s and exhaustive_r,
        passed=passed,
        notes=notes,
    )
