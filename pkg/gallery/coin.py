"""
Fair coin against two biased coins, k flips per copy.

rho = (1/2, 1/2)^k, sigma1 = (1/4, 3/4)^k, sigma2 = (3/4, 1/4)^k. For every
outcome x of N flips rho(x) = (2/sqrt 3)^N sqrt(sigma1(x) sigma2(x)), so by the
arithmetic-geometric mean inequality every test has
    1 - alpha <= (2/sqrt 3)^N max_j beta_j,
so the composite strong-converse exponent is at least r - k log(2/sqrt 3)
while each pairwise exponent is H*_r.
"""

import logging
import math
from typing import List, Sequence, Tuple

import numpy as np
from scipy.special import gammaln

from core.parallel import parallel_map
from core.utils import OutOfRange
from divergence.renyi import max_rel_entropy, rel_entropy
from gallery.report import CounterexampleReport
from tradeoff.arc import r_infty
from tradeoff.hoeffding import hoeffding_anti

logger = logging.getLogger(__name__)

FINITE_N_FLIPS = 14
CONSTANT_TOL = 1e-9


def coin_states(k: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """k-fold products of the fair coin and the two biased coins."""
    if k < 1:
        raise OutOfRange(f"k must be at least 1, got {k}")
    rho, s1, s2 = np.ones(1), np.ones(1), np.ones(1)
    for _ in range(k):
        rho = np.kron(rho, [0.5, 0.5])
        s1 = np.kron(s1, [0.25, 0.75])
        s2 = np.kron(s2, [0.75, 0.25])
    return rho, s1, s2


def _log_binom(n: int, a: np.ndarray) -> np.ndarray:
    return gammaln(n + 1.0) - gammaln(a + 1.0) - gammaln(n - a + 1.0)


def finite_n_worst_ratio(flips: int) -> Tuple[float, int]:
    """
    max over all {0,1}-valued symmetric tests on `flips` flips of
    (1 - alpha) / ((2/sqrt 3)^flips max_j beta_j), with the maximizing test mask.
    """
    a = np.arange(flips + 1)
    lb = _log_binom(flips, a)
    p_rho = np.exp(lb - flips * math.log(2.0))
    p_s1 = np.exp(lb + a * math.log(0.25) + (flips - a) * math.log(0.75))
    p_s2 = np.exp(lb + a * math.log(0.75) + (flips - a) * math.log(0.25))
    masks = (np.arange(1, 2 ** (flips + 1))[:, None] >> a[None, :]) & 1
    success = masks @ p_rho
    beta = np.maximum(masks @ p_s1, masks @ p_s2)
    ratio = success / ((2.0 / math.sqrt(3.0)) ** flips * beta)
    idx = int(np.argmax(ratio))
    return float(ratio[idx]), idx + 1


def coin_example_report(k: int, r_grid: Sequence[float]) -> CounterexampleReport:
    """
    Constants, pairwise strong-converse exponents and the composite gap on a grid of rates.

    Asserts gap > 0 for r > D and gap >= k log sqrt 3 for r >= k log 4, plus the
    exact finite-n inequality for every projective symmetric test with kn <= 14.
    """
    logger.debug(f"[coin_example_report] Invoked. k={k}, grid of {len(r_grid)}")
    rho, s1, s2 = coin_states(k)
    rep = CounterexampleReport(name="coin_example", parameters={"k": k, "r_grid": list(r_grid)})

    d = rep.value("D", rel_entropy(rho, s1))
    d_inf = rep.value("D_inf", max_rel_entropy(rho, s1))
    r_inf = rep.value("r_inf", r_infty(rho, s1))
    rep.check("D_closed_form", d, "==", k * math.log(2.0 / math.sqrt(3.0)), CONSTANT_TOL)
    rep.check("D_inf_closed_form", d_inf, "==", k * math.log(2.0), CONSTANT_TOL)
    rep.check("r_inf_closed_form", r_inf, "==", k * math.log(4.0), CONSTANT_TOL)
    rep.check("D_symmetric", rel_entropy(rho, s2), "==", d, CONSTANT_TOL)

    log_ratio = k * math.log(2.0 / math.sqrt(3.0))

    def _row(r: float) -> dict:
        pairwise = max(hoeffding_anti(rho, s1, r), hoeffding_anti(rho, s2, r))
        bound = r - log_ratio
        return {"r": r, "pairwise_sc": pairwise, "composite_lower_bound": bound, "gap": bound - pairwise}

    rows = parallel_map(_row, list(r_grid))
    rep.values["grid"] = rows
    for row in rows:
        r = row["r"]
        if r >= k * math.log(4.0) - 1e-12:
            rep.check(f"gap_at_r={r:g}", row["gap"], ">=", k * math.log(math.sqrt(3.0)), CONSTANT_TOL)
        elif r > d + 1e-12:
            rep.check(f"gap_at_r={r:g}", row["gap"], ">", 0.0, 0.0)

    finite: List[dict] = []
    for n in range(1, FINITE_N_FLIPS // k + 1):
        ratio, mask = finite_n_worst_ratio(k * n)
        finite.append({"n": n, "flips": k * n, "worst_ratio": ratio, "mask": mask})
        rep.check(f"finite_n_inequality_n={n}", ratio, "<=", 1.0, 1e-12)
    rep.values["finite_n"] = finite
    return rep
