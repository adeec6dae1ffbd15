"""
Geometric-mean upper bounds for a two-element quantum alternative.

For any null set R and alternative {sigma1, sigma2} the composite Stein and
direct exponents are bounded by the pairwise quantities against the
(subnormalized) geometric mean G = sigma1 # sigma2:
    s(R || {sigma1, sigma2}) <= D(R || G),   d_r <= H_r(R || G).
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, List, Sequence, Tuple

import numpy as np

from core.extreal import ExtReal
from core.parallel import parallel_map
from core.utils import KindMismatch
from composite.sets import HypothesisSet
from divergence.renyi import rel_entropy
from hermcore.linalg import fidelity, geometric_mean
from hermcore.operators import as_matrix
from tradeoff.hoeffding import hoeffding

logger = logging.getLogger(__name__)


@dataclass
class GeommeanBounds:
    trace_geommean: float
    fidelity: float
    neg_log_trace: float
    stein_bound: ExtReal
    stein_pairwise: ExtReal
    hoeffding_rows: List[Tuple[float, ExtReal, ExtReal]]

    @property
    def stein_gap(self) -> ExtReal:
        return self.stein_pairwise - self.stein_bound

    def to_dict(self) -> dict:
        return {
            "trace_geommean": self.trace_geommean,
            "fidelity": self.fidelity,
            "neg_log_trace": self.neg_log_trace,
            "stein_bound": self.stein_bound,
            "stein_pairwise": self.stein_pairwise,
            "stein_gap": self.stein_gap,
            "hoeffding": [
                {"r": r, "bound": b, "pairwise": p} for r, b, p in self.hoeffding_rows
            ],
        }


def geommean_composite_bounds(
    R: HypothesisSet, sigma1: Any, sigma2: Any, r_grid: Sequence[float] = ()
) -> GeommeanBounds:
    """
    D(R||sigma1#sigma2) and H_r(R||sigma1#sigma2) next to the pairwise minima.

    Raises:
        SupportMismatch: when the geometric mean is not computable.
    """
    if R.kind != "quantum":
        raise KindMismatch("Geometric-mean bounds take a quantum null set")
    s1, s2 = as_matrix(sigma1), as_matrix(sigma2)
    g = geometric_mean(s1, s2, 0.5)
    lam = float(np.real(np.trace(g)))
    stein_bound = min(rel_entropy(rho, g) for rho in R)
    stein_pairwise = min(rel_entropy(rho, s) for rho in R for s in (s1, s2))

    def _row(r: float) -> Tuple[float, ExtReal, ExtReal]:
        bound = min(hoeffding(rho, g, r) for rho in R)
        pairwise = min(hoeffding(rho, s, r) for rho in R for s in (s1, s2))
        return r, bound, pairwise

    rows = parallel_map(_row, list(r_grid))
    logger.debug(f"Geometric-mean bound: Tr G = {lam:.12g}, D(R||G) = {stein_bound:.12g}")
    return GeommeanBounds(
        trace_geommean=lam,
        fidelity=fidelity(s1, s2),
        neg_log_trace=-math.log(lam) if lam > 0 else math.inf,
        stein_bound=stein_bound,
        stein_pairwise=stein_pairwise,
        hoeffding_rows=rows,
    )
