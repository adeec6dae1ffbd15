"""
Set-to-set divergences over finite hypothesis sets.

A set divergence is the infimum of the pairwise value over R x S; the
anti-divergence H*_r(R||S) is the supremum of the pairwise anti-divergence.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from core.extreal import INF, ExtReal
from core.parallel import parallel_map
from core.utils import KindMismatch, SupportMismatch, UserInputError
from composite.sets import HypothesisSet
from divergence.chernoff import chernoff
from divergence.dispatch import evaluate, parse_kind
from divergence.renyi import petz_renyi, rel_entropy, sandwiched_renyi
from tradeoff.hoeffding import hoeffding, hoeffding_anti

logger = logging.getLogger(__name__)

HOEFFDING = "hoeffding"


def _check_kinds(R: HypothesisSet, S: HypothesisSet) -> None:
    if R.kind != S.kind:
        raise KindMismatch(f"Set '{R.label}' is {R.kind} but '{S.label}' is {S.kind}")


def pairwise_table(
    kind: str,
    R: HypothesisSet,
    S: HypothesisSet,
    alpha: Optional[float] = None,
    r: Optional[float] = None,
) -> List[List[ExtReal]]:
    """Pairwise values E(rho_i, sigma_j) as a |R| x |S| table."""
    _check_kinds(R, S)
    pairs = list(itertools.product(range(len(R)), range(len(S))))
    if kind == HOEFFDING:
        if r is None:
            raise UserInputError("Hoeffding set divergence needs a rate r", field="r")
        fn = lambda ij: hoeffding(R.states[ij[0]], S.states[ij[1]], r)  # noqa: E731
    else:
        k = parse_kind(kind)
        fn = lambda ij: evaluate(k, R.states[ij[0]], S.states[ij[1]], alpha).value  # noqa: E731
    values = parallel_map(fn, pairs)
    table = [[INF] * len(S) for _ in range(len(R))]
    for (i, j), v in zip(pairs, values):
        table[i][j] = v
    return table


def set_divergence(
    kind: str,
    R: HypothesisSet,
    S: HypothesisSet,
    alpha: Optional[float] = None,
    r: Optional[float] = None,
) -> ExtReal:
    """
    inf over rho in R, sigma in S of E(rho||sigma), exact on finite sets.

    Args:
        kind: Any divergence kind, or "hoeffding" (with r).
        R: Null hypothesis set.
        S: Alternative hypothesis set.
        alpha: Order for Renyi kinds.
        r: Rate for "hoeffding".
    """
    table = pairwise_table(kind, R, S, alpha=alpha, r=r)
    return min(v for row in table for v in row)


def set_chernoff(R: HypothesisSet, S: HypothesisSet) -> ExtReal:
    _check_kinds(R, S)
    return min(chernoff(a, b) for a in R for b in S)


def set_hoeffding(R: HypothesisSet, S: HypothesisSet, r: float) -> ExtReal:
    return set_divergence(HOEFFDING, R, S, r=r)


@dataclass
class AntiDivergenceResult:
    r: float
    value: ExtReal
    argmax: Optional[Tuple[int, int]]
    pairwise: List[List[Optional[ExtReal]]]
    excluded: List[Tuple[int, int]] = field(default_factory=list)
    renyi: List[Tuple[float, ExtReal]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "value": self.value,
            "argmax": list(self.argmax) if self.argmax else None,
            "pairwise": self.pairwise,
            "excluded": [list(p) for p in self.excluded],
            "renyi": [list(row) for row in self.renyi],
        }


def _set_renyi(alpha: float, R: HypothesisSet, S: HypothesisSet) -> ExtReal:
    if alpha == 1.0:
        fn = rel_entropy
    elif alpha > 1.0:
        fn = lambda a, b: sandwiched_renyi(a, b, alpha)  # noqa: E731
    else:
        fn = lambda a, b: petz_renyi(a, b, alpha)  # noqa: E731
    return min(fn(a, b) for a in R for b in S)


def set_anti_divergence(
    r: float,
    R: HypothesisSet,
    S: HypothesisSet,
    alpha_grid: Iterable[float] = (),
) -> AntiDivergenceResult:
    """
    H*_r(R||S) = sup over pairs of H*_r(rho||sigma).

    Pairs with D_inf = +inf are reported in `excluded` and left out of the
    supremum. For each alpha in alpha_grid the set Renyi divergence
    min over pairs of D_alpha is also returned (sandwiched above 1, Petz below).
    """
    _check_kinds(R, S)
    pairs = list(itertools.product(range(len(R)), range(len(S))))

    def _one(ij):
        try:
            return hoeffding_anti(R.states[ij[0]], S.states[ij[1]], r)
        except SupportMismatch:
            return None

    values = parallel_map(_one, pairs)
    table: List[List[Optional[ExtReal]]] = [[None] * len(S) for _ in range(len(R))]
    excluded = []
    best, argmax = -INF, None
    for (i, j), v in zip(pairs, values):
        table[i][j] = v
        if v is None:
            excluded.append((i, j))
            continue
        if v > best:
            best, argmax = v, (i, j)
    if excluded:
        logger.warning(f"H*_r: {len(excluded)} pairs with D_inf = +inf excluded from the supremum")
    if argmax is None:
        best = math.nan
    renyi = [(a, _set_renyi(a, R, S)) for a in alpha_grid]
    return AntiDivergenceResult(r=r, value=best, argmax=argmax, pairwise=table, excluded=excluded, renyi=renyi)
