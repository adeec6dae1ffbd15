"""
Verification suites: seeded checks of the identities and inequalities the
library claims, each returning a CounterexampleReport.

Suites are independent; `run_suites("all", ...)` merges every suite into one
report with the suite name as row prefix.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import numpy as np
from scipy.special import logsumexp

from composite import HypothesisSet, SolverConfig, minimize_Hr_over_hulls, optimality_certificate
from core.utils import UserInputError
from divergence import log_euclidean_renyi, maximal_renyi, petz_renyi, rel_entropy
from gallery import (
    CounterexampleReport,
    coin_example_report,
    coin_states,
    interval_example_report,
    interval_supp_report,
    minimal_triple,
    pure_state_report,
    semiclassical_combine,
    stein_gap_report,
    tune_direct_example,
)
from hermcore import commutator_norm, direct_sum, fidelity, geometric_mean, kron
from hermcore.random_states import random_pd_density, random_probability, random_unit_vector
from tradeoff import LegendreData, hoeffding, hoeffding_anti, r_infty, solve_rate_alpha, tilde_psi
from typelab import adversarial_product_errors, ball_test, exact_errors, type_round_halfspace

logger = logging.getLogger(__name__)

SuiteFn = Callable[[float, int], CounterexampleReport]


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    fn: SuiteFn


def _rng(seed: int, salt: int) -> np.random.Generator:
    return np.random.default_rng([seed, salt])


def _random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def coin_suite(tol: float, seed: int) -> CounterexampleReport:
    rep = CounterexampleReport(name="coin", parameters={"k": [1, 2]})
    for k in (1, 2):
        grid = [k * x for x in (0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6)]
        rep.merge(coin_example_report(k, grid), f"k{k}")
    return rep


def interval_suite(tol: float, seed: int) -> CounterexampleReport:
    rep = CounterexampleReport(name="interval", parameters={"n": [8, 12, 16, 20, 24], "seed": seed})
    for n in (8, 12, 16, 20, 24):
        for r in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6):
            rep.merge(interval_example_report(n, r), f"n{n}.r{r:g}")
    rep.merge(interval_supp_report(8, 2, 1000, seed), "random_tests")
    return rep


def stein_suite(tol: float, seed: int) -> CounterexampleReport:
    rng = _rng(seed, 1)
    rep = CounterexampleReport(name="stein", parameters={"instances": 100, "seed": seed})
    for i in range(100):
        dim = int(rng.integers(2, 5))
        s1 = random_pd_density(dim, rng)
        s2 = random_pd_density(dim, rng)
        rho = random_pd_density(dim, rng)
        rep.merge(stein_gap_report(None, s1, s2), f"{i}.top")
        rep.merge(stein_gap_report(rho, s1, s2), f"{i}.random")
    return rep


def minimal_suite(tol: float, seed: int) -> CounterexampleReport:
    rho, s1, s2 = minimal_triple()
    rep = CounterexampleReport(name="minimal")
    g = geometric_mean(s1, s2, 0.5)
    dg = rep.value("D_rho_geommean", rel_entropy(rho, g))
    d1 = rep.value("D_rho_sigma1", rel_entropy(rho, s1))
    d2 = rep.value("D_rho_sigma2", rel_entropy(rho, s2))
    rep.check("geommean_closed_form", dg, "==", math.log(2.0 * math.sqrt(6.0)), tol)
    rep.check("geommean_below_vertices", dg, "<", min(d1, d2), 1e-3)
    rep.check("trace_geommean_below_fidelity", float(np.real(np.trace(g))), "<=", fidelity(s1, s2), tol)
    rep.merge(stein_gap_report(None, s1, s2), "stein")
    return rep


def direct_suite(tol: float, seed: int) -> CounterexampleReport:
    rho, s1, s2 = minimal_triple()
    rep = CounterexampleReport(name="direct", parameters={"r": 0.2, "t": 0.2})
    rep.merge(tune_direct_example(rho, s1, s2, 0.2, 0.2), "minimal")
    return rep


def renyi_order_suite(tol: float, seed: int) -> CounterexampleReport:
    rng = _rng(seed, 2)
    alphas = (0.25, 0.5, 0.75)
    rep = CounterexampleReport(name="renyi_order", parameters={"instances": 100, "alpha": list(alphas), "seed": seed})
    for i in range(100):
        dim = int(rng.integers(2, 5))
        rho = random_pd_density(dim, rng)
        sigma = random_pd_density(dim, rng)
        noncommuting = commutator_norm(rho, sigma) > 0.05
        for a in alphas:
            dp = petz_renyi(rho, sigma, a)
            dle = log_euclidean_renyi(rho, sigma, a)
            dmax = maximal_renyi(rho, sigma, a)
            tag = f"{i}.a{a:g}"
            rep.check(f"{tag}.log_euclidean_above_petz", dle, ">=", dp, 1e-10)
            rep.check(f"{tag}.maximal_above_log_euclidean", dmax, ">=", dle, 1e-10)
            if noncommuting:
                rep.check(f"{tag}.strict_gap", dle, ">", dp, 1e-6)
    return rep


def _grid_tilde_psi(p: np.ndarray, q: np.ndarray, r: float, d_inf: float) -> float:
    u = np.linspace(0.0, 1.0 - 1e-6, 200001)
    alpha = 1.0 / (1.0 - u)
    psi = logsumexp(alpha[:, None] * np.log(p)[None, :] + (1.0 - alpha)[:, None] * np.log(q)[None, :], axis=1)
    values = u * r - (1.0 - u) * psi
    return float(max(np.max(values), r - d_inf))


def hoeffding_suite(tol: float, seed: int) -> CounterexampleReport:
    rng = _rng(seed, 3)
    rep = CounterexampleReport(name="hoeffding", parameters={"instances": 50, "seed": seed})
    for i in range(50):
        size = int(rng.integers(3, 6))
        p = random_probability(size, rng, floor=0.05)
        q = random_probability(size, rng, floor=0.05)
        d = float(rel_entropy(p, q))
        d_inf = float(np.max(np.log(p / q)))
        r_inf = float(r_infty(p, q))
        data = LegendreData.from_pair(p, q)
        for f in (0.1, 0.3, 0.5, 0.7, 0.9):
            r = f * r_inf
            tag = f"{i}.f{f:g}"
            point = solve_rate_alpha(p, q, r)
            rep.check(f"{tag}.arc_rate", point.rate_to_sigma, "==", r, tol)
            if r < d:
                rep.check(f"{tag}.hoeffding_on_arc", hoeffding(p, q, r), "==", point.rate_to_rho, 1e-7)
            else:
                rep.check(f"{tag}.tilde_psi_on_arc", tilde_psi(data, r)[0], "==", point.rate_to_rho, 1e-7)
                rep.check(f"{tag}.anti_on_arc", hoeffding_anti(p, q, r), "==", point.rate_to_rho, 1e-7)

        r_mid = 0.5 * d
        h_mid = float(hoeffding(p, q, r_mid))
        for t in (0.5, 2.0):
            for s in (0.5, 2.0):
                scaled = hoeffding(t * p, s * q, r_mid - math.log(s))
                rep.check(f"{i}.scaling.t{t:g}.s{s:g}", scaled, "==", h_mid - math.log(t), 1e-8)

        for r in (0.5 * d, d + 0.3 * (r_inf - d), d + 0.7 * (r_inf - d), 1.1 * r_inf):
            value, case = tilde_psi(data, r)
            grid = _grid_tilde_psi(p, q, r, d_inf)
            rep.check(f"{i}.tilde_psi_grid.{case}.r{r:.4g}", value, "==", grid, 1e-7)
    return rep


def ball_suite(tol: float, seed: int) -> CounterexampleReport:
    rho, sigma_a, _ = coin_states(1)
    r = 0.3
    rep = CounterexampleReport(name="ball", parameters={"r": r, "n": list(range(20, 201, 20))})
    h_star = rep.value("anti_hoeffding", float(hoeffding_anti(rho, sigma_a, r)))
    for n in range(20, 201, 20):
        test = ball_test(sigma_a, r, n)
        errors = exact_errors(test, [rho], [sigma_a])
        rep.check(f"n{n}.beta_bound", errors.log_beta, "<=", 2.0 * math.log(n + 1) - n * r, 1e-9)
        log_accept_rho = exact_errors(test, [sigma_a], [rho]).log_beta
        rate = -log_accept_rho / n
        rep.check(f"n{n}.rate_near_anti", abs(rate - h_star), "<=", (2.0 * math.log(n + 1) + 10.0) / n, 0.0)
    return rep


def rounding_suite(tol: float, seed: int) -> CounterexampleReport:
    rng = _rng(seed, 4)
    rep = CounterexampleReport(name="rounding", parameters={"instances": 1000, "seed": seed})
    worst_sum = 0
    worst_negative = 0
    worst_outside = 0
    worst_halfspace = math.inf
    worst_l1 = math.inf
    for _ in range(1000):
        size = int(rng.integers(2, 6))
        p = random_probability(size, rng)
        p[rng.random(size) < 0.2] = 0.0
        if p.sum() == 0.0:
            p[int(rng.integers(size))] = 1.0
        p = p / p.sum()
        support = int(np.count_nonzero(p))
        v = rng.normal(size=size)
        c = float(v @ p) - 0.05 * float(rng.random())
        n = max(1, support * (support - 1)) + int(rng.integers(0, 50))
        t = type_round_halfspace(p, v, c, n)
        counts = np.asarray(t.counts)
        worst_sum = max(worst_sum, abs(int(counts.sum()) - n))
        worst_negative = max(worst_negative, int(-min(0, counts.min())))
        worst_outside = max(worst_outside, int(counts[p == 0].sum()))
        emp = t.empirical()
        worst_halfspace = min(worst_halfspace, float(v @ emp) - c)
        worst_l1 = min(worst_l1, 2.0 * (support - 1) / n - float(np.abs(emp - p).sum()))
    rep.check("counts_sum_to_n", worst_sum, "==", 0, 0.0)
    rep.check("counts_nonnegative", worst_negative, "==", 0, 0.0)
    rep.check("support_kept", worst_outside, "==", 0, 0.0)
    rep.check("halfspace_member", worst_halfspace, ">=", 0.0, 1e-9)
    rep.check("l1_bound", worst_l1, ">=", 0.0, 1e-12)
    return rep


def _separated_pair(rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    while True:
        p = random_probability(3, rng, floor=0.1)
        q = random_probability(3, rng, floor=0.1)
        if float(rel_entropy(p, q)) > 0.3:
            return p, q


def adversarial_suite(tol: float, seed: int) -> CounterexampleReport:
    rng = _rng(seed, 5)
    rep = CounterexampleReport(name="adversarial", parameters={"instances": 20, "n": [4, 8], "seed": seed})
    for i in range(20):
        p, q = _separated_pair(rng)
        R = HypothesisSet.from_states("R", [0.9 * p + 0.1 * random_probability(3, rng) for _ in range(2)])
        S = HypothesisSet.from_states("S", [0.9 * q + 0.1 * random_probability(3, rng) for _ in range(2)])
        r = 0.25 * float(rel_entropy(p, q))
        pair = minimize_Hr_over_hulls(R, S, r, SolverConfig())
        cert = optimality_certificate(pair, R, S, raise_on_failure=False)
        rep.check(f"{i}.certificate_passed", float(cert.passed), "==", 1.0, 0.0)
        if not cert.passed:
            continue
        for n in (4, 8):
            adv = adversarial_product_errors(pair, R, S, n, cert, seed=seed)
            rep.check(f"{i}.n{n}.worst_beta", adv.worst_beta.probability, "<=", adv.beta_bound, 1e-9 * adv.beta_bound)
            rep.check(f"{i}.n{n}.worst_alpha", adv.worst_alpha.probability, "<=", adv.alpha_bound, 1e-9 * adv.alpha_bound)
    return rep


def pure_suite(tol: float, seed: int) -> CounterexampleReport:
    rng = _rng(seed, 6)
    rep = CounterexampleReport(name="pure", parameters={"instances": 10, "seed": seed})
    n_grid = [1, 2, 4, 8, 12, 16, 20, 25, 30]
    for i in range(10):
        dim = int(rng.integers(3, 5))
        psis = [random_unit_vector(dim, rng) for _ in range(2)]
        phis = [random_unit_vector(dim, rng) for _ in range(2)]
        rep.merge(pure_state_report(psis, phis, n_grid), str(i))
    return rep


def geommean_suite(tol: float, seed: int) -> CounterexampleReport:
    rng = _rng(seed, 7)
    rep = CounterexampleReport(name="geommean", parameters={"instances": 100, "seed": seed})
    worst_kron = 0.0
    worst_fid = math.inf
    worst_unit = math.inf
    for _ in range(100):
        a1, b1, a2, b2 = (random_pd_density(2, rng) for _ in range(4))
        lhs = kron(geometric_mean(a1, b1, 0.5), geometric_mean(a2, b2, 0.5))
        rhs = geometric_mean(kron(a1, a2), kron(b1, b2), 0.5)
        worst_kron = max(worst_kron, float(np.max(np.abs(lhs - rhs))))
        f = fidelity(a1, b1)
        tr = float(np.real(np.trace(geometric_mean(a1, b1, 0.5))))
        worst_fid = min(worst_fid, f - tr)
        worst_unit = min(worst_unit, 1.0 - f)
    rep.check("tensor_multiplicative", worst_kron, "<=", 0.0, 1e-9)
    rep.check("trace_below_fidelity", worst_fid, ">=", 0.0, 1e-9)
    rep.check("fidelity_at_most_one", worst_unit, ">=", 0.0, 1e-12)
    return rep


def _block_state(rng: np.random.Generator, u: np.ndarray) -> np.ndarray:
    w = float(rng.uniform(0.2, 0.8))
    m = direct_sum(w * random_pd_density(2, rng), (1.0 - w) * random_pd_density(2, rng))
    return u @ m @ u.conj().T


def _block_scalar(rng: np.random.Generator, u: np.ndarray) -> np.ndarray:
    w = float(rng.uniform(0.1, 0.9))
    m = direct_sum(0.5 * w * np.eye(2), 0.5 * (1.0 - w) * np.eye(2))
    return u @ m @ u.conj().T


def semiclassical_suite(tol: float, seed: int) -> CounterexampleReport:
    rng = _rng(seed, 8)
    rep = CounterexampleReport(name="semiclassical", parameters={"instances": 50, "seed": seed})
    for i in range(50):
        u = _random_unitary(4, rng)
        rhos = [_block_state(rng, u) for _ in range(2)]
        sigmas = [_block_scalar(rng, u) for _ in range(2)]
        _, sub = semiclassical_combine(rhos, sigmas)
        rep.merge(sub, str(i))
    return rep


SUITES: Dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("coin", "fair coin against biased coins, k = 1, 2", coin_suite),
        Suite("interval", "interval example for n in 8..24 and r in 0.1..0.6, plus random digit tests", interval_suite),
        Suite("stein", "Stein gap identity on 100 random invertible triples", stein_suite),
        Suite("minimal", "minimal qubit triple: geometric mean strictly below both vertices", minimal_suite),
        Suite("direct", "direct-exponent separation on the minimal triple at r = t = 0.2", direct_suite),
        Suite("renyi_order", "Petz <= log-Euclidean <= maximal Renyi on 100 random pairs", renyi_order_suite),
        Suite("hoeffding", "arc, anti-Hoeffding, scaling law and tilde-psi grid on 50 classical pairs", hoeffding_suite),
        Suite("ball", "ball test type-II bound and acceptance exponent on the coin pair", ball_suite),
        Suite("rounding", "type rounding into a halfspace on 1000 random instances", rounding_suite),
        Suite("adversarial", "certified hull minimizers against adversarial products", adversarial_suite),
        Suite("pure", "pure-state families up to 30 copies", pure_suite),
        Suite("geommean", "geometric mean multiplicativity and the fidelity bound", geommean_suite),
        Suite("semiclassical", "semiclassical test combination on 50 commuting instances", semiclassical_suite),
    )
}


def run_suites(target: str, tol: float, seed: int) -> CounterexampleReport:
    """
    Run one suite, or all of them merged under their names.

    Raises:
        UserInputError: unknown suite name.
    """
    if target == "all":
        names: List[str] = list(SUITES)
    elif target in SUITES:
        names = [target]
    else:
        raise UserInputError(f"Unknown suite '{target}'; choose from {', '.join(['all', *SUITES])}", field="target")
    report = CounterexampleReport(name=f"verify.{target}", parameters={"tol": tol, "seed": seed})
    for name in names:
        logger.info(f"Running suite {name}")
        report.merge(SUITES[name].fn(tol, seed), name)
    logger.info(f"Verification {target}: {len(report.rows)} checks, {len(report.failures())} failed")
    return report
