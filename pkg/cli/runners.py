"""
Subcommand runners behind `explab <command>`.

Each runner turns a RunConfig into a RunResult: a JSON payload, an optional
curve for CSV output, and whether every asserted inequality held.
"""

import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from cli.config import RunConfig, load_json
from cli.emit import emit_curve, emit_report
from composite import (
    HypothesisSet,
    SolverConfig,
    geommean_composite_bounds,
    minimize_Hr_over_hulls,
    optimality_certificate,
    pairwise_table,
    set_anti_divergence,
    set_hoeffding,
)
from core.parallel import parallel_map
from core.utils import ExplabError, UserInputError
from divergence import evaluate, parse_kind, state_from_json
from divergence.states import classical_array
from gallery import (
    CounterexampleReport,
    coin_example_report,
    interval_example_report,
    interval_monte_carlo,
    interval_supp_report,
    minimal_triple,
    pure_state_report,
    semiclassical_combine,
    stein_gap_report,
    tune_direct_example,
    tune_stein_example,
    vector_from_json,
)
from gallery.interval import MAX_CYLINDER_BITS
from hermcore import as_matrix
from tradeoff import (
    LegendreData,
    hellinger_arc,
    hoeffding,
    hoeffding_anti,
    legendre,
    lmgf,
    solve_rate_alpha,
    tilde_psi,
)
from typelab import (
    adversarial_product_errors,
    ball_test,
    exact_errors,
    np_test,
    tv_lower_bound,
    type_round_halfspace,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


@dataclass
class RunResult:
    payload: Any
    passed: bool = True
    curve: Optional[List[Tuple[Any, ...]]] = None
    header: Tuple[str, ...] = ("x", "value")
    inequalities: List[Any] = field(default_factory=list)


def _state(config: RunConfig, name: str) -> Any:
    return state_from_json(load_json(getattr(config, name), name), field_name=name)


def _set(config: RunConfig, name: str, label: str) -> HypothesisSet:
    return HypothesisSet.from_json(load_json(getattr(config, name), name), label)


def _report_result(rep: CounterexampleReport) -> RunResult:
    return RunResult(payload=rep, passed=rep.passed, inequalities=rep.rows)


# divergence


def run_divergence(config: RunConfig) -> RunResult:
    if config.kind is None:
        raise UserInputError("--kind is required", field="kind")
    kind = parse_kind(config.kind)
    rho, sigma = _state(config, "rho"), _state(config, "sigma")
    if kind.needs_alpha and len(config.alpha) > 1:
        values = parallel_map(lambda a: evaluate(kind, rho, sigma, a).value, config.alpha)
        rows = [(a, v) for a, v in zip(config.alpha, values)]
        return RunResult(payload={"kind": kind.value, "curve": rows}, curve=rows, header=("alpha", "value"))
    alpha = config.alpha[0] if config.alpha else None
    return RunResult(payload=evaluate(kind, rho, sigma, alpha))


# tradeoff


def _tradeoff_curve(fn: Callable[[float], Any], xs: Sequence[float], header: Tuple[str, str]) -> RunResult:
    values = parallel_map(fn, xs)
    rows = [(x, v) for x, v in zip(xs, values)]
    return RunResult(payload={header[1]: rows}, curve=rows, header=header)


def run_tradeoff(config: RunConfig) -> RunResult:
    which = config.target or "hoeffding"
    rho, sigma = _state(config, "rho"), _state(config, "sigma")
    if which == "hoeffding":
        return _tradeoff_curve(lambda r: hoeffding(rho, sigma, r), config.require("r"), ("r", "H_r"))
    if which == "anti":
        return _tradeoff_curve(lambda r: hoeffding_anti(rho, sigma, r), config.require("r"), ("r", "H*_r"))
    if which == "arc":
        if config.r:
            points = parallel_map(lambda r: solve_rate_alpha(rho, sigma, r), config.r)
        else:
            points = parallel_map(lambda a: hellinger_arc(rho, sigma, a), config.require("alpha"))
        rows = [(p.alpha, p.rate_to_sigma, p.rate_to_rho) for p in points]
        return RunResult(payload={"points": points}, curve=rows, header=("alpha", "rate_to_sigma", "rate_to_rho"))

    data = LegendreData.from_pair(rho, sigma)
    if which == "TildePsi":
        rows = [(r, *tilde_psi(data, r)) for r in config.require("r")]
        return RunResult(
            payload={"constants": data, "rows": rows}, curve=rows, header=("r", "TildePsi", "case")
        )
    if which in ("Psi", "PsiMinus"):
        rows = [(c, legendre(data, which, c)) for c in config.require("grid")]
        return RunResult(payload={"constants": data, "rows": rows}, curve=rows, header=("c", which))
    if which == "lmgf":
        rows = [(a, lmgf(data, a)) for a in config.require("grid")]
        return RunResult(payload={"constants": data, "rows": rows}, curve=rows, header=("a", "Lambda"))
    raise UserInputError(f"Unknown tradeoff quantity '{which}'", field="target")


# composite


def _hull(config: RunConfig, R: HypothesisSet, S: HypothesisSet, r: float):
    pair = minimize_Hr_over_hulls(R, S, r, SolverConfig(theta=config.theta))
    cert = optimality_certificate(pair, R, S, raise_on_failure=False)
    return pair, cert


def run_composite(config: RunConfig) -> RunResult:
    which = config.target or "divergence"
    if which == "bounds":
        R = _set(config, "null_set", "R")
        s1, s2 = _state(config, "sigma"), _state(config, "sigma2")
        return RunResult(payload=geommean_composite_bounds(R, s1, s2, config.r))

    R, S = _set(config, "null_set", "R"), _set(config, "alt_set", "S")
    if which == "divergence":
        if config.kind is None:
            raise UserInputError("--kind is required", field="kind")
        alpha = config.alpha[0] if config.alpha else None
        table = pairwise_table(config.kind, R, S, alpha=alpha)
        value = min(v for row in table for v in row)
        return RunResult(payload={"kind": config.kind, "value": value, "table": table})
    if which == "hoeffding":
        return _tradeoff_curve(lambda r: set_hoeffding(R, S, r), config.require("r"), ("r", "H_r"))
    if which == "anti":
        return RunResult(payload=set_anti_divergence(config.single("r"), R, S, config.alpha))
    if which == "hull":
        pair, cert = _hull(config, R, S, config.single("r"))
        return RunResult(payload={"minimizer": pair, "certificate": cert}, passed=cert.passed)
    raise UserInputError(f"Unknown composite quantity '{which}'", field="target")


# typelab


def _np_row(p: np.ndarray, q: np.ndarray, n: int, c: float) -> Dict[str, Any]:
    test = np_test(p, q, c, n)
    errors = exact_errors(test, [p], [q])
    return {"n": n, "c": c, **errors.to_dict(), "tv_lower_bound": tv_lower_bound(p, q, n)}


def run_typelab(config: RunConfig) -> RunResult:
    which = config.target or "np"
    if which == "adversarial":
        R, S = _set(config, "null_set", "R"), _set(config, "alt_set", "S")
        pair, cert = _hull(config, R, S, config.single("r"))
        reports = [
            adversarial_product_errors(pair, R, S, n, certificate=cert, seed=config.seed) for n in config.require("n")
        ]
        return RunResult(
            payload={"minimizer": pair, "certificate": cert, "reports": reports},
            passed=all(rep.passed for rep in reports),
        )

    p = classical_array(_state(config, "rho"))
    ns = config.require("n")
    if which == "round":
        if config.c is None:
            raise UserInputError("--c is required", field="c")
        types = [type_round_halfspace(p, config.require("v"), config.c, n) for n in ns]
        rows = [(t.n, *t.counts) for t in types]
        return RunResult(
            payload={"types": types}, curve=rows, header=("n", *[f"x{i}" for i in range(p.size)])
        )

    q = classical_array(_state(config, "sigma"))
    if which == "np":
        if config.c is not None:
            c = config.c
        else:
            c = solve_rate_alpha(p, q, config.single("r")).psi1
        rows = parallel_map(lambda n: _np_row(p, q, n, c), ns)
        curve = [(row["n"], row["log_alpha"], row["log_beta"]) for row in rows]
        return RunResult(payload={"c": c, "rows": rows}, curve=curve, header=("n", "log_alpha", "log_beta"))
    if which == "ball":
        r = config.single("r")

        def _ball(n: int) -> Dict[str, Any]:
            test = ball_test(q, r, n)
            errors = exact_errors(test, [p], [q])
            return {
                "n": n,
                "r": r,
                **errors.to_dict(),
                "log_beta_bound": test.meta["log_beta_bound"],
                "bound_ok": test.meta["bound_ok"],
            }

        rows = parallel_map(_ball, ns)
        curve = [(row["n"], row["log_alpha"], row["log_beta"], row["log_beta_bound"]) for row in rows]
        return RunResult(
            payload={"rows": rows},
            passed=all(row["bound_ok"] for row in rows),
            curve=curve,
            header=("n", "log_alpha", "log_beta", "log_beta_bound"),
        )
    raise UserInputError(f"Unknown typelab test '{which}'", field="target")


# gallery


def _triple(config: RunConfig) -> Tuple[Optional[np.ndarray], np.ndarray, np.ndarray]:
    if config.sigma is None and config.sigma2 is None:
        rho, s1, s2 = minimal_triple()
        if config.rho is not None:
            rho = as_matrix(_state(config, "rho"))
        return rho, s1, s2
    s1, s2 = as_matrix(_state(config, "sigma")), as_matrix(_state(config, "sigma2"))
    rho = as_matrix(_state(config, "rho")) if config.rho is not None else None
    return rho, s1, s2


def _vectors(config: RunConfig, name: str) -> List[np.ndarray]:
    payload = load_json(getattr(config, name), name)
    if not isinstance(payload, list):
        raise UserInputError("Expected a JSON list of vectors", field=name)
    return [vector_from_json(v, f"{name}[{i}]") for i, v in enumerate(payload)]


def _gallery_interval(config: RunConfig) -> CounterexampleReport:
    ns, rs = config.require("n"), config.require("r")
    rep = CounterexampleReport(name="interval_grid", parameters={"n": list(ns), "r": list(rs)})
    for n in ns:
        for r in rs:
            rep.merge(interval_example_report(n, r, config.depth), f"n={n},r={r:g}")
    if config.trials > 0:
        n0 = ns[0]
        if 2 * n0 <= MAX_CYLINDER_BITS:
            rep.merge(interval_supp_report(n0, 2, config.trials, config.seed), f"random_tests_n={n0}")
        else:
            rep.notes.append(f"random cylinder tests skipped: 2n = {2 * n0} bits exceed {MAX_CYLINDER_BITS}")
    if config.samples > 0:
        rep.values["monte_carlo"] = [
            interval_monte_carlo(n, r, config.samples, config.seed) for n in ns for r in rs
        ]
    return rep


def _gallery_semiclassical(config: RunConfig) -> CounterexampleReport:
    R, S = _set(config, "null_set", "R"), _set(config, "alt_set", "S")
    _, rep = semiclassical_combine([as_matrix(x) for x in R], [as_matrix(x) for x in S])
    return rep


def run_gallery(config: RunConfig) -> RunResult:
    which = config.target
    if which == "coin":
        grid = config.r or tuple(config.k * x for x in (0.2, 0.5, 1.0, 1.5))
        return _report_result(coin_example_report(config.k, grid))
    if which == "interval":
        return _report_result(_gallery_interval(config))
    if which == "stein":
        rho, s1, s2 = _triple(config)
        rep = stein_gap_report(rho, s1, s2)
        for r in config.r:
            rep.merge(tune_stein_example(rho, s1, s2, r), f"tuned_r={r:g}")
        return _report_result(rep)
    if which == "direct":
        rho, s1, s2 = _triple(config)
        r = config.single("r")
        t = r if config.t is None else config.t
        return _report_result(tune_direct_example(rho, s1, s2, r, t, config.s))
    if which == "pure":
        return _report_result(
            pure_state_report(_vectors(config, "null_set"), _vectors(config, "alt_set"), config.require("n"))
        )
    if which == "semiclassical":
        return _report_result(_gallery_semiclassical(config))
    raise UserInputError(f"Unknown gallery example '{which}'", field="target")


def run_verify(config: RunConfig) -> RunResult:
    from cli.verify import SUITES, run_suites

    target = config.target or "all"
    if target == "list":
        return RunResult(payload={"suites": {name: suite.description for name, suite in SUITES.items()}})
    rep = run_suites(target, config.tol, config.seed)
    return _report_result(rep)


RUNNERS: Dict[str, Callable[[RunConfig], RunResult]] = {
    "divergence": run_divergence,
    "tradeoff": run_tradeoff,
    "composite": run_composite,
    "typelab": run_typelab,
    "gallery": run_gallery,
    "verify": run_verify,
}


def _inequality_rows(result: RunResult) -> List[Tuple[Any, ...]]:
    return [(row.name, row.lhs, row.relation, row.rhs, row.slack, row.passed) for row in result.inequalities]


def run(config: RunConfig) -> int:
    """
    Execute one command and write its output.

    Returns:
        int: 0 when every asserted inequality held, 1 when one failed, 2 on an
        input or numeric error.
    """
    logger.info(f"[run] Invoked. command={config.command}, target={config.target}")
    runner = RUNNERS.get(config.command)
    if runner is None:
        logger.error(f"Unknown command '{config.command}'")
        return EXIT_ERROR
    try:
        result = runner(config)
    except ExplabError as e:
        logger.error(f"{config.command} failed: {type(e).__name__}: {e}")
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return EXIT_ERROR

    if config.format == "csv":
        if result.curve is not None:
            text = emit_curve(result.curve, "csv", config.out, result.header)
        else:
            text = emit_curve(
                _inequality_rows(result), "csv", config.out, ("name", "lhs", "relation", "rhs", "slack", "pass")
            )
    else:
        text = emit_report(result.payload, config.out)
    if config.out is None:
        sys.stdout.write(text)

    if not result.passed:
        logger.warning(f"{config.command}: at least one asserted inequality failed")
        return EXIT_FAILED
    return EXIT_OK
