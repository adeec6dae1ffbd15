"""
Command-line surface: run configuration, runners per library module, output
writers and the verification suites.
"""
from cli.config import DEFAULT_TOL, OUTPUT_FORMATS, RunConfig, load_json, parse_grid, parse_int_grid
from cli.emit import curve_csv, emit_curve, emit_report
from cli.runners import EXIT_ERROR, EXIT_FAILED, EXIT_OK, RUNNERS, RunResult, run
from cli.verify import SUITES, Suite, run_suites

__all__ = [
    "DEFAULT_TOL",
    "EXIT_ERROR",
    "EXIT_FAILED",
    "EXIT_OK",
    "OUTPUT_FORMATS",
    "RUNNERS",
    "RunConfig",
    "RunResult",
    "SUITES",
    "Suite",
    "curve_csv",
    "emit_curve",
    "emit_report",
    "load_json",
    "parse_grid",
    "parse_int_grid",
    "run",
    "run_suites",
]
