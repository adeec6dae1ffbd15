import argparse
import logging
import os
import sys
from importlib import import_module
from typing import List, Optional

from dotenv import load_dotenv

dotenv_path = os.path.join(os.path.dirname(os.path.abspath(__file__)), ".env")
load_dotenv(dotenv_path=dotenv_path)

# core.config reads the environment at import time, so .env is loaded first
from cli.config import DEFAULT_TOL, OUTPUT_FORMATS, RunConfig, parse_grid, parse_int_grid  # noqa: E402
from cli.runners import EXIT_ERROR, run  # noqa: E402
from core.config import EXPLAB_LOG_FILE, EXPLAB_LOG_LEVEL, EXPLAB_THREADS  # noqa: E402
from core.log_formatter import EnhancedLogFormatter, configure_file_logging  # noqa: E402
from core.utils import ExplabError, UserInputError  # noqa: E402

logging.basicConfig(
    level=getattr(logging, EXPLAB_LOG_LEVEL, logging.INFO),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

configure_file_logging(EXPLAB_LOG_FILE)

TOOL_MODULES = {
    "divergence": "divergence.divergence_tools",
    "tradeoff": "tradeoff.tradeoff_tools",
    "composite": "composite.composite_tools",
    "typelab": "typelab.typelab_tools",
    "gallery": "gallery.gallery_tools",
}

TOOL_DESCRIPTIONS = {
    "divergence": "Relative entropies, Renyi families, psi and Chernoff",
    "tradeoff": "Hoeffding exponents, Hellinger arc and Legendre transforms",
    "composite": "Set divergences and certified hull minimizers",
    "typelab": "Permutation-invariant tests with exact errors",
    "gallery": "Explicit constructions with checked inequalities",
}

TARGETS = {
    "divergence": None,
    "tradeoff": ["hoeffding", "anti", "arc", "TildePsi", "Psi", "PsiMinus", "lmgf"],
    "composite": ["divergence", "hoeffding", "anti", "hull", "bounds"],
    "typelab": ["np", "ball", "round", "adversarial"],
    "gallery": ["coin", "interval", "stein", "direct", "pure", "semiclassical"],
}


def safe_print(text):
    # Keep stderr clean when running as an MCP stdio server
    if not sys.stderr.isatty():
        logger.debug(f"[MCP Server] {text}")
        return

    try:
        print(text, file=sys.stderr)
    except UnicodeEncodeError:
        print(text.encode("ascii", errors="replace").decode(), file=sys.stderr)


def configure_safe_logging():
    class SafeEnhancedFormatter(EnhancedLogFormatter):
        """Enhanced ASCII formatter with a fallback for consoles without Unicode."""

        def format(self, record):
            try:
                return super().format(record)
            except UnicodeEncodeError:
                prefix = self._get_ascii_prefix(record.name, record.levelname)
                safe_msg = str(record.getMessage()).encode("ascii", errors="replace").decode("ascii")
                return f"{prefix} {safe_msg}"

    for handler in logging.root.handlers:
        if isinstance(handler, logging.StreamHandler) and getattr(handler.stream, "name", None) in [
            "<stderr>",
            "<stdout>",
        ]:
            handler.setFormatter(SafeEnhancedFormatter(use_colors=sys.stderr.isatty()))


def _add_run_arguments(parser: argparse.ArgumentParser) -> None:
    inputs = parser.add_argument_group("inputs")
    inputs.add_argument("--kind", help="Divergence kind: relative, petz, sandwiched, log_euclidean, maximal, max_rel, chernoff")
    inputs.add_argument("--rho", help="JSON file with the null state")
    inputs.add_argument("--sigma", help="JSON file with the alternative state (sigma1 for gallery)")
    inputs.add_argument("--sigma2", help="JSON file with the second alternative state")
    inputs.add_argument("--null", dest="null_set", help="JSON file with the null hypothesis set")
    inputs.add_argument("--alt", dest="alt_set", help="JSON file with the alternative hypothesis set")

    grids = parser.add_argument_group("grids", "start:stop:step, a comma list, or a single number")
    grids.add_argument("--alpha", help="Renyi order(s)")
    grids.add_argument("--r", "--r-grid", dest="r", help="Rate(s)")
    grids.add_argument("--n", help="Number(s) of copies")
    grids.add_argument("--grid", help="Abscissae for Psi, PsiMinus and lmgf")

    params = parser.add_argument_group("parameters")
    params.add_argument("--k", type=int, default=1, help="Flips per copy for the coin example")
    params.add_argument("--t", type=float, help="Target exponent for the direct example (defaults to r)")
    params.add_argument("--s", type=float, default=0.25, help="Shape parameter in (0, 1/3)")
    params.add_argument("--c", type=float, help="Threshold for np tests and type rounding")
    params.add_argument("--v", help="Halfspace normal as a comma list")
    params.add_argument("--theta", type=float, help="Smoothing weight for hull minimization")
    params.add_argument("--depth", type=int, help="Digit depth for the interval example")
    params.add_argument("--trials", type=int, default=0, help="Random cylinder tests for the interval example")
    params.add_argument("--samples", type=int, default=0, help="Monte Carlo samples for the interval example")

    output = parser.add_argument_group("output")
    output.add_argument("--tol", type=float, default=DEFAULT_TOL, help="Check tolerance")
    output.add_argument("--seed", type=int, default=0, help="Seed for every random draw")
    output.add_argument("--format", choices=list(OUTPUT_FORMATS), default="json", help="Output format")
    output.add_argument("--out", help="Write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="explab",
        description="Error exponents for quantum and classical hypothesis testing",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for command, targets in TARGETS.items():
        p = sub.add_parser(command, help=TOOL_DESCRIPTIONS[command])
        if targets is not None:
            p.add_argument("target", nargs="?" if command != "gallery" else None, choices=targets)
        _add_run_arguments(p)

    verify = sub.add_parser("verify", help="Run seeded verification suites")
    verify.add_argument("target", nargs="?", default="all", help="Suite name, 'all' or 'list'")
    _add_run_arguments(verify)

    serve = sub.add_parser("serve", help="Expose the library as MCP tools")
    serve.add_argument(
        "--tools",
        nargs="*",
        choices=list(TOOL_MODULES),
        help="Library modules whose tools are registered. If not provided, all modules are registered.",
    )
    serve.add_argument(
        "--tool-tier",
        choices=["core", "extended", "complete"],
        help="Load tools based on tier level. Can be combined with --tools to filter modules.",
    )
    serve.add_argument(
        "--transport",
        choices=["stdio", "streamable-http"],
        default="stdio",
        help="Transport mode: stdio (default) or streamable-http",
    )
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Build a RunConfig from parsed arguments.

    Raises:
        UserInputError: a malformed grid or option value.
    """
    v: tuple = ()
    if args.v is not None:
        try:
            v = tuple(float(x) for x in args.v.split(",") if x.strip())
        except ValueError:
            raise UserInputError(f"Cannot parse --v '{args.v}'", field="v")
    return RunConfig(
        command=args.command,
        target=getattr(args, "target", None),
        kind=args.kind,
        rho=args.rho,
        sigma=args.sigma,
        sigma2=args.sigma2,
        null_set=args.null_set,
        alt_set=args.alt_set,
        alpha=parse_grid(args.alpha, "alpha"),
        r=parse_grid(args.r, "r"),
        n=parse_int_grid(args.n, "n"),
        grid=parse_grid(args.grid, "grid"),
        k=args.k,
        t=args.t,
        s=args.s,
        c=args.c,
        v=v,
        theta=args.theta,
        depth=args.depth,
        trials=args.trials,
        samples=args.samples,
        tol=args.tol,
        seed=args.seed,
        format=args.format,
        out=args.out,
    )


def serve(args: argparse.Namespace) -> None:
    from core.server import get_server_version, server
    from core.tool_registry import filter_server_tools, set_enabled_tools, wrap_server_tool_method
    from core.tool_tier_loader import resolve_tools_from_tier

    safe_print("Exponent Laboratory MCP Server")
    safe_print("=" * 35)
    safe_print(f"   Version: {get_server_version()}")
    safe_print(f"   Transport: {args.transport}")
    safe_print(f"   Python: {sys.version.split()[0]}")
    safe_print(f"   Threads: {EXPLAB_THREADS}")
    safe_print("")

    if args.tool_tier is not None:
        try:
            tier_tools, suggested_modules = resolve_tools_from_tier(args.tool_tier, args.tools)
        except (OSError, ValueError, ExplabError) as e:
            safe_print(f"Error loading tools for tier '{args.tool_tier}': {e}")
            sys.exit(1)
        modules_to_import = args.tools if args.tools is not None else suggested_modules
        set_enabled_tools(set(tier_tools))
    else:
        modules_to_import = args.tools if args.tools is not None else list(TOOL_MODULES)
        set_enabled_tools(None)

    wrap_server_tool_method(server)

    safe_print(f"Loading {len(modules_to_import)} tool module{'s' if len(modules_to_import) != 1 else ''}:")
    for module in modules_to_import:
        try:
            import_module(TOOL_MODULES[module])
            safe_print(f"   {module} - {TOOL_DESCRIPTIONS[module]}")
        except ModuleNotFoundError as exc:
            logger.error("Failed to import tool module '%s': %s", module, exc, exc_info=True)
            safe_print(f"   Failed to load {module} tool module ({exc}).")
    safe_print("")

    filter_server_tools(server)

    safe_print("Configuration Summary:")
    safe_print(f"   Modules Loaded: {len(modules_to_import)}/{len(TOOL_MODULES)}")
    if args.tool_tier is not None:
        safe_print(f"   Tool Tier: {args.tool_tier}")
    safe_print(f"   Log Level: {logging.getLogger().getEffectiveLevel()}")
    safe_print("")

    try:
        safe_print("Ready for MCP connections")
        if args.transport == "streamable-http":
            port = int(os.getenv("EXPLAB_MCP_PORT", 8000))
            server.run(transport="streamable-http", host="0.0.0.0", port=port)
        else:
            server.run()
    except KeyboardInterrupt:
        safe_print("\nServer shutdown requested")
        sys.exit(0)
    except Exception as e:
        safe_print(f"\nServer error: {e}")
        logger.error(f"Unexpected error running server: {e}", exc_info=True)
        sys.exit(1)


def main(argv: Optional[List[str]] = None) -> None:
    """Entry point for the explab command."""
    configure_safe_logging()
    args = build_parser().parse_args(argv)

    if args.command == "serve":
        serve(args)
        return

    try:
        config = config_from_args(args)
    except ExplabError as e:
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        sys.exit(EXIT_ERROR)
    sys.exit(run(config))


if __name__ == "__main__":
    main()
