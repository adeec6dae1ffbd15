"""
Enhanced Log Formatter for the exponent laboratory

Provides ASCII module prefixes and light message rewriting so that log lines
from solvers, reports and the tool server read consistently on a console.
"""

import logging
import re
import sys
from typing import Optional


class EnhancedLogFormatter(logging.Formatter):
    """Custom log formatter that adds ASCII prefixes and visual enhancements to log messages."""

    # Color codes for terminals that support ANSI colors
    COLORS = {
        "DEBUG": "\033[36m",  # Cyan
        "INFO": "\033[32m",  # Green
        "WARNING": "\033[33m",  # Yellow
        "ERROR": "\033[31m",  # Red
        "CRITICAL": "\033[35m",  # Magenta
        "RESET": "\033[0m",  # Reset
    }

    # Longest matching logger-name prefix wins
    ASCII_PREFIXES = {
        "core.tool_tier_loader": "[TOOLS]",
        "core.tool_registry": "[REGISTRY]",
        "core.utils": "[UTILS]",
        "core.parallel": "[POOL]",
        "hermcore": "[HERMCORE]",
        "divergence": "[DIVERGENCE]",
        "tradeoff": "[TRADEOFF]",
        "composite": "[COMPOSITE]",
        "typelab": "[TYPELAB]",
        "gallery": "[GALLERY]",
        "cli": "[CLI]",
        "__main__": "[CLI]",
        "main": "[CLI]",
    }

    def __init__(self, use_colors: bool = True, *args, **kwargs):
        """
        Initialize the formatter.

        Args:
            use_colors: Whether to use ANSI color codes (default: True)
        """
        super().__init__(*args, **kwargs)
        self.use_colors = use_colors

    def format(self, record: logging.LogRecord) -> str:
        """Format the log record with ASCII prefixes and enhanced styling."""
        prefix = self._get_ascii_prefix(record.name, record.levelname)
        formatted_msg = self._enhance_message(record.getMessage())

        if self.use_colors:
            color = self.COLORS.get(record.levelname, "")
            reset = self.COLORS["RESET"]
            return f"{prefix} {color}{formatted_msg}{reset}"
        return f"{prefix} {formatted_msg}"

    def _get_ascii_prefix(self, logger_name: str, level_name: str) -> str:
        """Get ASCII-safe prefix for the module that emitted the record."""
        best = None
        for name, prefix in self.ASCII_PREFIXES.items():
            if logger_name == name or logger_name.startswith(name + "."):
                if best is None or len(name) > len(best[0]):
                    best = (name, prefix)
        return best[1] if best else f"[{level_name}]"

    def _enhance_message(self, message: str) -> str:
        """Rewrite a few recurring message shapes into a friendlier form."""
        if "resolved to" in message and "tools across" in message:
            pattern = r"Tier '(\w+)' resolved to (\d+) tools across (\d+) modules: (.+)"
            match = re.search(pattern, message)
            if match:
                tier, tool_count, module_count, modules = match.groups()
                return f"Tool tier '{tier}' loaded: {tool_count} tools across {module_count} modules [{modules}]"

        if "Loaded tool tiers configuration from" in message:
            path = message.split("from ")[-1]
            return f"Configuration loaded from {path}"

        if "Tool tier filtering" in message:
            match = re.search(r"removed (\d+) tools, (\d+) enabled", message)
            if match:
                removed, enabled = match.groups()
                return f"Tool filtering complete: {enabled} tools enabled ({removed} filtered out)"

        if "Frank-Wolfe converged" in message:
            match = re.search(r"after (\d+) iterations, gap ([0-9.eE+-]+)", message)
            if match:
                iters, gap = match.groups()
                return f"Hull minimizer converged: {iters} iterations (gap {gap})"

        return message


def configure_file_logging(
    log_file_path: Optional[str], logger_name: Optional[str] = None
) -> bool:
    """
    Attach a detailed DEBUG file handler when a log file path is configured.

    Args:
        log_file_path: Target file (EXPLAB_LOG_FILE); None or empty disables file logging
        logger_name: Optional name for the logger (defaults to root logger)

    Returns:
        bool: True if file logging was configured, False if skipped
    """
    logger = logging.getLogger(logger_name)
    if not log_file_path:
        logger.debug("File logging disabled (EXPLAB_LOG_FILE not set)")
        return False

    try:
        file_handler = logging.FileHandler(log_file_path, mode="a")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(
            logging.Formatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(process)d - %(threadName)s "
                "[%(module)s.%(funcName)s:%(lineno)d] - %(message)s"
            )
        )
        logger.addHandler(file_handler)
        logger.debug(f"Detailed file logging configured to: {log_file_path}")
        return True
    except OSError as e:
        sys.stderr.write(
            f"CRITICAL: Failed to set up file logging to '{log_file_path}': {e}\n"
        )
        return False
