"""
Shared configuration for the exponent laboratory.

Values are read from the environment once at import time (main.py loads a
.env file first) so that every module sees the same numerical tolerances
and caps without importing each other.
"""

import os


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(float(raw))


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return float(raw)


# Parallelism
EXPLAB_THREADS = max(1, _env_int("EXPLAB_THREADS", 1))

# Linear algebra tolerances
EPS_SUPP = _env_float("EXPLAB_EPS_SUPP", 1e-12)
HERM_TOL = _env_float("EXPLAB_HERM_TOL", 1e-10)
TRACE_TOL = _env_float("EXPLAB_TRACE_TOL", 1e-9)

# Size caps
DIM_CAP = _env_int("EXPLAB_DIM_CAP", 4096)
TYPE_CAP = _env_int("EXPLAB_TYPE_CAP", 10**7)
STRATEGY_CAP = _env_int("EXPLAB_STRATEGY_CAP", 10**5)

# Logging
EXPLAB_LOG_FILE = os.getenv("EXPLAB_LOG_FILE")
EXPLAB_LOG_LEVEL = os.getenv("EXPLAB_LOG_LEVEL", "INFO").upper()

__all__ = [
    "EXPLAB_THREADS",
    "EPS_SUPP",
    "HERM_TOL",
    "TRACE_TOL",
    "DIM_CAP",
    "TYPE_CAP",
    "STRATEGY_CAP",
    "EXPLAB_LOG_FILE",
    "EXPLAB_LOG_LEVEL",
]
