"""
Output writers: deterministic JSON reports and CSV curves with the "inf"
sentinel for +infinity.
"""

import csv
import io
import logging
from pathlib import Path
from typing import Any, Optional, Sequence, Tuple

from core.extreal import dumps, format_ext

logger = logging.getLogger(__name__)

CurveRow = Tuple[Any, ...]


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return format_ext(value)
    return str(value)


def curve_csv(rows: Sequence[CurveRow], header: Sequence[str] = ("x", "value")) -> str:
    """CSV text with a fixed header; extra columns (such as a case tag) follow the value."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def write_text(text: str, out: Optional[str]) -> str:
    """Write to `out`, or return the text for stdout when no path is given."""
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {len(text)} bytes to {out}")
    return text


def emit_curve(
    rows: Sequence[CurveRow],
    fmt: str = "csv",
    out: Optional[str] = None,
    header: Sequence[str] = ("x", "value"),
) -> str:
    """
    Emit (x, value, ...) rows as CSV or as {"header", "rows"} JSON.

    An empty list gives a header-only CSV.
    """
    if fmt == "csv":
        text = curve_csv(rows, header)
    else:
        text = dumps({"header": list(header), "rows": [list(r) for r in rows]}) + "\n"
    return write_text(text, out)


def emit_report(payload: Any, out: Optional[str] = None) -> str:
    return write_text(dumps(payload) + "\n", out)
