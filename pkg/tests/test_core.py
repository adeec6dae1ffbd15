import asyncio
import json
import logging
import math

import numpy as np
import pytest

from core.extreal import dumps, format_ext, from_jsonable, to_jsonable
from core.log_formatter import EnhancedLogFormatter, configure_file_logging
from core.parallel import parallel_map
from core.utils import CapExceeded, ExplabError, NotPSD, UserInputError, handle_numeric_errors


def test_infinity_serializes_as_token():
    payload = {"b": math.inf, "a": np.float64(1.5), "c": [np.int64(3), -math.inf]}
    text = dumps(payload)
    assert json.loads(text) == {"a": 1.5, "b": "inf", "c": [3, "-inf"]}
    assert text.index('"a"') < text.index('"b"')


def test_from_jsonable_reads_tokens():
    assert from_jsonable("inf") == math.inf
    assert from_jsonable(" -Infinity ") == -math.inf
    assert from_jsonable(2) == 2.0


def test_format_ext():
    assert format_ext(math.inf) == "inf"
    assert format_ext(0.25) == "0.25"


def test_to_jsonable_uses_to_dict():
    class Box:
        def to_dict(self):
            return {"x": np.array([1.0, math.inf])}

    assert to_jsonable(Box()) == {"x": [1.0, "inf"]}


def test_user_input_error_carries_location():
    err = UserInputError("bad value", line=4, field="rho")
    assert err.line == 4
    assert err.field == "rho"
    assert "line 4" in str(err) and "field 'rho'" in str(err)
    assert isinstance(err, ExplabError)


def test_cap_exceeded_message():
    err = CapExceeded("Too many types", required=10, cap=5)
    assert err.required == 10 and err.cap == 5
    assert "requires 10" in str(err)


def test_handle_numeric_errors_reraises_library_errors():
    @handle_numeric_errors("op")
    def f():
        raise NotPSD("negative", min_eigenvalue=-1.0)

    with pytest.raises(NotPSD):
        f()


def test_handle_numeric_errors_wraps_unexpected():
    @handle_numeric_errors("op")
    async def f():
        raise ZeroDivisionError("boom")

    with pytest.raises(ExplabError, match="unexpected error occurred in op"):
        asyncio.run(f())


def test_parallel_map_keeps_order():
    assert parallel_map(lambda x: x * x, range(6), max_workers=3) == [0, 1, 4, 9, 16, 25]
    assert parallel_map(lambda x: x, []) == []


def test_formatter_prefix_longest_match():
    fmt = EnhancedLogFormatter(use_colors=False)
    record = logging.LogRecord("core.tool_tier_loader", logging.INFO, __file__, 1, "hello", None, None)
    assert fmt.format(record) == "[TOOLS] hello"
    record = logging.LogRecord("tradeoff.legendre", logging.INFO, __file__, 1, "x", None, None)
    assert fmt.format(record).startswith("[TRADEOFF]")
    record = logging.LogRecord("somewhere", logging.WARNING, __file__, 1, "x", None, None)
    assert fmt.format(record).startswith("[WARNING]")


def test_configure_file_logging(tmp_path):
    assert configure_file_logging(None, "explab-test-none") is False
    path = tmp_path / "explab.log"
    assert configure_file_logging(str(path), "explab-test-file") is True
    logger = logging.getLogger("explab-test-file")
    logger.setLevel(logging.DEBUG)
    logger.debug("written")
    for h in logger.handlers:
        h.flush()
    assert "written" in path.read_text()
