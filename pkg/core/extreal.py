"""
Extended reals and their lossless serialization.

An ExtReal is a Python float that is either finite or +inf. Serialized
output never carries a large float for +inf: it is written as the string
"inf" in JSON and CSV alike.
"""

import json
import math
from typing import Any, Union

import numpy as np

ExtReal = float

INF = math.inf
INF_TOKEN = "inf"


def to_jsonable(obj: Any) -> Any:
    """Recursively convert numpy values and infinities to JSON-safe Python values."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return INF_TOKEN if value > 0 else "-" + INF_TOKEN
        return value
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    return obj


def from_jsonable(value: Union[str, float, int]) -> ExtReal:
    """Parse a serialized ExtReal ("inf" or a number)."""
    if isinstance(value, str):
        token = value.strip().lower()
        if token in ("inf", "+inf", "infinity"):
            return INF
        if token in ("-inf", "-infinity"):
            return -INF
        return float(token)
    return float(value)


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON text (sorted keys) for reports."""
    return json.dumps(to_jsonable(obj), indent=indent, sort_keys=True)


def format_ext(value: ExtReal) -> str:
    """CSV cell text for an ExtReal."""
    if math.isinf(value):
        return INF_TOKEN if value > 0 else "-" + INF_TOKEN
    return repr(float(value))
