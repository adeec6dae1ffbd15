import asyncio
import functools
import logging
from typing import Any, Optional

logger = logging.getLogger(__name__)


class ExplabError(Exception):
    """Base class for every diagnostic raised by the library."""

    pass


class UserInputError(ExplabError):
    """Raised for user-facing input/validation errors (bad files, flags, ranges)."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.line = line
        self.field = field


class DimensionMismatch(ExplabError):
    pass


class NotHermitian(ExplabError):
    pass


class NotPSD(ExplabError):
    """An operator expected to be positive semidefinite has a negative eigenvalue."""

    def __init__(self, message: str, min_eigenvalue: float = float("nan")):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class NotPD(ExplabError):
    pass


class SupportMismatch(ExplabError):
    pass


class ZeroOperator(ExplabError):
    pass


class EigenSolverError(ExplabError):
    pass


class CapExceeded(ExplabError):
    """A requested object would exceed a configured size cap."""

    def __init__(self, message: str, required: int, cap: int):
        super().__init__(f"{message}: requires {required}, cap is {cap}")
        self.required = required
        self.cap = cap


class OutOfRange(ExplabError):
    pass


class Degenerate(ExplabError):
    pass


class NoUniqueRoot(Degenerate):
    pass


class KindMismatch(ExplabError):
    pass


class CertificateFailed(ExplabError):
    """A first-order optimality certificate is violated."""

    def __init__(self, message: str, generator: str, slack: float):
        super().__init__(f"{message}: worst generator {generator}, slack {slack:.3e}")
        self.generator = generator
        self.slack = slack


class CertificateMissing(ExplabError):
    pass


class NTooSmall(ExplabError):
    pass


class CommutingInput(ExplabError):
    pass


class ScanFailed(ExplabError):
    def __init__(self, message: str, trace: Optional[list] = None):
        super().__init__(message)
        self.trace = trace or []


class DepthTooSmall(ExplabError):
    pass


class DegenerateFamily(ExplabError):
    pass


class NotSemiClassical(ExplabError):
    pass


def handle_numeric_errors(op_name: str):
    """
    Decorator that logs library failures under a common operation name.

    ExplabError subclasses are logged at WARNING and re-raised unchanged so
    callers can branch on the type; anything else is logged with its
    traceback and wrapped in ExplabError naming the operation.

    Args:
        op_name (str): The name shown in log lines and wrapped messages.
    """

    def _handle(e: Exception) -> Exception:
        if isinstance(e, ExplabError):
            logger.warning(f"[{op_name}] {type(e).__name__}: {e}")
            return e
        message = f"An unexpected error occurred in {op_name}: {e}"
        logger.exception(message)
        wrapped = ExplabError(message)
        wrapped.__cause__ = e
        return wrapped

    def decorator(func):
        if asyncio.iscoroutinefunction(func):

            @functools.wraps(func)
            async def async_wrapper(*args: Any, **kwargs: Any):
                try:
                    return await func(*args, **kwargs)
                except Exception as e:
                    raise _handle(e)

            return async_wrapper

        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any):
            try:
                return func(*args, **kwargs)
            except Exception as e:
                raise _handle(e)

        return wrapper

    return decorator
