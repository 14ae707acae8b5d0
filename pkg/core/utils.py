import functools
import logging
import math
import os
import traceback
from enum import Enum

import numpy as np
from cheap_repr import cheap_repr

log = logging.getLogger(__name__)

TESTING = False

# Null-cone guard: |Q(x)| <= NULL_TOLERANCE * (1 + |x|^2) counts as zero.
NULL_TOLERANCE = 1e-12


def qa_error(message, cls=AssertionError):
    if os.environ.get("PRINT_ERRORS"):
        print(message)
        print("\n-----------------------------------------------------\n")
    else:
        raise cls(message)


class AlgebraError(Exception):
    pass


class UsageError(AlgebraError):
    """Bad input from the caller rather than a mathematical failure."""


class ArithmeticMode(str, Enum):
    INTEGER = "integer"
    FLOAT = "float"

    @property
    def dtype(self):
        return np.int64 if self is ArithmeticMode.INTEGER else np.float64


def frozen_array(values, dtype=None):
    result = np.array(values, dtype=dtype)
    if dtype is None and result.dtype.kind not in "if":
        result = result.astype(np.float64)
    if result.dtype.kind == "i":
        result = result.astype(np.int64)
    result.setflags(write=False)
    return result


def is_exact(array):
    return array.dtype.kind == "i"


def max_abs(array):
    array = np.asarray(array)
    if array.size == 0:
        return 0.0
    return float(np.max(np.abs(array)))


def relative_difference(actual, expected):
    actual = np.asarray(actual, dtype=np.float64)
    expected = np.asarray(expected, dtype=np.float64)
    scale = max(1.0, max_abs(expected))
    return max_abs(actual - expected) / scale


def format_exception_string(e):
    return "".join(traceback.format_exception_only(type(e), e))


def truncate(seq, max_length, middle):
    if len(seq) > max_length:
        left = (max_length - len(middle)) // 2
        right = max_length - len(middle) - left
        seq = seq[:left] + middle + seq[-right:]
    return seq


def truncate_string(string, max_length):
    return truncate(string, max_length, "...")


def safe_traceback(e: Exception):
    import stack_data

    for show_variables, chain in [(True, True), (False, True), (True, False), (False, False)]:
        try:
            return "".join(
                stack_data.Formatter(
                    show_variables=show_variables, chain=chain
                ).format_exception(e)
            )
        except Exception:
            pass
    return "".join(traceback.format_exception(type(e), e, e.__traceback__))


def catch_internal_errors(func):
    """
    Turns an unexpected exception inside a property check into an infinite
    residual, so one broken check reports as a failure instead of aborting
    the whole run.
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except Exception as e:
            if TESTING:
                raise
            log.warning(
                "%s raised %s\n%s",
                func.__name__,
                truncate_string(format_exception_string(e).strip(), 100),
                safe_traceback(e),
            )
            return math.inf

    return wrapper


def short_repr(value):
    return cheap_repr(value)
