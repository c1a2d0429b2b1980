"""Scalars in the two numeric modes.

A scalar is either an exact rational (:class:`fractions.Fraction`) or a finite
binary64 ``float``. Python ``int`` is accepted wherever a rational is and is
promoted to ``Fraction``. The mode of a computation is inferred from its
inputs: one float anywhere switches the whole computation to float mode.
"""

from __future__ import annotations

import enum
import math
import re
from fractions import Fraction
from typing import Iterable, Union

from .errors import ModeError, OrderError

Scalar = Union[Fraction, float]
Number = Union[Fraction, float, int]


class Mode(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


def mode_of(*values: Number) -> Mode:
    """Return FLOAT if any value is a float, EXACT otherwise."""
    for v in values:
        if isinstance(v, float):
            return Mode.FLOAT
    return Mode.EXACT


def mode_of_all(values: Iterable[Number]) -> Mode:
    return mode_of(*values)


def coerce(value: Number, mode: Mode) -> Scalar:
    """Convert ``value`` to the scalar type of ``mode``.

    Floats are never silently promoted to rationals: exact mode rejects them.
    """
    if isinstance(value, bool):
        raise ModeError(f"booleans are not scalars: {value!r}")
    if mode is Mode.EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise ModeError(f"exact mode requires a rational, got {value!r}")
    if isinstance(value, (int, Fraction, float)):
        out = float(value)
        if not math.isfinite(out):
            raise ModeError(f"float mode requires a finite value, got {value!r}")
        return out
    raise ModeError(f"not a scalar: {value!r}")


def is_integer(value: Number) -> bool:
    if isinstance(value, Fraction):
        return value.denominator == 1
    if isinstance(value, float):
        return value.is_integer()
    return isinstance(value, int)


def check_order(value: Number, name: str = "order") -> Number:
    """Validate a fractional sum order (strictly positive, finite)."""
    if isinstance(value, float) and not math.isfinite(value):
        raise OrderError(f"{name} must be finite, got {value!r}")
    if not value > 0:
        raise OrderError(f"{name} must be > 0, got {value}")
    return value


def check_gamma(value: Number) -> Number:
    if isinstance(value, float) and not math.isfinite(value):
        raise OrderError(f"gamma must be finite, got {value!r}")
    if not 0 <= value <= 1:
        raise OrderError(f"gamma must lie in [0, 1], got {value}")
    return value


_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:/(\d+))?\s*$")


def parse_scalar(text: str, mode: Mode) -> Scalar:
    """Parse ``"p/q"``, an integer, or (float mode only) a decimal literal."""
    m = _RATIONAL.match(text)
    if m:
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return coerce(Fraction(num, den), mode)
    if mode is Mode.EXACT:
        raise ModeError(f"{text!r} is not a rational 'p/q'; decimals need float mode")
    try:
        out = float(text)
    except ValueError:
        raise ValueError(f"cannot parse {text!r} as a number") from None
    if not math.isfinite(out):
        raise ValueError(f"non-finite value {text!r}")
    return out


def format_scalar(value: Scalar) -> str:
    """Serialize a scalar losslessly: ``p/q`` for rationals, shortest repr for floats."""
    if isinstance(value, float):
        return repr(value)
    return str(Fraction(value))


def json_scalar(value: Scalar):
    """JSON form of a scalar: ``"p/q"`` string for rationals, a number for floats."""
    if isinstance(value, float):
        return value
    return format_scalar(value)
