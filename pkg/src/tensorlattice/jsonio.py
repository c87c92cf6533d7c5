"""Wire formats for exact rationals.

Every number that crosses a process boundary (CLI input, reports,
certificates) travels as a string "p" or "p/q" so that no reader is tempted
to round it. These helpers are the single place that parses and prints them.
"""

from __future__ import annotations

from fractions import Fraction


class FormatError(ValueError):
    """Malformed external input; carries a field path for diagnostics."""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"field '{field}': {message}")


def as_fraction(value, field: str = "value") -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(field, f"invalid rational {value!r}: {exc}") from None
    raise FormatError(field, f"expected rational string or integer, got {type(value).__name__}")


def fraction_str(value: Fraction) -> str:
    """Render a Fraction as "p" or "p/q" (canonical lowest terms)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def fraction_list(values) -> list[str]:
    return [fraction_str(v) for v in values]


def parse_fraction_list(data, field: str) -> tuple[Fraction, ...]:
    if not isinstance(data, (list, tuple)):
        raise FormatError(field, f"expected a list of rationals, got {type(data).__name__}")
    return tuple(as_fraction(v, f"{field}[{i}]") for i, v in enumerate(data))


def require_key(obj, key: str, field: str):
    if not isinstance(obj, dict):
        raise FormatError(field, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise FormatError(f"{field}.{key}", "missing required key")
    return obj[key]
