"""
Exact rational parsing and printing.

All numeric input is read into ``fractions.Fraction``; floats are rejected so
that no binary rounding ever reaches a solver.
"""

from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from ..exceptions import InputError

RationalLike = Union[Fraction, int, str]


def parse_rational(value: RationalLike, location: str = None) -> Fraction:
    """
    Parse an integer, a decimal string or a "p/q" string into a Fraction.
    
    Args:
        value: The value to parse
        location: Optional position used in the error message
        
    Returns:
        The exact rational value
        
    Raises:
        InputError: If the value is a float, a bool or unparsable text
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"expected an exact rational, got {value!r}", location)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                numerator, denominator = text.split("/", 1)
                return Fraction(int(numerator), int(denominator))
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"invalid rational {value!r}", location)
    raise InputError(f"expected a rational string, got {type(value).__name__}", location)


def parse_vector(values: Iterable[RationalLike], location: str = None) -> Tuple[Fraction, ...]:
    """Parse a sequence of rationals into a tuple."""
    return tuple(parse_rational(value, f"{location}[{i}]" if location else None)
                 for i, value in enumerate(values))


def format_rational(value: Fraction) -> str:
    """Print integers plainly and other rationals as p/q."""
    return str(Fraction(value))


def format_vector(vector: Sequence[Fraction]) -> str:
    return "(" + ", ".join(format_rational(x) for x in vector) + ")"
