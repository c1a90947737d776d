"""Exact decimal arithmetic for human-entered weights, ratings, and bounds.

Every number that appears in a decision document is a short decimal typed by
a person.  Binary floating point cannot represent most of them, so recomputed
totals would differ from declared ones by rounding noise and the audit engine
could not tell a real discrepancy from an artifact.  ``ExactDecimal`` stores an
integer mantissa and a non-negative power-of-ten scale; addition and
multiplication are closed and exact, and rendering then re-parsing is the
identity.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Union

_DECIMAL_RE = re.compile(r"^([+-]?)(\d+)(?:\.(\d+))?$")

Numeric = Union["ExactDecimal", int, Fraction]


class ExactDecimal:
    """An exact decimal: ``mantissa / 10**scale`` with ``scale >= 0``.

    Instances are immutable and normalized (no trailing zero digits in the
    fractional part), so equal values compare and hash equal regardless of how
    they were written ("1.50" == "1.5").
    """

    __slots__ = ("mantissa", "scale")

    mantissa: int
    scale: int

    def __init__(self, value: "ExactDecimal | int | str") -> None:
        if isinstance(value, ExactDecimal):
            mantissa, scale = value.mantissa, value.scale
        elif isinstance(value, int):
            mantissa, scale = value, 0
        elif isinstance(value, str):
            mantissa, scale = _parse_decimal(value)
        else:
            raise TypeError(f"cannot build ExactDecimal from {type(value).__name__}")
        while scale > 0 and mantissa % 10 == 0:
            mantissa //= 10
            scale -= 1
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "scale", scale)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ExactDecimal is immutable")

    @classmethod
    def from_scaled(cls, mantissa: int, scale: int) -> "ExactDecimal":
        if scale < 0:
            raise ValueError("scale must be non-negative")
        out = cls(0)
        object.__setattr__(out, "mantissa", mantissa)
        object.__setattr__(out, "scale", scale)
        return cls(out)  # re-run normalization

    @classmethod
    def from_fraction(cls, value: Fraction) -> "ExactDecimal":
        """Convert an exact rational; raises ValueError if non-terminating."""
        den = value.denominator
        twos = fives = 0
        while den % 2 == 0:
            den //= 2
            twos += 1
        while den % 5 == 0:
            den //= 5
            fives += 1
        if den != 1:
            raise ValueError(f"{value} has no terminating decimal form")
        scale = max(twos, fives)
        mantissa = value.numerator * 10**scale // value.denominator
        return cls.from_scaled(mantissa, scale)

    def as_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 10**self.scale)

    def __float__(self) -> float:
        return self.mantissa / 10**self.scale

    def _coerce(self, other: object) -> Fraction | None:
        if isinstance(other, ExactDecimal):
            return other.as_fraction()
        if isinstance(other, (int, Fraction)):
            return Fraction(other)
        return None

    def __add__(self, other: Numeric) -> "ExactDecimal":
        if isinstance(other, int):
            other = ExactDecimal(other)
        if not isinstance(other, ExactDecimal):
            return NotImplemented
        scale = max(self.scale, other.scale)
        mantissa = self.mantissa * 10 ** (scale - self.scale) + other.mantissa * 10 ** (
            scale - other.scale
        )
        return ExactDecimal.from_scaled(mantissa, scale)

    __radd__ = __add__

    def __neg__(self) -> "ExactDecimal":
        return ExactDecimal.from_scaled(-self.mantissa, self.scale)

    def __sub__(self, other: Numeric) -> "ExactDecimal":
        if isinstance(other, int):
            other = ExactDecimal(other)
        if not isinstance(other, ExactDecimal):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Numeric) -> "ExactDecimal":
        if isinstance(other, int):
            other = ExactDecimal(other)
        if not isinstance(other, ExactDecimal):
            return NotImplemented
        return ExactDecimal.from_scaled(self.mantissa * other.mantissa, self.scale + other.scale)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.as_fraction() == coerced

    def __lt__(self, other: Numeric) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.as_fraction() < coerced

    def __le__(self, other: Numeric) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.as_fraction() <= coerced

    def __gt__(self, other: Numeric) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.as_fraction() > coerced

    def __ge__(self, other: Numeric) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.as_fraction() >= coerced

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __bool__(self) -> bool:
        return self.mantissa != 0

    def __str__(self) -> str:
        sign = "-" if self.mantissa < 0 else ""
        digits = str(abs(self.mantissa)).rjust(self.scale + 1, "0")
        if self.scale == 0:
            return sign + digits
        return f"{sign}{digits[: -self.scale]}.{digits[-self.scale :]}"

    def __repr__(self) -> str:
        return f"ExactDecimal('{self}')"


def _parse_decimal(text: str) -> tuple[int, int]:
    match = _DECIMAL_RE.match(text.strip())
    if match is None:
        raise ValueError(f"not a decimal literal: {text!r}")
    sign, whole, frac = match.groups()
    frac = frac or ""
    mantissa = int(whole + frac)
    if sign == "-":
        mantissa = -mantissa
    return mantissa, len(frac)


def decimal_sum(values: Iterable[ExactDecimal | int]) -> ExactDecimal:
    """Exact, order-independent sum; the empty sum is 0."""
    total = ExactDecimal(0)
    for value in values:
        total = total + (value if isinstance(value, ExactDecimal) else ExactDecimal(value))
    return total


def to_fraction(value: ExactDecimal | int | Fraction | str) -> Fraction:
    """Coerce any exact numeric form (or decimal/ratio string) to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, ExactDecimal):
        return value.as_fraction()
    if isinstance(value, str):
        if "/" in value:
            num, den = value.split("/", 1)
            return Fraction(int(num.strip()), int(den.strip()))
        return ExactDecimal(value).as_fraction()
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact number")


def exact_number(value: Fraction) -> "ExactDecimal | Fraction":
    """Prefer the decimal form when the rational terminates."""
    try:
        return ExactDecimal.from_fraction(value)
    except ValueError:
        return value


def format_exact(value: ExactDecimal | Fraction | int, places: int = 9) -> str:
    """Decimal text: exact when terminating, else rounded to ``places`` digits."""
    if isinstance(value, ExactDecimal):
        return str(value)
    if isinstance(value, int):
        return str(value)
    try:
        return str(ExactDecimal.from_fraction(value))
    except ValueError:
        scaled = value * 10**places
        mantissa = scaled.numerator // scaled.denominator  # floor
        if 2 * (scaled - mantissa) >= 1:
            mantissa += 1
        # A rounded value keeps all ``places`` digits -- the trailing zeros
        # say "this is an approximation cut at a fixed width", unlike the
        # normalized exact form above.
        sign = "-" if mantissa < 0 else ""
        whole, fractional = divmod(abs(mantissa), 10**places)
        return f"{sign}{whole}.{fractional:0{places}d}"
