"""Target-constraint grammar for metric specifications.

Marginal and ideal targets arrive as free text copied out of specification
worksheets: "at least 48 hours", "75 -80 db", "$300", "one of {LCD, LED}",
or prose like "Much flexible".  This module classifies each cell into a small
constraint algebra so targets can be checked, compared, and round-tripped
without losing the original wording of cells that are not machine-checkable.

Recognized forms (keywords are case-insensitive):

    at least N [unit]        >= N [unit]
    at most N [unit]         <= N [unit]
    between A and B [unit]
    A-B [unit]   A – B [unit]   A to B [unit]      (range shorthand)
    exactly N [unit]
    N [unit]                                        (bare value = exactly)
    one of {V1, V2, ...}

Anything else is kept verbatim as a qualitative constraint.  Numbers may be
signed decimals; a "$" prefix becomes the unit; a unit glued to the number
("80db", "4gb", "40x", "98%") is split off.  In range shorthand only the
first bound may carry a sign, so "-21 -100 degree" reads as the range -21 to
100 rather than two negative numbers.  An inverted range is an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import ConstraintError
from .numbers import ExactDecimal, to_fraction

_NUMBER = r"[+-]?\d+(?:\.\d+)?"
_UNSIGNED = r"\d+(?:\.\d+)?"

_KEYWORD_RE = re.compile(
    rf"^(at\s+least|at\s+most|exactly|>=|<=)\s*({_NUMBER})\s*(.*)$",
    re.IGNORECASE,
)
_BETWEEN_RE = re.compile(
    rf"^between\s+({_NUMBER})\s+and\s+({_NUMBER})\s*(.*)$",
    re.IGNORECASE,
)
_ONE_OF_RE = re.compile(r"^one\s+of\s*\{(.*)\}$", re.IGNORECASE)
# Range shorthand: the second bound is unsigned so that "-21 -100" parses as
# the range -21..100 and "15 -93" as 15..93.
_RANGE_RE = re.compile(
    rf"^(\$?)\s*({_NUMBER})\s*(?:-|–|—|to)\s*(\$?)\s*({_UNSIGNED})\s*(.*)$",
    re.IGNORECASE,
)
_BARE_RE = re.compile(rf"^(\$?)\s*({_NUMBER})\s*(.*)$")
_UNIT_RE = re.compile(r"^[^\d{}]*$")


@dataclass(frozen=True)
class AtLeast:
    bound: ExactDecimal
    unit: str = ""


@dataclass(frozen=True)
class AtMost:
    bound: ExactDecimal
    unit: str = ""


@dataclass(frozen=True)
class Between:
    low: ExactDecimal
    high: ExactDecimal
    unit: str = ""


@dataclass(frozen=True)
class Exactly:
    value: ExactDecimal
    unit: str = ""


@dataclass(frozen=True)
class OneOf:
    options: frozenset[str]


@dataclass(frozen=True)
class Qualitative:
    text: str


Constraint = Union[AtLeast, AtMost, Between, Exactly, OneOf, Qualitative]


def _unit_ok(text: str) -> bool:
    """A unit tail may be words, symbols, '%', or '$', but not more digits
    (digits would mean we mis-split a larger expression)."""
    return bool(_UNIT_RE.match(text))


def _resolve_unit(prefix: str, tail: str, second_prefix: str = "") -> Optional[str]:
    tail = tail.strip()
    if prefix or second_prefix:
        if tail and tail != "$":
            return None  # "$10 widgets" is not a thing we understand
        return "$"
    if not _unit_ok(tail):
        return None
    return tail


def parse_constraint(text: str) -> Constraint:
    """Classify one target cell.  Unrecognized text becomes Qualitative;
    the only hard error is a numeric range with its bounds inverted."""
    raw = text.strip()
    if not raw:
        return Qualitative("")
    collapsed = " ".join(raw.split())

    match = _ONE_OF_RE.match(collapsed)
    if match:
        options = frozenset(
            part.strip() for part in match.group(1).split(",") if part.strip()
        )
        if not options:
            raise ConstraintError(f"empty option set in {text!r}")
        return OneOf(options)

    match = _BETWEEN_RE.match(collapsed)
    if match:
        low, high, tail = match.groups()
        unit = _resolve_unit("", tail)
        if unit is not None:
            return _make_between(low, high, unit, text)

    match = _KEYWORD_RE.match(collapsed)
    if match:
        keyword, number, tail = match.groups()
        unit = _resolve_unit("", tail)
        if unit is not None:
            keyword = " ".join(keyword.lower().split())
            bound = ExactDecimal(number)
            if keyword in ("at least", ">="):
                return AtLeast(bound, unit)
            if keyword in ("at most", "<="):
                return AtMost(bound, unit)
            return Exactly(bound, unit)

    match = _RANGE_RE.match(collapsed)
    if match:
        prefix, low, second_prefix, high, tail = match.groups()
        unit = _resolve_unit(prefix, tail, second_prefix)
        if unit is not None:
            return _make_between(low, high, unit, text)

    match = _BARE_RE.match(collapsed)
    if match:
        prefix, number, tail = match.groups()
        unit = _resolve_unit(prefix, tail)
        if unit is not None:
            return Exactly(ExactDecimal(number), unit)

    return Qualitative(raw)


def parse_measurement(text: str) -> Constraint:
    """Classify a measured benchmark cell.

    Same grammar as :func:`parse_constraint`, but free-form measurements are
    never an error: text the grammar rejects (for example a range written
    backwards) is kept verbatim as Qualitative instead of raising.
    """
    try:
        return parse_constraint(text)
    except ConstraintError:
        return Qualitative(text.strip())


def _make_between(low: str, high: str, unit: str, source: str) -> Between:
    low_value = ExactDecimal(low)
    high_value = ExactDecimal(high)
    if low_value > high_value:
        raise ConstraintError(
            f"inverted range in {source!r}: {low_value} > {high_value}"
        )
    return Between(low_value, high_value, unit)


def render_constraint(constraint: Constraint) -> str:
    """Canonical text form; ``parse_constraint(render_constraint(c)) == c``."""
    if isinstance(constraint, AtLeast):
        return f"at least {constraint.bound}{_suffix(constraint.unit)}"
    if isinstance(constraint, AtMost):
        return f"at most {constraint.bound}{_suffix(constraint.unit)}"
    if isinstance(constraint, Between):
        return (
            f"between {constraint.low} and {constraint.high}{_suffix(constraint.unit)}"
        )
    if isinstance(constraint, Exactly):
        return f"exactly {constraint.value}{_suffix(constraint.unit)}"
    if isinstance(constraint, OneOf):
        return "one of {" + ", ".join(sorted(constraint.options)) + "}"
    if isinstance(constraint, Qualitative):
        return constraint.text
    raise TypeError(f"unknown constraint type {type(constraint).__name__}")


def _suffix(unit: str) -> str:
    return f" {unit}" if unit else ""


def is_numeric(constraint: Constraint) -> bool:
    return isinstance(constraint, (AtLeast, AtMost, Between, Exactly))


def constraint_unit(constraint: Constraint) -> str:
    if isinstance(constraint, (AtLeast, AtMost, Exactly, Between)):
        return constraint.unit
    return ""


def interval(constraint: Constraint) -> tuple[Optional[Fraction], Optional[Fraction]]:
    """The set of satisfying values as a closed interval (None = unbounded).

    Only defined for numeric constraints.
    """
    if isinstance(constraint, AtLeast):
        return constraint.bound.as_fraction(), None
    if isinstance(constraint, AtMost):
        return None, constraint.bound.as_fraction()
    if isinstance(constraint, Between):
        return constraint.low.as_fraction(), constraint.high.as_fraction()
    if isinstance(constraint, Exactly):
        value = constraint.value.as_fraction()
        return value, value
    raise ConstraintError(
        f"{type(constraint).__name__} constraint has no numeric interval"
    )


def satisfies(constraint: Constraint, value: Union[ExactDecimal, int, Fraction, str]) -> bool:
    """Does ``value`` meet the constraint?

    Numeric constraints need a numeric value (a decimal string is accepted);
    an option set is checked by string membership; a qualitative constraint
    cannot be checked mechanically and raises.
    """
    if isinstance(constraint, OneOf):
        text = str(value).strip()
        return any(text.lower() == option.lower() for option in constraint.options)
    if isinstance(constraint, Qualitative):
        raise ConstraintError(
            f"qualitative constraint {constraint.text!r} cannot be checked mechanically"
        )
    try:
        number = to_fraction(value)
    except (ValueError, TypeError) as exc:
        raise ConstraintError(
            f"constraint {render_constraint(constraint)!r} needs a numeric value, "
            f"got {value!r}"
        ) from exc
    low, high = interval(constraint)
    if low is not None and number < low:
        return False
    if high is not None and number > high:
        return False
    return True
