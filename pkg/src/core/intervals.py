"""
EXACT INTERVAL SETS
===================
Closed rational intervals inside [0,1] and normalized finite unions of them.
All values are fractions.Fraction; floats are refused so nothing is rounded.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, List, Optional, Tuple, Union

from .errors import GeometryError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction, refusing floats"""
    if isinstance(value, bool):
        raise GeometryError(f"❌ Boolean is not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise GeometryError(f"❌ Decimal literal refused (use p/q): {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise GeometryError(f"❌ Zero denominator in {value!r}")
        except ValueError:
            raise GeometryError(f"❌ Not a rational literal: {value!r}")
    raise GeometryError(f"❌ Cannot use {type(value).__name__} as an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Serialize as "p/q", or as an integer string when q = 1"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def midpoint(a: Fraction, b: Fraction) -> Fraction:
    return (a + b) / 2


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with 0 <= lo <= hi <= 1"""
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo = as_rational(self.lo)
        hi = as_rational(self.hi)
        if lo > hi:
            raise GeometryError(f"❌ Interval with lo > hi: [{lo}, {hi}]")
        if lo < 0 or hi > 1:
            raise GeometryError(f"❌ Interval outside [0,1]: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value: RationalLike) -> "Interval":
        return cls(value, value)

    @classmethod
    def unit(cls) -> "Interval":
        return cls(ZERO, ONE)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersect(self, other: "Interval") -> Optional["Interval"]:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            return None
        return Interval(lo, hi)

    def __str__(self) -> str:
        if self.is_point:
            return "{" + format_rational(self.lo) + "}"
        return f"[{format_rational(self.lo)},{format_rational(self.hi)}]"


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, pairwise disjoint, maximal tuple of closed intervals (may be empty)"""
    intervals: Tuple[Interval, ...] = ()

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def is_single_interval(self) -> bool:
        return len(self.intervals) == 1

    @property
    def is_singleton(self) -> bool:
        return len(self.intervals) == 1 and self.intervals[0].is_point

    def contains(self, value: Fraction) -> bool:
        return any(interval.contains(value) for interval in self.intervals)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return normalize_intervals(list(self.intervals) + list(other.intervals))

    def __str__(self) -> str:
        if self.is_empty:
            return "∅"
        return " ∪ ".join(str(interval) for interval in self.intervals)


def normalize_intervals(raw: Iterable[Interval]) -> IntervalSet:
    """Merge overlapping or touching intervals into a sorted maximal union"""
    ordered = sorted(raw, key=lambda interval: (interval.lo, interval.hi))
    merged: List[Interval] = []
    for interval in ordered:
        if merged and interval.lo <= merged[-1].hi:
            last = merged[-1]
            if interval.hi > last.hi:
                merged[-1] = Interval(last.lo, interval.hi)
        else:
            merged.append(interval)
    return IntervalSet(tuple(merged))


def uncovered_value(a: IntervalSet, b: Interval) -> Optional[Fraction]:
    """Return a rational point of b outside the union of a, or None when b is covered.

    Gaps of positive length yield their midpoint, so the witness never sits
    on a covered endpoint.
    """
    cursor = b.lo
    cursor_covered = False
    for interval in a.intervals:
        if interval.hi < cursor:
            continue
        if interval.lo > b.hi:
            break
        if interval.lo > cursor:
            return midpoint(cursor, interval.lo) if cursor_covered else cursor
        if interval.hi >= b.hi:
            return None
        cursor = interval.hi
        cursor_covered = True
    if cursor_covered:
        return midpoint(cursor, b.hi)
    return cursor


def covers(a: IntervalSet, b: Interval) -> bool:
    return uncovered_value(a, b) is None
