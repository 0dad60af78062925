"""Exact Lüroth dynamics: the map T, digits, reconstruction and cylinders.

Points of (0, 1] are `fractions.Fraction` values and digit strings are tuples of
ints >= 2.  Nothing in this module rounds.

Cylinders are left-open and right-closed.  That orientation is forced by the
digit rule d_1(x) = floor(1/x) + 1: x = 1/2 has first digit 3, so 1/2 is the
right endpoint of I_1(3) and is excluded from I_1(2) = (1/2, 1].

The orbit of p/q under T keeps a denominator dividing q, so `digits` is cheap
at any depth.  Going the other way is not: the denominator of `evaluate(w)` is
the product of d(d-1) over w, so its bit length grows linearly in len(w) with
a slope of 2*log2(max digit), and arithmetic on it grows quadratically.
`DIGIT_BUDGET` caps requested depths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BudgetError, DomainError

DIGIT_BUDGET = 100_000

DigitString = tuple[int, ...]


@dataclass(frozen=True)
class Interval:
    """The rational interval (left, right]."""

    left: Fraction
    right: Fraction

    def __post_init__(self):
        if not self.left < self.right:
            raise DomainError(f"empty interval ({self.left}, {self.right}]")

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    def __contains__(self, x) -> bool:
        return self.left < x <= self.right

    def contains_interval(self, other: "Interval") -> bool:
        return self.left <= other.left and other.right <= self.right

    def distance(self, other: "Interval") -> Fraction:
        """Gap between two disjoint intervals (0 if they touch or overlap)."""
        if other.left >= self.right:
            return other.left - self.right
        if self.left >= other.right:
            return self.left - other.right
        return Fraction(0)


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions, `p/q` strings and decimal strings to a Fraction.

    Floats go through their shortest repr, so 0.2 becomes 1/5 rather than the
    binary neighbour of 0.2.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"not a finite number: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse {value!r} as a rational") from exc
    raise DomainError(f"unsupported numeric type {type(value).__name__}")


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_digits(text: str) -> DigitString:
    """Parse a comma-separated digit string such as ``3,2,2``."""
    text = text.strip()
    if not text:
        return ()
    try:
        word = tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise DomainError(f"cannot parse digit string {text!r}") from exc
    return check_digits(word)


def format_digits(word: Iterable[int]) -> str:
    return ",".join(str(d) for d in word)


def check_digits(word: Iterable[int]) -> DigitString:
    word = tuple(int(d) for d in word)
    for i, d in enumerate(word):
        if d < 2:
            raise DomainError(f"digit {d} at position {i + 1} is < 2")
    return word


def _check_point(x) -> Fraction:
    x = to_rational(x)
    if not 0 < x <= 1:
        raise DomainError(f"{x} is outside (0, 1]")
    return x


def first_digit(x) -> int:
    """d_1(x) = floor(1/x) + 1."""
    x = _check_point(x)
    return math.floor(1 / x) + 1


def luroth_map(x) -> Fraction:
    """T(x) = a(a+1)(x - 1/(a+1)) with a = floor(1/x)."""
    x = _check_point(x)
    a = math.floor(1 / x)
    return a * (a + 1) * (x - Fraction(1, a + 1))


def digits(x, n: int, budget: int = DIGIT_BUDGET) -> DigitString:
    """The first n Lüroth digits of x, by exact iteration of T."""
    x = _check_point(x)
    if n < 1:
        raise DomainError(f"digit count must be >= 1, got {n}")
    if n > budget:
        raise BudgetError(f"{n} digits requested, budget is {budget}")
    out = []
    for _ in range(n):
        a = math.floor(1 / x)
        out.append(a + 1)
        x = a * (a + 1) * (x - Fraction(1, a + 1))
    return tuple(out)


def evaluate(word: Sequence[int]) -> Fraction:
    """Partial sum of the Lüroth series for `word`; the empty word gives 0.

    This is also the left endpoint of `cylinder(word)`.
    """
    word = check_digits(word)
    total = Fraction(0)
    scale = Fraction(1)
    for d in word:
        total += scale / d
        scale /= d * (d - 1)
    return total


def cylinder_length(word: Sequence[int]) -> Fraction:
    """|I_n(word)| = 1 / prod d(d-1)."""
    word = check_digits(word)
    if not word:
        raise DomainError("cylinder of the empty word")
    return Fraction(1, math.prod(d * (d - 1) for d in word))


def cylinder(word: Sequence[int]) -> Interval:
    """The set of points whose expansion starts with `word`, as (left, right]."""
    word = check_digits(word)
    if not word:
        raise DomainError("cylinder of the empty word")
    left = Fraction(0)
    scale = Fraction(1)
    for d in word:
        left += scale / d
        scale /= d * (d - 1)
    return Interval(left, left + scale)


def digit_mass(t: int) -> Fraction:
    """Lebesgue probability that a digit equals t, i.e. 1/(t(t-1))."""
    if t < 2:
        raise DomainError(f"digit {t} is < 2")
    return Fraction(1, t * (t - 1))
