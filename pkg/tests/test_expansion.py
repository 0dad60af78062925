import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from luroth.errors import BudgetError, DomainError
from luroth.expansion import (
    Interval, check_digits, cylinder, cylinder_length, digit_mass, digits, evaluate,
    first_digit, format_digits, format_rational, luroth_map, parse_digits, to_rational,
)

rationals = st.integers(1, 10**6).flatmap(
    lambda q: st.integers(1, q).map(lambda p: Fraction(p, q)))
words = st.lists(st.integers(2, 40), min_size=1, max_size=25).map(tuple)


class TestDigits:
    def test_two_thirds(self):
        assert digits(Fraction(2, 3), 4) == (2, 4, 2, 2)

    def test_one_is_fixed(self):
        assert luroth_map(1) == 1
        assert digits(1, 5) == (2,) * 5

    def test_half_sits_in_digit_three(self):
        # right endpoints belong to their cylinder
        assert first_digit(Fraction(1, 2)) == 3
        assert Fraction(1, 2) in cylinder((3,))
        assert Fraction(1, 2) not in cylinder((2,))

    def test_reciprocals(self):
        for d in range(2, 50):
            assert first_digit(Fraction(1, d - 1)) == d
            assert luroth_map(Fraction(1, d - 1)) == 1

    @given(rationals)
    def test_map_keeps_denominator(self, x):
        y = x
        for _ in range(20):
            y = luroth_map(y)
            assert x.denominator % y.denominator == 0
            assert 0 < y <= 1

    @given(rationals, st.integers(1, 30))
    def test_point_in_its_cylinder(self, x, n):
        word = digits(x, n)
        assert x in cylinder(word)
        assert evaluate(word) < x

    @pytest.mark.parametrize("bad", [0, -1, Fraction(3, 2), "2", "abc", float("nan")])
    def test_rejects_out_of_domain(self, bad):
        with pytest.raises(DomainError):
            digits(bad, 3)

    def test_budget(self):
        with pytest.raises(BudgetError):
            digits(Fraction(1, 3), 11, budget=10)
        with pytest.raises(DomainError):
            digits(Fraction(1, 3), 0)


class TestCylinders:
    @given(words)
    def test_length_formula(self, word):
        iv = cylinder(word)
        assert iv.length == cylinder_length(word)
        assert iv.left == evaluate(word)
        assert iv.length == Fraction(1, math.prod(d * (d - 1) for d in word))

    @given(words, st.integers(2, 60))
    def test_child_position(self, word, d):
        parent, child = cylinder(word), cylinder(word + (d,))
        assert parent.contains_interval(child)
        assert child.left == parent.left + parent.length / d
        assert child.right == parent.left + parent.length / (d - 1)

    @given(words)
    def test_digits_of_right_endpoint(self, word):
        # the right endpoint is a point of the cylinder, so its digits start with word
        iv = cylinder(word)
        assert digits(iv.right, len(word)) == word

    def test_telescoping(self):
        total = sum((cylinder_length((t,)) for t in range(2, 1001)), Fraction(0))
        assert total == 1 - Fraction(1, 1000)
        assert sum(digit_mass(t) for t in range(2, 11)) == Fraction(9, 10)

    def test_empty_word(self):
        assert evaluate(()) == 0
        with pytest.raises(DomainError):
            cylinder(())
        with pytest.raises(DomainError):
            cylinder_length(())

    def test_bad_digits(self):
        with pytest.raises(DomainError):
            check_digits((3, 1))
        with pytest.raises(DomainError):
            digit_mass(1)


class TestIntervals:
    def test_half_open(self):
        iv = Interval(Fraction(1, 4), Fraction(1, 2))
        assert Fraction(1, 2) in iv and Fraction(1, 4) not in iv

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            Interval(Fraction(1, 2), Fraction(1, 2))

    def test_distance(self):
        a = Interval(Fraction(0), Fraction(1, 4))
        b = Interval(Fraction(1, 2), Fraction(1))
        assert a.distance(b) == b.distance(a) == Fraction(1, 4)
        assert a.distance(a) == 0


class TestParsing:
    def test_float_goes_through_repr(self):
        assert to_rational(0.2) == Fraction(1, 5)
        assert to_rational("0.25") == Fraction(1, 4)
        assert to_rational(" 3/7 ") == Fraction(3, 7)

    def test_round_trip_text(self):
        assert parse_digits(format_digits((3, 2, 2))) == (3, 2, 2)
        assert parse_digits("") == ()
        assert format_rational(Fraction(11, 24)) == "11/24"
        with pytest.raises(DomainError):
            parse_digits("3,x")

    def test_bad_type(self):
        with pytest.raises(DomainError):
            to_rational([1])
        with pytest.raises(DomainError):
            to_rational("1/0")


@settings(max_examples=50)
@given(st.integers(0, 2**32))
def test_seeded_rationals_round_trip(seed):
    rng = random.Random(seed)
    q = rng.randint(1, 10**6)
    x = Fraction(rng.randint(1, q), q)
    word = digits(x, 40)
    for n in (1, 10, 40):
        assert x in cylinder(word[:n])
