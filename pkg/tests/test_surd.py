from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from rba6.surd import Surd, arith, as_integer, normalize_sqrt, sign

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 15, 30, 8, 12, 45])


@st.composite
def surds(draw, max_terms=3):
    terms = draw(st.lists(st.tuples(fractions, radicands), max_size=max_terms))
    return Surd.from_terms(terms)


def to_mp(x: Surd):
    return mpmath.fsum(mpmath.mpf(q.numerator) / q.denominator * mpmath.sqrt(m) for m, q in x.terms.items())


def test_square_of_example():
    x = Fraction(3, 2) * Surd.sqrt(5) + 7
    assert x * x == 21 * Surd.sqrt(5) + Fraction(241, 4)
    assert str(x) == "3/2*sqrt(5) + 7"


def test_normalize_sqrt_examples():
    assert normalize_sqrt(Fraction(12, 5)) == Fraction(2, 5) * Surd.sqrt(15)
    assert normalize_sqrt(49) == Surd(7)
    assert normalize_sqrt(0) == Surd(0)
    with pytest.raises(ValueError):
        normalize_sqrt(-1)


def test_sign_of_close_sum():
    # sqrt(2) + sqrt(3) - sqrt(10) is about -0.0165
    assert sign(Surd.sqrt(2) + Surd.sqrt(3) - Surd.sqrt(10)) == -1
    assert sign(Surd(0)) == 0


def test_division():
    assert (Surd.sqrt(8) / 2) == Surd.sqrt(2)
    with pytest.raises(ZeroDivisionError):
        Surd(1) / 0
    with pytest.raises(ValueError):
        Surd(1) / Surd.sqrt(2)


def test_integer_and_rational_views():
    assert as_integer(Surd(6)) == 6
    assert as_integer(Surd(Fraction(1, 2))) is None
    assert as_integer(Surd.sqrt(2)) is None
    assert Surd(Fraction(3, 4)).rational() == Fraction(3, 4)
    with pytest.raises(ValueError):
        Surd.sqrt(3).rational()
    assert arith(2, Surd.sqrt(2), "mul") == 2 * Surd.sqrt(2)


def test_text_and_json_round_trip():
    x = Fraction(-3, 7) * Surd.sqrt(30) + Surd.sqrt(2) - 5
    assert Surd.parse(str(x)) == x
    assert Surd.from_json(x.to_json()) == x
    assert Surd.parse("sqrt(12)") == 2 * Surd.sqrt(3)
    with pytest.raises(ValueError):
        Surd.parse("1 + + 2")


@given(surds(), surds(), surds())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Surd(0)
    assert a * 1 == a and a + 0 == a


@given(surds(max_terms=4))
def test_sign_matches_high_precision(x):
    with mpmath.workdps(100):
        v = to_mp(x)
        want = 0 if x.is_zero() else (1 if v > 0 else -1)
    assert sign(x) == want


@given(st.fractions(min_value=0, max_value=10**6, max_denominator=10**4))
def test_normalize_sqrt_squares_back(q):
    r = normalize_sqrt(q)
    assert r * r == Surd(q)
    assert len(r.terms) <= 1


@given(surds(), surds())
def test_hash_consistent_with_equality(a, b):
    if a == b:
        assert hash(a) == hash(b)
    assert hash(a + b - b) == hash(a)


@given(surds())
def test_parse_inverts_str(x):
    assert Surd.parse(str(x)) == x


def test_large_cofactor_split_stays_exact():
    # cofactor above the trial-division bound goes through the factoring fallback
    p, q = 1000003, 1000033
    r = normalize_sqrt(p * p * q * 9)
    assert r == 3 * p * Surd.sqrt(q)
    assert all(type(m) is int for m in r.terms)
    assert (r * Fraction(1, 7) * r) == Surd(Fraction(p * p * q * 9, 7))
