from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mmdescend.exactnum import (
    EntryParseError,
    Field,
    FieldMismatchError,
    QElem,
    format_entry,
    parse_entry,
    qadd,
    qconj,
    qinv,
    qmul,
    qnorm,
    rational_sqrt,
)

I = Field(-1)
R161 = Field(161)

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elems(K):
    return st.builds(lambda a, b: K(a, b), rats, rats)


fields = st.sampled_from([Field(-1), Field(2), Field(-3), Field(161)])


@st.composite
def pairs(draw):
    K = draw(fields)
    return draw(elems(K)), draw(elems(K))


@st.composite
def triples(draw):
    K = draw(fields)
    return draw(elems(K)), draw(elems(K)), draw(elems(K))


def test_field_validation():
    assert Field(-1) is Field(-1)
    assert Field(161).d == 161
    for bad in (0, 1, 4, -4, 12, 18):
        with pytest.raises(ValueError):
            Field(bad)


def test_norm_of_one_plus_i():
    assert qmul(I(1, 1), I(1, -1)) == 2


def test_root_squared():
    assert qmul(R161(0, 1), R161(0, 1)) == 161


def test_sum_with_conjugate_is_twice_rational_part():
    x = I(Fraction(1, 2), Fraction(1, 3))
    assert qadd(x, qconj(x)) == 1


def test_inverse_examples():
    assert qinv(I(0, 1)) == I(0, -1)
    assert qinv(I(2)) == I(Fraction(1, 2))
    K = Field(2)
    x = K(1, 1)
    assert qinv(x) == K(-1, 1)
    assert x * K(-1, 1) == 1


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        qinv(I.zero)


def test_conj_and_norm_examples():
    assert qconj(I(3, 2)) == I(3, -2)
    assert qnorm(I(0, 1)) == 1
    assert qnorm(I(3, 4)) == 25


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        I(1, 1) + Field(2)(1, 1)
    with pytest.raises(FieldMismatchError):
        I(1) * R161(1)


def test_canonical_form():
    x = I(Fraction(6, 4), Fraction(-10, 5))
    assert (x.a.numerator, x.a.denominator) == (3, 2)
    assert (x.b.numerator, x.b.denominator) == (-2, 1)


@pytest.mark.parametrize(
    "text, a, b",
    [
        ("3", 3, 0),
        ("-1/2", Fraction(-1, 2), 0),
        ("s", 0, 1),
        ("-s", 0, -1),
        ("2*s", 0, 2),
        ("2s", 0, 2),
        ("1/2+3/4*s", Fraction(1, 2), Fraction(3, 4)),
        ("1-s", 1, -1),
        ("-7/3 - 2/5*s", Fraction(-7, 3), Fraction(-2, 5)),
    ],
)
def test_parse_entry(text, a, b):
    x = parse_entry(text, R161)
    assert (x.a, x.b) == (a, b)


def test_parse_i_alias():
    assert parse_entry("i", I) == I(0, 1)
    assert parse_entry("1-i", I) == I(1, -1)
    assert parse_entry("-3/2*i", I) == I(0, Fraction(-3, 2))
    assert parse_entry(5, I) == I(5)
    with pytest.raises(EntryParseError):
        parse_entry("i", R161)


@pytest.mark.parametrize("bad", ["", "1/", "x", "1+", "s+1", "1//2", "--1", "1.5", True, 1.5])
def test_parse_rejects(bad):
    with pytest.raises(EntryParseError):
        parse_entry(bad, R161)


@pytest.mark.parametrize(
    "x, text",
    [
        (I(3), "3"),
        (I(0, 1), "i"),
        (I(0, -1), "-i"),
        (I(0, 2), "2*i"),
        (I(1, 1), "1+i"),
        (I(Fraction(1, 2), Fraction(-3, 4)), "1/2-3/4*i"),
        (R161(0, -5), "-5*s"),
        (R161(-1, Fraction(1, 7)), "-1+1/7*s"),
    ],
)
def test_format_entry(x, text):
    assert format_entry(x) == text


@given(fields.flatmap(elems))
def test_format_parse_roundtrip(x):
    assert parse_entry(format_entry(x), x.field) == x


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None


@given(fields.flatmap(elems))
def test_conj_involution(x):
    assert qconj(qconj(x)) == x
    assert (qconj(x) == x) == (x.b == 0)


@given(pairs())
def test_conj_is_a_ring_morphism(xy):
    x, y = xy
    assert qconj(x * y) == qconj(x) * qconj(y)
    assert qconj(x + y) == qconj(x) + qconj(y)


@given(pairs())
def test_norm_multiplicative(xy):
    x, y = xy
    assert qnorm(x * y) == qnorm(x) * qnorm(y)


@given(fields.flatmap(elems))
def test_norm_vanishes_only_at_zero(x):
    assert (qnorm(x) == 0) == (not x)
    assert x * qconj(x) == qnorm(x)


@settings(max_examples=200)
@given(triples())
def test_field_axioms(xyz):
    x, y, z = xyz
    assert (x * y) * z == x * (y * z)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if x:
        assert x * qinv(x) == 1
        assert (y / x) * x == y


@given(fields.flatmap(elems))
def test_results_are_canonical(x):
    y = x * x + x
    for q in (y.a, y.b):
        assert q.denominator > 0
        from math import gcd

        assert gcd(abs(q.numerator), q.denominator) == 1


def test_hash_consistent_with_equality():
    assert hash(I(3)) == hash(Fraction(3))
    assert I(3) == 3
    assert {I(1, 1), I(1, 1)} == {I(1, 1)}
    assert isinstance(I(1), QElem)
