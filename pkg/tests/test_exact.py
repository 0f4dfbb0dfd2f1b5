import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicheis.errors import (
    CannotCertifyConvergence,
    IndistinguishableFromZero,
    InsufficientPrecision,
    InvalidPrime,
    ParseError,
)
from padicheis.exact import (
    AbsValue,
    PadicScalar,
    geometric_inverse,
    int_valuation,
    is_prime,
    padic_from_rational,
    padic_inv,
    rational_padic_abs,
    rational_valuation,
    residue_iso_check,
    series_sum,
    unit_inverse,
)

PRIMES = [2, 3, 5, 7, 11]


def naive_val(n: int, p: int) -> int:
    # oracle: repeated division
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def oracle_abs(x: Fraction, p: int) -> Fraction:
    if x == 0:
        return Fraction(0)
    v = naive_val(x.numerator, p) - naive_val(x.denominator, p)
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


nonzero_rationals = st.fractions(max_denominator=10**6).filter(lambda x: x != 0)


# -- scalar basics ------------------------------------------------------------


def test_valuation_examples():
    assert int_valuation(48, 2) == 4
    assert rational_valuation(Fraction(-3, 8), 2) == -3
    assert rational_padic_abs(48, 2).as_fraction() == Fraction(1, 16)
    assert rational_padic_abs(Fraction(-3, 8), 2).as_fraction() == 8
    assert rational_padic_abs(0, 5).as_fraction() == 0


def test_from_rational_digits():
    x = padic_from_rational(18, 3, 2)
    assert x.valuation == 2
    assert x.digits == [2, 0]
    assert x.to_text() == "p:3;v:2;d:[2,0];k:2"


def test_geometric_inverse_example():
    x = padic_from_rational(Fraction(1, 1 - 3), 3, 4)
    assert x.unit == 40
    assert x.digits == [1, 1, 1, 1]
    assert geometric_inverse(3, 1, 4).residue(4) == pow(-2, -1, 81)


def test_cancellation_is_fuzzy():
    a = padic_from_rational(1, 5, 4)
    b = padic_from_rational(-1, 5, 4)
    c = a + b
    assert c.is_fuzzy
    assert c.to_text() == "p:5;O:4"
    with pytest.raises(IndistinguishableFromZero):
        c.abs()


def test_exact_zero():
    z = PadicScalar.zero(7)
    assert z.is_exact_zero
    assert z.abs().as_fraction() == 0
    assert PadicScalar.parse("p:7;zero") == z


def test_not_prime():
    assert not is_prime(1) and not is_prime(91) and is_prime(97)
    with pytest.raises(InvalidPrime):
        padic_from_rational(1, 6, 3)


def test_residue_needs_precision():
    x = padic_from_rational(3, 3, 1)
    with pytest.raises(InsufficientPrecision):
        x.residue(3)
    with pytest.raises(ValueError):
        padic_from_rational(Fraction(1, 3), 3, 4).residue(2)
    y = padic_from_rational(7, 3, 3)
    assert y.residue(2) == 7 % 9


@pytest.mark.parametrize("text", ["garbage", "p:3;v:0;d:[5];k:1", "p:3;v:0;d:[1];k:2"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        PadicScalar.parse(text)
    with pytest.raises(InvalidPrime):
        PadicScalar.parse("p:4;v:0;d:[1];k:1")


def test_abs_value_ordering():
    a, b = AbsValue(3, 2), AbsValue(3, -1)
    assert a < b
    assert (a * b).as_fraction() == Fraction(1, 3)
    assert AbsValue(3, None) < a


# -- properties -----------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(x=nonzero_rationals, y=nonzero_rationals, p=st.sampled_from(PRIMES))
def test_abs_multiplicative_and_ultrametric(x, y, p):
    X, Y = padic_from_rational(x, p, 30), padic_from_rational(y, p, 30)
    assert (X * Y).abs().as_fraction() == oracle_abs(x * y, p)
    assert X.abs().as_fraction() == oracle_abs(x, p)
    if x + y != 0:
        s = oracle_abs(x + y, p)
        m = max(oracle_abs(x, p), oracle_abs(y, p))
        assert s <= m
        if oracle_abs(x, p) != oracle_abs(y, p):
            assert s == m
            assert (X + Y).abs().as_fraction() == s


@settings(max_examples=200, deadline=None)
@given(x=nonzero_rationals, p=st.sampled_from(PRIMES), k=st.integers(1, 20))
def test_roundtrip_text_and_congruence(x, p, k):
    X = padic_from_rational(x, p, k)
    assert PadicScalar.parse(X.to_text()) == X
    # X agrees with x modulo p^(v+k)
    diff = X.to_rational() - x
    assert diff == 0 or rational_valuation(diff, p) >= X.valuation + k


@settings(max_examples=200, deadline=None)
@given(u=st.integers(1, 10**9), p=st.sampled_from(PRIMES), k=st.integers(1, 30))
def test_unit_inverse_matches_pow(u, p, k):
    if u % p == 0:
        u += 1
    assert unit_inverse(u, p, k) == pow(u, -1, p**k)


@settings(max_examples=100, deadline=None)
@given(x=nonzero_rationals, p=st.sampled_from(PRIMES))
def test_inverse(x, p):
    X = padic_from_rational(x, p, 25)
    Y = padic_inv(X)
    assert (X * Y).congruent(padic_from_rational(1, p, 25))
    assert Y.congruent(padic_from_rational(1 / x, p, 25))
    assert (1 / X).congruent(Y)
    assert not Y.congruent(padic_from_rational(1 / x + p**Y.valuation, p, 25))


def test_residue_iso_check():
    for p in (2, 3, 5):
        for j in (1, 2, 3):
            r = residue_iso_check(p, j, 300, random.Random(1))
            assert r.passed
            assert r.classes_hit == p**j


def test_series_sum():
    terms = [padic_from_rational(2**l, 2, 10) for l in range(5)]
    assert series_sum(terms, 5).residue(5) == 31
    with pytest.raises(CannotCertifyConvergence):
        series_sum(iter(terms), 5)
    assert series_sum([], 5, prime=2).is_exact_zero
