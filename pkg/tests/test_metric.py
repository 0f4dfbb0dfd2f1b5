import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicheis.errors import (
    GaugeRequiresIntegralForm,
    InsufficientPrecision,
    NeedMorePrefix,
    OutsideIntegralDomain,
)
from padicheis.exact import AbsValue, PadicScalar, rational_valuation
from padicheis.heis import HeisGroup
from padicheis.metric import (
    GaugeValue,
    SeqPoint,
    gauge,
    gauge_metric,
    integral_bi_invariant_distance,
    integral_metric,
    left_invariant_distance,
    seq_distance,
    ultrametric_check,
)
from padicheis.rings import BilinearForm, Ring

P = 3
Q = Ring.rationals()


def oracle_half_exponent(z, t, p):
    # ||(z,t)|| = p^(-m/2) with m = min(2 v(z_j), v(t)); None for the identity
    cands = [2 * rational_valuation(x, p) for x in z if x != 0]
    if t != 0:
        cands.append(rational_valuation(t, p))
    return min(cands) if cands else None


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def test_gauge_examples():
    G = HeisGroup.symplectic(1, Ring.integers())
    assert str(gauge(G, G.point([1, 0], 0), 3)) == "3^(-0/2)"
    assert str(gauge(G, G.point([0, 0], 9), 3)) == "3^(-2/2)"
    assert str(gauge(G, G.point([0, 0], 3), 3)) == "3^(-1/2)"
    assert str(gauge(G, G.identity(), 3)) == "0"
    GQ = HeisGroup.symplectic(1, Q)
    assert str(gauge(GQ, GQ.point([Fraction(1, 3), 0], 0), 3)) == "3^(2/2)"


@settings(max_examples=150, deadline=None)
@given(z=st.lists(rationals, min_size=2, max_size=2), t=rationals)
def test_gauge_matches_oracle(z, t):
    G = HeisGroup.symplectic(1, Q)
    assert gauge(G, G.point(z, t), P).half_exponent == oracle_half_exponent(z, t, P)


@settings(max_examples=150, deadline=None)
@given(a=st.lists(rationals, min_size=3, max_size=3), b=st.lists(rationals, min_size=3, max_size=3),
       r=rationals.filter(lambda x: x != 0))
def test_gauge_properties(a, b, r):
    G = HeisGroup.symplectic(1, Q)
    x, y = G.point(a[:2], a[2]), G.point(b[:2], b[2])
    nx, ny = gauge(G, x, P), gauge(G, y, P)
    assert not max(nx, ny) < gauge(G, G.mul(x, y), P)
    assert gauge(G, G.inv(x), P) == nx
    assert gauge(G, G.dilate(r, x), P) == nx.scale(AbsValue(P, rational_valuation(r, P)))
    g = G.point([1, Fraction(2, 3)], 5)
    assert left_invariant_distance(G, G.mul(g, x), G.mul(g, y), P) == left_invariant_distance(G, x, y, P)


def test_gauge_rejects_nonintegral_form():
    G = HeisGroup(BilinearForm([[Q(Fraction(1, 3))]], Q))
    with pytest.raises(GaugeRequiresIntegralForm):
        gauge(G, G.point([1], 0), 3)


def test_gauge_fuzzy_coordinates():
    R = Ring.padic(3, 5)
    G = HeisGroup.symplectic(1, R)
    # |t| = 3^-1 so the gauge is 3^(-1/2); z is only known to be O(3^4), which cannot beat it
    a = G.point([PadicScalar.fuzzy(3, 4), 0], 3)
    assert gauge(G, a).half_exponent == 1
    with pytest.raises(InsufficientPrecision):
        gauge(G, G.point([PadicScalar.fuzzy(3, 1), 0], 27))


def test_integral_distance():
    G = HeisGroup.symplectic(1, Q)
    a, b = G.point([1, 2], 3), G.point([4, 2], 3)
    assert integral_bi_invariant_distance(G, a, b, 3).as_fraction() == Fraction(1, 3)
    with pytest.raises(OutsideIntegralDomain):
        integral_bi_invariant_distance(G, G.point([Fraction(1, 3), 0], 0), a, 3)
    rng = random.Random(5)
    pts = [G.point([rng.randrange(27) for _ in range(2)], rng.randrange(27)) for _ in range(12)]
    d = integral_metric(G, 3)
    for x in pts:
        for y in pts:
            for g in pts[:4]:
                assert d(G.mul(x, g), G.mul(y, g)) == d(x, y)
                assert d(G.mul(g, x), G.mul(g, y)) == d(x, y)


def test_ultrametric_checks():
    G = HeisGroup.symplectic(1, Q)
    rng = random.Random(1)
    pts = [G.point([Fraction(rng.randrange(-9, 9), 3 ** rng.randrange(2)) for _ in range(2)], rng.randrange(-30, 30))
           for _ in range(15)]
    assert ultrametric_check(gauge_metric(G, 3), pts).passed
    # control: the archimedean distance on Q is not an ultrametric
    v = ultrametric_check(lambda x, y: abs(x - y), [Fraction(0), Fraction(1), Fraction(2)])
    assert not v.passed and v.witness == (Fraction(0), Fraction(1), Fraction(2))


def test_sequence_metric():
    a = SeqPoint(2, (0, 1, 1))
    b = SeqPoint(2, (0, 1, 0))
    assert seq_distance(a, b, Fraction(1, 2)) == Fraction(1, 4)
    with pytest.raises(NeedMorePrefix):
        seq_distance(a, SeqPoint(2, (0, 1, 1, 0)), Fraction(1, 2))
    x = SeqPoint(3, (), (0, 1))
    y = SeqPoint(3, (0, 1, 0, 1), (0, 1))
    assert seq_distance(x, y, Fraction(1, 3)) == 0
    rng = random.Random(2)
    # equal-length tails with a shared prefix length give distinct sequences
    pts = {SeqPoint(2, tuple(rng.randrange(2) for _ in range(2)), tuple(rng.randrange(2) for _ in range(3)))
           for _ in range(20)}
    assert ultrametric_check(lambda u, v: seq_distance(u, v, Fraction(1, 2)), pts).passed


def test_gauge_value_order():
    assert GaugeValue(3, None) < GaugeValue(3, 4) < GaugeValue(3, 1) < GaugeValue(3, -2)
    assert str(GaugeValue(5, 3)) == "5^(-3/2)"
