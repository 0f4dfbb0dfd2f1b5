import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicheis.calculus import (
    MultiSeries,
    TailBound,
    convergence_certify,
    delta_degree,
    dilation_pullback,
    horizontal_ode_solve,
    invariant_derivative,
    is_delta_homogeneous,
    left_translate,
    left_translate_series,
    series_eval,
    variables,
)
from padicheis.errors import (
    NonInvertibleDegree,
    NotComposable,
    NotConvergentOnDomain,
    OutsideDomain,
)
from padicheis.heis import HeisGroup
from padicheis.literals import heis_names, parse_poly
from padicheis.rings import BilinearForm, Ring, standard_symplectic

Q = Ring.rationals()


def deriv_at_zero(F, deg: int) -> Fraction:
    # oracle: F'(0) of a degree <= deg polynomial from exact samples (Lagrange)
    xs = list(range(deg + 1))
    total = Fraction(0)
    for i, xi in enumerate(xs):
        # d/dh of the i-th basis polynomial at h = 0
        others = [xj for j, xj in enumerate(xs) if j != i]
        denom = Fraction(1)
        for xj in others:
            denom *= xi - xj
        s = Fraction(0)
        for k in range(len(others)):
            prod = Fraction(1)
            for m, xm in enumerate(others):
                if m != k:
                    prod *= -xm
            s += prod
        total += F(Fraction(xi)) * s / denom
    return total


def random_form(rng, N):
    return BilinearForm([[Q(Fraction(rng.randint(-3, 3), rng.choice([1, 2, 3]))) for _ in range(N)] for _ in range(N)], Q)


def random_poly(rng, N, deg=4):
    names = heis_names(N, symbols=False)
    coeffs = {}
    for _ in range(6):
        alpha = [0] * (N + 1)
        for _ in range(rng.randint(0, deg)):
            alpha[rng.randrange(N + 1)] += 1
        coeffs[tuple(alpha)] = Q(rng.randint(-5, 5))
    return MultiSeries(Q, N + 1, coeffs, None, names)


def ev(f, z, t):
    return f.evaluate([Q(x) for x in z] + [Q(t)]).value


def test_examples():
    b = standard_symplectic(1, Q)
    names = heis_names(2)
    t = parse_poly("t", Q, names)
    w1, w2, s = parse_poly("w1", Q, names), parse_poly("w2", Q, names), parse_poly("s", Q, names)
    assert str(left_translate(b, t, ([w1, w2], s))) == str(parse_poly("t - s + z1*w2 - z2*w1", Q, names))
    G = HeisGroup(BilinearForm([[Q(1)]], Q))
    n1 = heis_names(1, symbols=False)
    f = parse_poly("t", Q, n1)
    assert invariant_derivative(G.law, f, 0) == parse_poly("z1", Q, n1)
    assert invariant_derivative(G.law, parse_poly("z1", Q, n1), 0) == parse_poly("1", Q, n1)
    r = MultiSeries.constant(Q, 2, Q(5), n1)
    assert dilation_pullback(f, r, 1) == parse_poly("25*t", Q, n1)


@pytest.mark.parametrize("seed", range(6))
def test_invariant_derivative_against_flow(seed):
    rng = random.Random(seed)
    N = rng.choice([1, 2])
    b = random_form(rng, N)
    G = HeisGroup(b)
    f = random_poly(rng, N)
    for _ in range(3):
        z = [Fraction(rng.randint(-4, 4), rng.choice([1, 5])) for _ in range(N)]
        t = Fraction(rng.randint(-4, 4))
        g = G.point(z, t)
        for l in range(N):
            e = [Fraction(int(i == l)) for i in range(N)]

            def F(h):
                x = G.mul(g, G.point([h * c for c in e], 0))
                return ev(f, [c.value for c in x.z], x.t.value)

            assert ev(invariant_derivative(b, f, l), z, t) == deriv_at_zero(F, 2 * f.degree() + 1)


@pytest.mark.parametrize("seed", range(6))
def test_translate_and_dilate_against_group(seed):
    rng = random.Random(100 + seed)
    N = rng.choice([1, 2])
    b = random_form(rng, N)
    G = HeisGroup(b)
    f = random_poly(rng, N)
    w = [Fraction(rng.randint(-3, 3), 2) for _ in range(N)]
    s = Fraction(rng.randint(-3, 3))
    r = Fraction(rng.randint(-3, 3), 3)
    Lf = left_translate(b, f, ([Q(x) for x in w], Q(s)))
    Df = dilation_pullback(f, Q(r), N)
    for _ in range(4):
        z = [Fraction(rng.randint(-5, 5)) for _ in range(N)]
        t = Fraction(rng.randint(-5, 5))
        x = G.mul(G.inv(G.point(w, s)), G.point(z, t))
        assert ev(Lf, z, t) == ev(f, [c.value for c in x.z], x.t.value)
        assert ev(Df, z, t) == ev(f, [r * c for c in z], r * r * t)


@pytest.mark.parametrize("ring", ["Q", "Z/7"])
@pytest.mark.parametrize("N", [1, 2])
def test_symbolic_identities(ring, N):
    R = Ring.parse(ring)
    rng = random.Random(N)
    b = BilinearForm([[R.random(rng) if ring != "Q" else R(rng.randint(-3, 3)) for _ in range(N)] for _ in range(N)], R)
    names = heis_names(N)
    V = variables(R, names)
    w, s, r = V[N + 1 : 2 * N + 1], V[2 * N + 1], V[2 * N + 2]
    coeffs = {}
    for _ in range(6):
        alpha = [0] * len(names)
        for _ in range(rng.randint(0, 4)):
            alpha[rng.randrange(N + 1)] += 1
        coeffs[tuple(alpha)] = R(rng.randint(-5, 5))
    f = MultiSeries(R, len(names), coeffs, None, names)
    for l in range(N):
        lhs = invariant_derivative(b, left_translate(b, f, (w, s)), l)
        assert lhs == left_translate(b, invariant_derivative(b, f, l), (w, s))
        lhs = invariant_derivative(b, dilation_pullback(f, r, N), l)
        assert lhs == r * dilation_pullback(invariant_derivative(b, f, l), r, N)


def test_delta_homogeneity():
    names = heis_names(2, symbols=False)
    f = parse_poly("z1*z2 + 3*t - z1^2", Q, names)
    assert delta_degree((1, 1, 0)) == 2 and delta_degree((0, 0, 1)) == 2
    assert is_delta_homogeneous(f, 2, 2).passed
    assert not is_delta_homogeneous(parse_poly("z1 + t", Q, names), 1, 2).passed


def test_horizontal_ode_example():
    b = standard_symplectic(1, Q)
    x = MultiSeries.variable(Q, 1, 0, ("x",))
    curve = horizontal_ode_solve(b, [x, x * x], 0, 12)
    # phi3' = phi1 phi2' - phi2 phi1' = x^2, so phi3 = x^3 / 3
    assert curve.phis[2].coeffs == {(3,): Q(Fraction(1, 3))}
    assert curve.satisfies_ode().passed
    f = parse_poly("z1*t + z2^2", Q, heis_names(2, symbols=False))
    assert curve.chain_rule_check(f).passed
    moved = curve.translate([Q(2), Q(-1)], Q(7))
    assert moved.satisfies_ode().passed
    c5 = horizontal_ode_solve(b, [x, x], 5, 6)
    assert c5.phis[2].coeffs == {(0,): Q(5)}


def test_horizontal_ode_padic():
    R = Ring.padic(5, 20, integral=True)
    b = standard_symplectic(1, R)
    x = MultiSeries.variable(R, 1, 0, ("x",))
    assert horizontal_ode_solve(b, [x, x * x], 0, 4).satisfies_ode().passed
    # integrating x^4 needs division by 5 in Z_5
    with pytest.raises(NonInvertibleDegree):
        horizontal_ode_solve(b, [x * x, x * x * x], 0, 6)
    Rq = Ring.padic(5, 20)
    bq = standard_symplectic(1, Rq)
    xq = MultiSeries.variable(Rq, 1, 0, ("x",))
    assert horizontal_ode_solve(bq, [xq * xq, xq * xq * xq], 0, 6).satisfies_ode().passed


def test_truncation_rules():
    x = MultiSeries.variable(Q, 1, 0, ("x",))
    f = (x + 1).truncate(3)
    assert (f * f).order == 3
    with pytest.raises(NotComposable):
        f.substitute([x + 1])


@pytest.mark.parametrize("p", [2, 3, 5])
def test_geometric_series_eval(p):
    f = convergence_certify(lambda a: Fraction(p) ** a[0], [0], TailBound(1, 0), p=p)
    for m in (1, 5, 12, 20):
        assert series_eval(f, [1], m).residue(m) == pow(1 - p, -1, p**m)
    # at x = p the sum is 1 / (1 - p^2)
    assert series_eval(f, [p], 10).residue(10) == pow(1 - p * p, -1, p**10)
    with pytest.raises(OutsideDomain):
        series_eval(f, [Fraction(1, p)], 5)


def test_certification_rejects():
    with pytest.raises(NotConvergentOnDomain):
        convergence_certify(lambda a: 1, [0], TailBound(1, 0), p=3)


@settings(max_examples=40, deadline=None)
@given(x=st.integers(-50, 50), y=st.integers(-50, 50))
def test_eval_multiplicative(x, y):
    p, m = 3, 8
    f = convergence_certify(lambda a: Fraction(p) ** a[0] * (a[0] + 1), [0], TailBound(1, 0), p=p)
    g = convergence_certify(lambda a: Fraction(p) ** (2 * a[0]), [0], TailBound(2, 0), p=p)
    fg = f * g
    lhs = series_eval(fg, [x], m)
    rhs = series_eval(f, [x], m) * series_eval(g, [x], m)
    assert lhs.residue(m) == rhs.residue(m)
    # oracle: closed forms 1/(1-px)^2 and 1/(1-p^2 x)
    mod = p**m
    assert lhs.residue(m) == pow((1 - p * x) ** 2 * (1 - p * p * x), -1, mod)


def test_left_translate_series():
    p, m = 3, 6
    R = Ring.padic(p, 20)
    b = standard_symplectic(1, R)
    f = convergence_certify(lambda a: Fraction(p) ** (a[0] + a[1] + a[2]), [0, 0, 0], TailBound(1, 0), p=p)
    Lf = left_translate_series(f, b, ([R(3), R(6)], R(9)), m, R)
    G = HeisGroup(standard_symplectic(1, Q))
    g = G.point([3, 6], 9)
    for pt in ([1, 2, 4], [0, 3, 5]):
        x = G.mul(G.inv(g), G.point(pt[:2], pt[2]))
        expect = series_eval(f, [c.value for c in x.z] + [x.t.value], m)
        assert series_eval(Lf, pt, m).residue(m) == expect.residue(m)
