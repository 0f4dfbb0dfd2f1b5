import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicheis.errors import NotARefinement, OverlapError, RefinementTooCoarse
from padicheis.exact import rational_valuation
from padicheis.heis import HeisGroup
from padicheis.measure import (
    Cell,
    CellUnion,
    cell_decompose,
    cell_residue_count,
    dilate_measure,
    finite_quotient_count,
    random_cell,
    reduce_center,
    shear_image,
    shear_invariance_check,
    translate_cells,
)
from padicheis.rings import BilinearForm, Ring


def in_ball(x: Fraction, c: Fraction, j: int, p: int) -> bool:
    # oracle: x - c in p^j Z_p
    d = x - c
    return d == 0 or rational_valuation(d, p) >= j


def in_cell(x, cell: Cell) -> bool:
    return all(in_ball(xi, c, j, cell.prime) for xi, (c, j) in zip(x, cell.coords))


def sample_point(cell: Cell, rng: random.Random):
    p = cell.prime
    return [c + Fraction(p) ** j * (rng.randrange(p**4) + Fraction(rng.randrange(5), 7)) for c, j in cell.coords]


def test_ball_measure():
    for p in (2, 3, 5):
        for j in range(-3, 6):
            assert Cell(p, [(0, j)]).measure() == Fraction(p) ** -j
    assert Cell.box(3, 1, 2).measure() == Fraction(1, 9)


def test_reduce_center():
    assert reduce_center(10, 2, 3) == 1
    assert reduce_center(Fraction(1, 3), 0, 3) == Fraction(1, 3)
    assert reduce_center(Fraction(1, 3), -1, 3) == 0
    assert reduce_center(Fraction(1, 2), 2, 3) == 5
    for c in (Fraction(7, 9), Fraction(-4, 5), Fraction(11)):
        for j in (-2, 0, 3):
            r = reduce_center(c, j, 3)
            assert in_ball(r, c, j, 3) and 0 <= r < Fraction(3) ** j


def test_decompose():
    E = Cell(2, [(0, 0)])
    parts = cell_decompose(E, 2)
    assert [str(c) for c in parts] == [f"ball({k},2)" for k in range(4)]
    assert parts.measure() == E.measure()
    with pytest.raises(NotARefinement):
        cell_decompose(Cell(2, [(0, 3)]), 1)


def test_union_rules():
    a, b = Cell(3, [(0, 0)]), Cell(3, [(1, 1)])
    assert len(CellUnion([a, b])) == 1
    with pytest.raises(OverlapError):
        CellUnion([Cell(3, [(0, 0), (0, 1)]), Cell(3, [(0, 1), (0, 0)])])
    assert CellUnion([Cell(3, [(0, 1)]), Cell(3, [(1, 1)])]).measure() == Fraction(2, 3)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), p=st.sampled_from([2, 3]))
def test_counting_matches_measure(seed, p):
    rng = random.Random(seed)
    n = rng.choice([1, 2])
    k = 3
    coords = []
    for _ in range(n):
        j = rng.randint(0, k)
        coords.append((rng.randrange(p**k), j))
    E = Cell(p, coords)
    # oracle: count by congruences
    count = sum(all((x - c) % p**j == 0 for x, (c, j) in zip(pt, coords))
                for pt in itertools.product(range(p**k), repeat=n))
    assert count == cell_residue_count(E, k) == E.measure() * p ** (k * n)


@pytest.mark.parametrize("N", [1, 2, 4])
@pytest.mark.parametrize("r", [3, 9, Fraction(1, 3), Fraction(2, 3)])
def test_dilation_scaling(N, r):
    rng = random.Random(N)
    for _ in range(10):
        E = random_cell(3, N + 1, rng)
        res = dilate_measure(E, r, "parabolic")
        absr = Fraction(3) ** -rational_valuation(Fraction(r), 3)
        assert res.formula == res.image_measure == absr ** (N + 2) * E.measure()
        x = sample_point(E, rng)
        y = [Fraction(r) * v for v in x[:-1]] + [Fraction(r) ** 2 * x[-1]]
        assert in_cell(y, res.image)


def _check_image(E, image, fwd, inv, rng, samples=60):
    cells = list(E) if isinstance(E, CellUnion) else [E]
    for _ in range(samples):
        x = sample_point(rng.choice(cells), rng)
        assert any(in_cell(fwd(x), c) for c in image)
        y = sample_point(rng.choice(list(image)), rng)
        assert any(in_cell(inv(y), c) for c in cells)


@pytest.mark.parametrize("phi", [
    {(2,): Fraction(1, 3)},
    {(1, 1): Fraction(1), (0, 2): Fraction(2, 9)},
    {(3, 0): Fraction(1, 27), (0, 0): Fraction(5)},
])
def test_shear(phi):
    rng = random.Random(0)
    n = 1 + len(next(iter(phi)))
    E = CellUnion([random_cell(3, n, rng, 0, 2) for _ in range(1)])
    image = shear_image(E, phi)
    assert image.measure() == E.measure()

    def ev(x):
        return sum(a * _mono(x, al) for al, a in phi.items())

    _check_image(E, image, lambda x: [x[0] + ev(x[1:])] + x[1:], lambda y: [y[0] - ev(y[1:])] + y[1:], rng)
    assert shear_invariance_check(E, phi).passed


def _mono(x, alpha):
    out = Fraction(1)
    for xi, e in zip(x, alpha):
        out *= xi**e
    return out


def test_shear_refinement_too_coarse():
    E = Cell(3, [(0, 0), (0, 0)])
    with pytest.raises(RefinementTooCoarse):
        shear_image(E, {(2,): Fraction(1, 3)}, refinement=0)


@pytest.mark.parametrize("side", ["left", "right"])
def test_translation_images(side):
    Q = Ring.rationals()
    rng = random.Random(3)
    B = BilinearForm([[Q(Fraction(rng.randrange(-4, 5), 3 ** rng.randrange(2))) for _ in range(2)] for _ in range(2)], Q)
    G = HeisGroup(B)
    g = G.point([Fraction(1, 3), 2], Fraction(4, 9))
    E = random_cell(3, 3, rng, 0, 2)
    image = translate_cells(G, g, E, side)
    assert image.measure() == E.measure()

    def act(x, h):
        a = G.point(x[:2], x[2])
        r = G.mul(h, a) if side == "left" else G.mul(a, h)
        return [z.value for z in r.z] + [r.t.value]

    _check_image(E, image, lambda x: act(x, g), lambda y: act(y, G.inv(g)), rng, 40)


def test_finite_counts():
    Z9 = Ring.modular(9)
    G = HeisGroup.symplectic(1, Z9)
    els = G.elements()
    S = {G.dilate(Z9(3), a) for a in els}
    r = finite_quotient_count(G, S, els[:50])
    # delta_3 sends (z, t) to (3z, 0): 9 images
    assert r.count == 9 and r.measure == Fraction(9, 729)
    assert r.verdict.passed


def test_shear_explicit_refinement():
    # phi(x2) = x2 on Z_2^2 at refinement 3: 64 subcells, image of equal measure
    E = Cell(2, [(0, 0), (0, 0)])
    v = shear_invariance_check(E, {(1,): Fraction(1)}, 3)
    assert v.passed and v.details["image_cells"] == 64
    # oracle: the shear permutes (Z/8)^2
    img = {((x + y) % 8, y) for x in range(8) for y in range(8)}
    got = {tuple(c for c, _ in cell.coords) for cell in shear_image(E, {(1,): Fraction(1)}, refinement=3)}
    assert got == img
