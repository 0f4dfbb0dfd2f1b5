"""Haar measure on finite unions of p-adic boxes.

A :class:`Cell` is a product of balls c_i + p^(j_i) Z_p.  Its center is
stored canonically as the unique element of Z[1/p] in [0, p^(j_i)) lying
in the ball, so two cells are equal exactly when they are the same set.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InsufficientPrecision,
    NotARefinement,
    OverlapError,
    RefinementTooCoarse,
    RequiresFiniteModel,
    TooLargeToEnumerate,
)
from .exact import PadicScalar, check_prime, rational_valuation
from .heis import HeisGroup, HeisPoint
from .report import Verdict

MAX_CELLS = 10**6


def _split_p(n: int, p: int) -> tuple[int, int]:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


def reduce_center(c, j: int, p: int) -> Fraction:
    """The representative of c + p^j Z_p in Z[1/p] and [0, p^j)."""
    if isinstance(c, PadicScalar):
        if c.is_exact_zero:
            return Fraction(0)
        if c.absolute_precision < j:
            raise InsufficientPrecision(f"center known mod {p}^{c.absolute_precision}, ball needs {j}")
        c = c.to_rational()
    c = Fraction(c)
    if c == 0:
        return Fraction(0)
    e, b = _split_p(c.denominator, p)
    E = max(e, -j, 0)
    mod = p ** (j + E)
    n = c.numerator * p ** (E - e) * pow(b, -1, mod) % mod if mod > 1 else 0
    return Fraction(n, p**E)


def _val(x: Fraction, p: int) -> float | int:
    return float("inf") if x == 0 else rational_valuation(x, p)


@dataclass(frozen=True)
class Cell:
    prime: int
    coords: tuple[tuple[Fraction, int], ...]

    def __init__(self, prime: int, coords: Iterable[tuple]):
        check_prime(prime)
        canon = tuple((reduce_center(c, j, prime), int(j)) for c, j in coords)
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "coords", canon)

    @classmethod
    def box(cls, p: int, n: int, j: int = 0) -> Cell:
        """(p^j Z_p)^n."""
        return cls(p, [(0, j)] * n)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def measure(self) -> Fraction:
        return Fraction(self.prime) ** -sum(j for _, j in self.coords)

    def contains(self, other: Cell) -> bool:
        p = self.prime
        return all(
            j <= j2 and reduce_center(c2, j, p) == c
            for (c, j), (c2, j2) in zip(self.coords, other.coords)
        )

    def intersects(self, other: Cell) -> bool:
        p = self.prime
        for (c, j), (c2, j2) in zip(self.coords, other.coords):
            lo = min(j, j2)
            if reduce_center(c, lo, p) != reduce_center(c2, lo, p):
                return False
        return True

    def contains_point(self, x: Sequence) -> bool:
        return all(reduce_center(xi, j, self.prime) == c for xi, (c, j) in zip(x, self.coords))

    def __str__(self) -> str:
        return " x ".join(f"ball({_fmt(c)},{j})" for c, j in self.coords)


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class CellUnion:
    """A finite union of pairwise disjoint cells.

    Cells nested inside another are dropped; any other overlap is an error.
    """

    def __init__(self, cells: Iterable[Cell]):
        cells = list(dict.fromkeys(cells))
        if cells:
            p, n = cells[0].prime, cells[0].dim
            if any(c.prime != p or c.dim != n for c in cells):
                raise ValueError("cells of different primes or dimensions")
        # coarsest first, so nested cells are met after their containers
        cells.sort(key=lambda c: sum(j for _, j in c.coords))
        kept: list[Cell] = []
        index: dict = {}
        for c in cells:
            if _disjoint_fast(c, kept, index):
                kept.append(c)
                continue
            for k in kept:
                if k.intersects(c):
                    if k.contains(c):
                        break
                    raise OverlapError(f"cells {k} and {c} overlap without nesting")
            else:
                kept.append(c)
        self.cells = tuple(kept)

    def measure(self) -> Fraction:
        return sum((c.measure() for c in self.cells), Fraction(0))

    def __iter__(self):
        return iter(self.cells)

    def __len__(self):
        return len(self.cells)

    def __str__(self):
        return " + ".join(str(c) for c in self.cells)


def _disjoint_fast(c: Cell, kept: list[Cell], index: dict) -> bool:
    # when every kept cell shares one shape, a hash lookup settles disjointness
    if not kept:
        index["shape"] = tuple(j for _, j in c.coords)
        index["keys"] = {c.coords}
        return True
    shape = index.get("shape")
    if shape is None or tuple(j for _, j in c.coords) != shape:
        index["shape"] = None
        return False
    if c.coords in index["keys"]:
        return False
    index["keys"].add(c.coords)
    return True


def cell_measure(E: Cell | CellUnion) -> Fraction:
    return E.measure()


def cell_decompose(E: Cell, j: int | Sequence[int]) -> CellUnion:
    """Partition E into subcells of radius p^-j (per coordinate if j is a sequence)."""
    p = E.prime
    js = [j] * E.dim if isinstance(j, int) else list(j)
    if len(js) != E.dim:
        raise ValueError("refinement has the wrong length")
    if any(jj < ji for jj, (_, ji) in zip(js, E.coords)):
        raise NotARefinement(f"refinement {js} is coarser than {E}")
    count = p ** sum(jj - ji for jj, (_, ji) in zip(js, E.coords))
    if count > MAX_CELLS:
        raise TooLargeToEnumerate(f"{count} subcells")
    axes = [
        [c + k * Fraction(p) ** ji for k in range(p ** (jj - ji))]
        for jj, (c, ji) in zip(js, E.coords)
    ]
    return CellUnion(Cell(p, zip(centers, js)) for centers in itertools.product(*axes))


def _as_rational(r) -> Fraction:
    if isinstance(r, PadicScalar):
        if r.is_fuzzy:
            raise InsufficientPrecision("dilation factor is indistinguishable from zero")
        return r.to_rational()
    return Fraction(r)


@dataclass
class DilationResult:
    formula: Fraction
    image: Cell | None
    image_measure: Fraction

    @property
    def agrees(self) -> bool:
        return self.formula == self.image_measure


def dilate_measure(E: Cell, r, mode: str = "scalar") -> DilationResult:
    """Measure of r.E (scalar) or delta_r(E) (parabolic, last coordinate scaled by r^2)."""
    if mode not in ("scalar", "parabolic"):
        raise ValueError("mode must be 'scalar' or 'parabolic'")
    p = E.prime
    rq = _as_rational(r)
    if rq == 0:
        return DilationResult(Fraction(0), None, Fraction(0))
    if isinstance(r, PadicScalar):
        need = max(
            (j - _val(c, p) for c, j in E.coords if c != 0),
            default=0,
        )
        if r.precision < need:
            raise InsufficientPrecision(f"dilation factor needs {need} digits")
    v = rational_valuation(rq, p)
    n = E.dim
    scales = [rq] * n
    if mode == "parabolic":
        scales[-1] = rq * rq
    image = Cell(p, [(s * c, j + rational_valuation(s, p)) for s, (c, j) in zip(scales, E.coords)])
    abs_r = Fraction(p) ** -v
    power = n if mode == "scalar" else n + 1
    return DilationResult(abs_r**power * E.measure(), image, image.measure())


# ---------------------------------------------------------------------------
# triangular maps: shears and group translations


def _terms(poly) -> list[tuple[tuple[int, ...], Fraction]]:
    """Monomials of a polynomial given as {alpha: coeff} or a MultiSeries."""
    coeffs = getattr(poly, "coeffs", poly)
    out = []
    for alpha, a in coeffs.items():
        a = getattr(a, "value", a)
        if isinstance(a, PadicScalar):
            a = a.to_rational()
        a = Fraction(a)
        if a:
            out.append((tuple(alpha), a))
    return out


def _eval(terms, x: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for alpha, a in terms:
        m = a
        for xi, e in zip(x, alpha):
            if e:
                m *= xi**e
        total += m
    return total


def _needed_refinement(cell: Cell, target: int, terms, jt: int | None = None) -> list[int]:
    """Per-coordinate radii making psi constant mod p^j_target on each subcell.

    On a subcell x_k varies by h_k with v(h_k) >= J_k >= L_k, where
    L_k <= min(0, v(x_k)).  A monomial a x^alpha then moves by terms of
    valuation >= v(a) + sum_k alpha_k L_k - L_i + J_i (the first-order ones
    bound the rest), and each must reach j_target.
    """
    p = cell.prime
    jt = cell.coords[target][1] if jt is None else jt
    others = [i for i in range(cell.dim) if i != target]
    L = {i: min(0, cell.coords[i][1], _val(cell.coords[i][0], p)) for i in others}
    js = [j for _, j in cell.coords]
    for alpha, a in terms:
        base = rational_valuation(a, p) + sum(e * L[i] for e, i in zip(alpha, others))
        for e, i in zip(alpha, others):
            if e:
                js[i] = max(js[i], jt - base + L[i])
    return js


def _triangular_image(
    E: CellUnion | Cell,
    target: int,
    terms,
    offsets: Sequence[Fraction],
    refinement: int | None = None,
) -> CellUnion:
    """Image of E under x_target += psi(others) + offset_target, x_i += offset_i.

    psi is given by ``terms`` over the non-target coordinates in order.
    An explicit ``refinement`` J cuts every cell into radius p^-J subcells.
    """
    cells = list(E) if isinstance(E, CellUnion) else [E]
    if not cells:
        return CellUnion([])
    p = cells[0].prime
    images = []
    for cell in cells:
        if refinement is None:
            need = _needed_refinement(cell, target, terms)
        else:
            req = max(_needed_refinement(cell, target, terms, refinement))
            if refinement < req:
                raise RefinementTooCoarse(f"refinement {refinement} is below the required {req}")
            need = [refinement] * cell.dim
        for sub in cell_decompose(cell, need):
            others = [c for i, (c, _) in enumerate(sub.coords) if i != target]
            shift = _eval(terms, others)
            coords = []
            for i, (c, j) in enumerate(sub.coords):
                if i == target:
                    coords.append((c + shift + offsets[i], j))
                else:
                    coords.append((c + offsets[i], j))
            images.append(Cell(p, coords))
    return CellUnion(images)


def shear_image(E: CellUnion | Cell, phi, refinement: int | None = None) -> CellUnion:
    """Image of E under (x_1 + phi(x_2, ..., x_n), x_2, ..., x_n)."""
    terms = _terms(phi)
    n = (E.dim if isinstance(E, Cell) else E.cells[0].dim) if (isinstance(E, Cell) or E.cells) else 1
    return _triangular_image(E, 0, terms, [Fraction(0)] * n, refinement)


def shear_invariance_check(E: CellUnion | Cell, phi, refinement: int | None = None) -> Verdict:
    before = E.measure()
    image = shear_image(E, phi, refinement)
    after = image.measure()
    return Verdict(
        "shear-invariance",
        before == after,
        None if before == after else (str(before), str(after)),
        len(image),
        {"measure": before, "image_measure": after, "image_cells": len(image)},
    )


def _rational_coords(G: HeisGroup, g: HeisPoint) -> tuple[list[Fraction], Fraction]:
    def q(x):
        v = x.value
        return v.to_rational() if isinstance(v, PadicScalar) else Fraction(v)

    return [q(x) for x in g.z], q(g.t)


def translate_cells(G: HeisGroup, g: HeisPoint, E: CellUnion | Cell, side: str = "left") -> CellUnion:
    """g * E (side='left') or E * g (side='right') for a bilinear law over Q_p coordinates."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if G.kind != "bilinear" or G.law.hom is not None:
        raise ValueError("translation of cells needs a plain bilinear law")
    w, s = _rational_coords(G, g)
    N = G.N
    b = [[_rational_coords_entry(x) for x in row] for row in G.law.matrix]
    # t gains s + B(w, z) on the left, s + B(z, w) on the right: linear in z
    terms = {}
    for l in range(N):
        coeff = sum((w[j] * b[j][l] if side == "left" else b[l][j] * w[j]) for j in range(N))
        if coeff:
            alpha = tuple(1 if i == l else 0 for i in range(N))
            terms[alpha] = coeff
    return _triangular_image(E, N, list(terms.items()), list(w) + [s])


def _rational_coords_entry(x) -> Fraction:
    v = x.value
    return v.to_rational() if isinstance(v, PadicScalar) else Fraction(v)


# ---------------------------------------------------------------------------
# finite quotients


def _group_modulus(G: HeisGroup) -> int:
    if G.ring.kind != "modular" or G.codomain != G.ring:
        raise RequiresFiniteModel("counting needs a group over Z/p^k")
    return G.ring.modulus


@dataclass
class CountResult:
    count: int
    measure: Fraction
    verdict: Verdict


def finite_quotient_count(
    G: HeisGroup,
    S: Iterable[HeisPoint],
    translators: Iterable[HeisPoint] | None = None,
) -> CountResult:
    """|S|, |S| / |G|, and equality of |gS| and |Sg| with |S| for each translator."""
    _group_modulus(G)
    if G.order > 10**7:
        raise TooLargeToEnumerate(f"{G} has {G.order} elements")
    S = set(S)
    checked = 0
    verdict = Verdict("translation-counts", True)
    for g in translators or ():
        left = {G.mul(g, a) for a in S}
        right = {G.mul(a, g) for a in S}
        checked += 1
        if len(left) != len(S) or len(right) != len(S):
            verdict = Verdict("translation-counts", False, (g, len(left), len(right), len(S)), checked)
            break
    else:
        verdict = Verdict("translation-counts", True, None, checked)
    return CountResult(len(S), Fraction(len(S), G.order), verdict)


def cell_residue_count(E: Cell, k: int) -> int:
    """Number of points of (Z/p^k)^n, read as integers, lying in E (brute force)."""
    p = E.prime
    if any(j > k for _, j in E.coords):
        raise NotARefinement("cell is finer than p^k")
    if (p**k) ** E.dim > 10**7:
        raise TooLargeToEnumerate("quotient too large")
    total = 0
    for x in itertools.product(range(p**k), repeat=E.dim):
        if E.contains_point(x):
            total += 1
    return total


def random_cell(p: int, n: int, rng: random.Random, jmin: int = -2, jmax: int = 3) -> Cell:
    coords = []
    for _ in range(n):
        j = rng.randint(jmin, jmax)
        e = max(0, -j) + rng.randint(0, 2)
        coords.append((Fraction(rng.randrange(p ** (j + e + 2)), p**e), j))
    return Cell(p, coords)
