"""Heisenberg-type groups R^N x R' with law (w,s)(z,t) = (w+z, s+t+B(w,z)).

B is either a matrix bilinear form (possibly followed by a ring map into
R') or a tabulated 2-cocycle on a finite group A^N.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    GroupMismatch,
    NotACocycle,
    NotCompatible,
    RequiresFiniteModel,
    TooLargeToEnumerate,
    UnsupportedForCocycleLaw,
)
from .report import Verdict
from .rings import BilinearForm, Ring, RingElem, RingHom

MAX_GROUP = 10**7


@dataclass(frozen=True)
class HeisPoint:
    z: tuple[RingElem, ...]
    t: RingElem

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.z) + ";" + str(self.t) + ")"


# ---------------------------------------------------------------------------
# cocycles on finite groups


def _vectors(A: Ring, N: int) -> list[tuple[RingElem, ...]]:
    return list(itertools.product(A.elements(), repeat=N))


def _key(v: Sequence[RingElem]) -> tuple:
    return tuple(x.value for x in v)


class CocycleTable:
    """A function B: A^N x A^N -> A' stored as a table.

    The cocycle identity is checked over all triples at construction
    unless ``verify=False``.
    """

    def __init__(self, A: Ring, N: int, codomain: Ring, values, verify: bool = True):
        if not A.finite:
            raise RequiresFiniteModel(f"{A} is infinite")
        self.A, self.N, self.codomain = A, N, codomain
        self.points = _vectors(A, N)
        if callable(values):
            table = {(_key(w), _key(z)): codomain(values(w, z)) for w in self.points for z in self.points}
        else:
            table = {(tuple(w), tuple(z)): codomain(v) for (w, z), v in values.items()}
            need = len(self.points) ** 2
            if len(table) != need:
                raise ValueError(f"cocycle table needs {need} entries, got {len(table)}")
        self.table = table
        if verify:
            v = cocycle_verify(self)
            if not v.passed:
                raise NotACocycle("cocycle identity fails", witness=v.witness)

    @classmethod
    def from_form(cls, B: BilinearForm) -> CocycleTable:
        return cls(B.ring, B.N, B.codomain, lambda w, z: B(w, z))

    def __call__(self, w, z) -> RingElem:
        return self.table[(_key(w), _key(z))]

    def zero_value(self) -> RingElem:
        zero = tuple(self.A.zero() for _ in range(self.N))
        return self(zero, zero)

    def normalized(self) -> CocycleTable:
        return cocycle_normalize(self)

    def __eq__(self, other):
        if not isinstance(other, CocycleTable):
            return NotImplemented
        return (self.A, self.N, self.codomain) == (other.A, other.N, other.codomain) and self.table == other.table

    __hash__ = None


class Coboundary:
    """b: A^N -> A' together with its coboundary b(w) - b(w+z) + b(z)."""

    def __init__(self, A: Ring, N: int, codomain: Ring, b):
        self.A, self.N, self.codomain = A, N, codomain
        pts = _vectors(A, N)
        if callable(b):
            self.values = {_key(v): codomain(b(v)) for v in pts}
        else:
            self.values = {tuple(k): codomain(v) for k, v in b.items()}

    def __call__(self, v) -> RingElem:
        return self.values[_key(v)]

    def cocycle(self, verify: bool = True) -> CocycleTable:
        def B(w, z):
            wz = tuple(a + b for a, b in zip(w, z))
            return self(w) - self(wz) + self(z)

        return CocycleTable(self.A, self.N, self.codomain, B, verify=verify)


def cocycle_verify(table: CocycleTable) -> Verdict:
    """Exhaustive check of B(z,z') + B(z+z',z'') = B(z,z'+z'') + B(z',z'')."""
    pts = table.points
    B = table
    checked = 0
    for x in pts:
        for y in pts:
            xy = tuple(a + b for a, b in zip(x, y))
            bxy = B(x, y)
            for z in pts:
                yz = tuple(a + b for a, b in zip(y, z))
                checked += 1
                if bxy + B(xy, z) != B(x, yz) + B(y, z):
                    return Verdict("cocycle", False, (x, y, z), checked)
    zero = tuple(table.A.zero() for _ in range(table.N))
    b00 = B(zero, zero)
    facts = all(B(zero, z) == b00 and B(z, zero) == b00 for z in pts)
    return Verdict("cocycle", True, None, checked, {"b00": b00, "unit_facts": facts})


def cocycle_normalize(table: CocycleTable) -> CocycleTable:
    """B - B(0,0), a cohomologous cocycle vanishing at (0,0)."""
    c = table.zero_value()
    return CocycleTable(table.A, table.N, table.codomain, lambda w, z: table(w, z) - c, verify=False)


@dataclass(frozen=True)
class H2Result:
    cocycles: int
    coboundaries: int

    @property
    def order(self) -> int:
        return self.cocycles // self.coboundaries


def h2_enumerate(A: Ring, N: int, A2: Ring, max_tables: int = 2**20) -> H2Result:
    """Brute-force |Z^2|, |B^2| and |H^2| = |Z^2|/|B^2| for A^N with values in A2."""
    if A.kind != "modular" or A2.kind != "modular":
        raise RequiresFiniteModel("h2_enumerate takes Z/m rings")
    m, m2 = A.modulus, A2.modulus
    dom = m ** (2 * N)
    if dom > 16 or m2 > 4 or m2**dom > max_tables:
        raise TooLargeToEnumerate(f"{m2}^{dom} tables exceed the enumeration bound")
    pts = list(itertools.product(range(m), repeat=N))
    index = {v: i for i, v in enumerate(pts)}
    n = len(pts)

    def add(a, b):
        return index[tuple((x + y) % m for x, y in zip(pts[a], pts[b]))]

    # positions (x,y), (x+y,z), (x,y+z), (y,z) in the flattened table
    triples = []
    for x in range(n):
        for y in range(n):
            xy = add(x, y)
            for z in range(n):
                triples.append((x * n + y, xy * n + z, x * n + add(y, z), y * n + z))

    cocycles = 0
    for table in itertools.product(range(m2), repeat=n * n):
        for i1, i2, i3, i4 in triples:
            if (table[i1] + table[i2] - table[i3] - table[i4]) % m2:
                break
        else:
            cocycles += 1

    coboundaries = set()
    for b in itertools.product(range(m2), repeat=n):
        coboundaries.add(
            tuple((b[x] - b[add(x, y)] + b[y]) % m2 for x in range(n) for y in range(n))
        )
    return H2Result(cocycles, len(coboundaries))


# ---------------------------------------------------------------------------
# groups


class HeisGroup:
    def __init__(self, law: BilinearForm | CocycleTable):
        self.law = law
        if isinstance(law, BilinearForm):
            self.kind = "bilinear"
            self.ring, self.codomain, self.N = law.ring, law.codomain, law.N
        elif isinstance(law, CocycleTable):
            self.kind = "cocycle"
            self.ring, self.codomain, self.N = law.A, law.codomain, law.N
        else:
            raise TypeError("law must be a BilinearForm or CocycleTable")

    @classmethod
    def symplectic(cls, n: int, ring: Ring) -> HeisGroup:
        from .rings import standard_symplectic

        return cls(standard_symplectic(n, ring))

    def __eq__(self, other):
        if not isinstance(other, HeisGroup):
            return NotImplemented
        return self.kind == other.kind and self.law == other.law

    def __hash__(self):
        return hash((self.kind, self.ring, self.codomain, self.N))

    def __repr__(self):
        return f"HeisGroup({self.kind}, N={self.N}, {self.ring} -> {self.codomain})"

    # -- points -------------------------------------------------------------

    def point(self, z: Iterable, t) -> HeisPoint:
        z = tuple(self.ring(x) for x in z)
        if len(z) != self.N:
            raise GroupMismatch(f"expected {self.N} coordinates, got {len(z)}")
        return HeisPoint(z, self.codomain(t))

    def _check(self, a: HeisPoint) -> None:
        if not isinstance(a, HeisPoint) or len(a.z) != self.N:
            raise GroupMismatch(f"{a!r} is not a point of {self}")
        if any(x.ring != self.ring for x in a.z) or a.t.ring != self.codomain:
            raise GroupMismatch(f"{a} has coordinates outside {self}")

    def B(self, w, z) -> RingElem:
        return self.law(w, z)

    def _zero_vec(self):
        return tuple(self.ring.zero() for _ in range(self.N))

    @property
    def b00(self) -> RingElem:
        zero = self._zero_vec()
        return self.B(zero, zero)

    # -- group law ----------------------------------------------------------

    def identity(self) -> HeisPoint:
        if self.kind == "bilinear":
            return HeisPoint(self._zero_vec(), self.codomain.zero())
        return HeisPoint(self._zero_vec(), -self.b00)

    def mul(self, a: HeisPoint, b: HeisPoint) -> HeisPoint:
        self._check(a)
        self._check(b)
        z = tuple(x + y for x, y in zip(a.z, b.z))
        return HeisPoint(z, a.t + b.t + self.B(a.z, b.z))

    def inv(self, a: HeisPoint) -> HeisPoint:
        self._check(a)
        neg = tuple(-x for x in a.z)
        if self.kind == "bilinear":
            return HeisPoint(neg, -a.t + self.B(a.z, a.z))
        return HeisPoint(neg, -a.t - self.B(a.z, neg) - self.b00)

    def conj(self, w: HeisPoint, z: HeisPoint) -> HeisPoint:
        """w z w^-1 by the closed form (z, t + B(w,z) - B(z,w))."""
        if self.kind != "bilinear":
            raise UnsupportedForCocycleLaw("closed-form conjugation needs a bilinear law")
        self._check(w)
        self._check(z)
        return HeisPoint(z.z, z.t + self.B(w.z, z.z) - self.B(z.z, w.z))

    def conj_by_law(self, w: HeisPoint, z: HeisPoint) -> HeisPoint:
        return self.mul(self.mul(w, z), self.inv(w))

    def commutator(self, a: HeisPoint, b: HeisPoint) -> HeisPoint:
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def dilate(self, r, a: HeisPoint) -> HeisPoint:
        if self.kind != "bilinear":
            raise UnsupportedForCocycleLaw("dilations need a bilinear law")
        self._check(a)
        r = self.ring(r) if not isinstance(r, RingElem) else r
        rt = self.law.hom.apply(r) if self.law.hom else r
        return HeisPoint(tuple(r * x for x in a.z), rt * rt * a.t)

    def embed_center(self, t) -> HeisPoint:
        t = self.codomain(t)
        if self.kind == "bilinear":
            return HeisPoint(self._zero_vec(), t)
        return HeisPoint(self._zero_vec(), t - self.b00)

    def project(self, a: HeisPoint) -> tuple[RingElem, ...]:
        self._check(a)
        return a.z

    # -- enumeration --------------------------------------------------------

    @property
    def finite(self) -> bool:
        return self.ring.finite and self.codomain.finite

    @property
    def order(self) -> int:
        if not self.finite:
            raise RequiresFiniteModel(f"{self} is infinite")
        return self.ring.order**self.N * self.codomain.order

    def elements(self) -> list[HeisPoint]:
        if self.order > MAX_GROUP:
            raise TooLargeToEnumerate(f"{self} has {self.order} elements")
        ts = self.codomain.elements()
        return [HeisPoint(z, t) for z in _vectors(self.ring, self.N) for t in ts]

    def random_point(self, rng: random.Random) -> HeisPoint:
        return HeisPoint(tuple(self.ring.random(rng) for _ in range(self.N)), self.codomain.random(rng))


# ---------------------------------------------------------------------------
# subgroups, maps and changes of variables


def check_subgroup(G: HeisGroup, S: Iterable[HeisPoint], mode: str = "subgroup") -> Verdict:
    if mode not in ("subgroup", "normal"):
        raise ValueError("mode must be 'subgroup' or 'normal'")
    if not G.finite:
        raise RequiresFiniteModel(f"{G} is infinite")
    S = set(S)
    e = G.identity()
    if e not in S:
        return Verdict(mode, False, ("identity", e))
    checked = 0
    for a in S:
        if G.inv(a) not in S:
            return Verdict(mode, False, ("inverse", a), checked)
        for b in S:
            checked += 1
            if G.mul(a, b) not in S:
                return Verdict(mode, False, ("product", a, b), checked)
    if mode == "normal":
        conj = G.conj if G.kind == "bilinear" else G.conj_by_law
        for g in G.elements():
            for a in S:
                checked += 1
                if conj(g, a) not in S:
                    return Verdict(mode, False, ("conjugate", g, a), checked)
    return Verdict(mode, True, None, checked)


def product_set(G: HeisGroup, Z: Iterable[RingElem], T: Iterable[RingElem]) -> set[HeisPoint]:
    """The set Z^N x T of points."""
    T = list(T)
    return {HeisPoint(z, t) for z in itertools.product(list(Z), repeat=G.N) for t in T}


def _pairs(G: HeisGroup, samples: int, rng: random.Random, exhaustive_limit: int = 10**6):
    if G.finite and G.order**2 <= exhaustive_limit:
        els = G.elements()
        return itertools.product(els, els), True
    return ((G.random_point(rng), G.random_point(rng)) for _ in range(samples)), False


@dataclass
class Pushforward:
    target: HeisGroup
    phi: RingHom
    verdict: Verdict
    kernel: set | None
    kernel_ideal: set | None

    def __call__(self, a: HeisPoint) -> HeisPoint:
        return HeisPoint(tuple(self.phi(x) for x in a.z), self.phi(a.t))


def pushforward(
    G: HeisGroup,
    phi: RingHom,
    B1: BilinearForm,
    samples: int = 500,
    rng: random.Random | None = None,
) -> Pushforward:
    """The map (z,t) -> (phi(z), phi(t)) into the group of B1.

    Requires B1(phi w, phi z) = phi(B(w, z)); checked exhaustively on
    finite models and on random pairs otherwise.
    """
    if G.kind != "bilinear" or G.ring != G.codomain:
        raise UnsupportedForCocycleLaw("pushforward needs a bilinear law with values in R")
    if phi.source != G.ring or B1.ring != phi.target:
        raise GroupMismatch("ring map does not match the groups")
    rng = rng or random.Random(0)
    H = HeisGroup(B1)
    if G.ring.finite and G.ring.order ** (2 * G.N) <= 10**6:
        vecs = _vectors(G.ring, G.N)
        pairs = itertools.product(vecs, vecs)
    else:
        pairs = (
            (tuple(G.ring.random(rng) for _ in range(G.N)), tuple(G.ring.random(rng) for _ in range(G.N)))
            for _ in range(samples)
        )
    for w, z in pairs:
        lhs = B1(tuple(phi(x) for x in w), tuple(phi(x) for x in z))
        if lhs != phi(G.B(w, z)):
            raise NotCompatible("B1(phi w, phi z) != phi(B(w, z))", witness=(w, z))
    push = Pushforward(H, phi, Verdict("homomorphism", True), None, None)
    pts, _ = _pairs(G, samples, rng)
    checked = 0
    for a, b in pts:
        checked += 1
        if push(G.mul(a, b)) != H.mul(push(a), push(b)):
            push.verdict = Verdict("homomorphism", False, (a, b), checked)
            break
    else:
        push.verdict = Verdict("homomorphism", True, None, checked)
    if G.finite:
        zero = phi.target.zero()
        a0 = {x for x in G.ring.elements() if phi(x) == zero}
        e = H.identity()
        push.kernel = {a for a in G.elements() if push(a) == e}
        push.kernel_ideal = a0
    return push


def change_of_variables(
    G: HeisGroup,
    C: BilinearForm,
    samples: int = 1000,
    rng: random.Random | None = None,
):
    """Return (G~, phi, verdict) with B~ = B + C + C^T, phi(z,t) = (z, t + C(z,z))."""
    if G.kind != "bilinear":
        raise UnsupportedForCocycleLaw("change of variables needs a bilinear law")
    if C.ring != G.ring or C.N != G.N:
        raise GroupMismatch("C must live on the same R^N")
    hom = G.law.hom
    C = BilinearForm(C.matrix, C.ring, hom)
    Gt = HeisGroup(G.law + C + C.transpose())

    def phi(a: HeisPoint) -> HeisPoint:
        return HeisPoint(a.z, a.t + C(a.z, a.z))

    def phi_inv(a: HeisPoint) -> HeisPoint:
        return HeisPoint(a.z, a.t - C(a.z, a.z))

    rng = rng or random.Random(0)
    pairs, exhaustive = _pairs(G, samples, rng)
    checked = 0
    for a, b in pairs:
        checked += 1
        if phi(G.mul(a, b)) != Gt.mul(phi(a), phi(b)):
            return Gt, phi, Verdict("isomorphism", False, (a, b), checked)
    pts = G.elements() if exhaustive else [G.random_point(rng) for _ in range(samples)]
    for a in pts:
        if phi_inv(phi(a)) != a or phi(phi_inv(a)) != a:
            return Gt, phi, Verdict("isomorphism", False, ("bijection", a), checked)
    if exhaustive and len({phi(a) for a in pts}) != len(pts):
        return Gt, phi, Verdict("isomorphism", False, ("not injective",), checked)
    return Gt, phi, Verdict("isomorphism", True, None, checked)
