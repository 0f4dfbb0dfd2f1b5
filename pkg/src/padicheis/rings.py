"""Commutative rings, ring homomorphisms and matrix bilinear forms.

A :class:`Ring` is an immutable descriptor; :class:`RingElem` pairs a
descriptor with a canonical payload:

=============  ==========================================
kind           payload
=============  ==========================================
integers       int
rationals      Fraction
modular(m)     int in [0, m)
ideal(g, m)    int in [0, m), a multiple of g (g divides m)
padic(p, k)    PadicScalar; ``integral`` selects Z_p over Q_p
=============  ==========================================

``ideal(g, m)`` is the ring gZ/mZ, which usually has no identity.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import (
    DimensionError,
    HomDomainError,
    NonInvertibleDegree,
    NotBilinear,
    ParseError,
    RequiresFiniteRing,
    RequiresIdentity,
    RingMismatch,
    TooLargeToEnumerate,
)
from .exact import (
    DEFAULT_PRECISION,
    PadicScalar,
    check_prime,
    padic_from_rational,
)

MAX_FINITE_RING = 10**4


@dataclass(frozen=True)
class Ring:
    kind: str
    modulus: int = 0
    generator: int = 1
    prime: int = 0
    precision: int = DEFAULT_PRECISION
    integral: bool = False

    # -- constructors -------------------------------------------------------

    @classmethod
    def integers(cls) -> Ring:
        return cls("integers")

    @classmethod
    def rationals(cls) -> Ring:
        return cls("rationals")

    @classmethod
    def modular(cls, m: int) -> Ring:
        if m < 1:
            raise ValueError("modulus must be positive")
        return cls("modular", modulus=m)

    @classmethod
    def ideal(cls, g: int, m: int) -> Ring:
        """The ring gZ/mZ inside Z/mZ."""
        if m < 1 or g < 1 or m % g:
            raise ValueError("need g dividing m")
        if g == 1:
            return cls.modular(m)
        return cls("ideal", modulus=m, generator=g)

    @classmethod
    def padic(cls, p: int, k: int = DEFAULT_PRECISION, integral: bool = False) -> Ring:
        check_prime(p)
        if k < 1:
            raise ValueError("precision must be at least 1")
        return cls("padic", prime=p, precision=k, integral=integral)

    # -- structure ----------------------------------------------------------

    @property
    def finite(self) -> bool:
        return self.kind in ("modular", "ideal")

    @property
    def order(self) -> int:
        if self.kind == "modular":
            return self.modulus
        if self.kind == "ideal":
            return self.modulus // self.generator
        raise RequiresFiniteRing(f"{self} is infinite")

    @cached_property
    def _one_payload(self):
        if self.kind == "integers":
            return 1
        if self.kind == "rationals":
            return Fraction(1)
        if self.kind == "padic":
            return padic_from_rational(1, self.prime, self.precision)
        if self.kind == "modular":
            return 1 % self.modulus
        m, g = self.modulus, self.generator
        values = range(0, m, g)
        for e in values:
            if all(e * x % m == x for x in values):
                return e
        return None

    @property
    def has_one(self) -> bool:
        return self._one_payload is not None

    def one(self) -> RingElem:
        if not self.has_one:
            raise RequiresIdentity(f"{self} has no multiplicative identity")
        return RingElem(self, self._one_payload)

    def zero(self) -> RingElem:
        return self(0)

    def elements(self) -> list[RingElem]:
        if not self.finite:
            raise RequiresFiniteRing(f"{self} is infinite")
        if self.order > MAX_FINITE_RING:
            raise TooLargeToEnumerate(f"{self} has {self.order} elements")
        step = self.generator if self.kind == "ideal" else 1
        return [RingElem(self, v) for v in range(0, self.modulus, step)]

    def random(self, rng: random.Random) -> RingElem:
        if self.kind == "integers":
            return RingElem(self, rng.randint(-50, 50))
        if self.kind == "rationals":
            return RingElem(self, Fraction(rng.randint(-30, 30), rng.randint(1, 12)))
        if self.kind == "modular":
            return RingElem(self, rng.randrange(self.modulus))
        if self.kind == "ideal":
            return RingElem(self, rng.randrange(self.order) * self.generator)
        p, k = self.prime, self.precision
        if rng.random() < 0.05:
            return RingElem(self, PadicScalar.zero(p))
        v = rng.randint(0, 3) if self.integral else rng.randint(-3, 3)
        unit = rng.randrange(1, p**k)
        while unit % p == 0:
            unit = rng.randrange(1, p**k)
        return RingElem(self, PadicScalar(p, "approx", v, unit, k))

    # -- coercion -----------------------------------------------------------

    def __call__(self, value) -> RingElem:
        if isinstance(value, RingElem):
            if value.ring == self:
                return value
            raise RingMismatch(f"element of {value.ring} used in {self}")
        return RingElem(self, self._canon(value))

    def _canon(self, value):
        if self.kind == "integers":
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise ValueError(f"{value} is not an integer")
                value = value.numerator
            if not isinstance(value, int):
                raise TypeError(f"cannot coerce {value!r} into Z")
            return int(value)
        if self.kind == "rationals":
            if isinstance(value, PadicScalar):
                raise TypeError("cannot coerce a p-adic value into Q")
            return Fraction(value)
        if self.kind in ("modular", "ideal"):
            if isinstance(value, Fraction):
                value = self._frac_mod(value)
            if not isinstance(value, int):
                raise TypeError(f"cannot coerce {value!r} into {self}")
            value %= self.modulus
            if value % self.generator:
                raise ValueError(f"{value} is not in {self}")
            return value
        # padic
        if isinstance(value, PadicScalar):
            if value.prime != self.prime:
                raise RingMismatch(f"prime {value.prime} used in {self}")
            x = value
        else:
            x = padic_from_rational(Fraction(value), self.prime, self.precision)
        if self.integral and x.kind == "approx" and x.valuation < 0:
            raise ValueError(f"{x} is not in Z_{self.prime}")
        return x

    def _frac_mod(self, value: Fraction) -> int:
        if math.gcd(value.denominator, self.modulus) != 1:
            raise ValueError(f"{value} has no image in {self}")
        return value.numerator * pow(value.denominator, -1, self.modulus)

    # -- helpers used by the calculus and metric layers ----------------------

    def int_mul(self, n: int, x) -> object:
        """Payload of the integer multiple n*x."""
        if self.kind == "padic":
            if x.is_exact_zero or n == 0:
                return PadicScalar.zero(self.prime)
            return x * padic_from_rational(n, self.prime, max(x.precision, 1))
        if self.finite:
            return n * x % self.modulus
        return n * x

    def div_int(self, x: RingElem, n: int) -> RingElem:
        """x / n, where n must be a unit of the ring (or of Q_p)."""
        if n == 0:
            raise NonInvertibleDegree(0, self)
        if self.kind == "rationals":
            return RingElem(self, x.value / n)
        if self.kind == "integers":
            if n not in (1, -1):
                raise NonInvertibleDegree(n, self)
            return RingElem(self, x.value * n)
        if self.finite:
            if math.gcd(n, self.modulus) != 1:
                raise NonInvertibleDegree(n, self)
            return RingElem(self, x.value * pow(n, -1, self.modulus) % self.modulus)
        if self.integral and n % self.prime == 0:
            raise NonInvertibleDegree(n, self)
        if x.value.is_exact_zero:
            return x
        inv = padic_from_rational(Fraction(1, n), self.prime, max(x.value.precision, 1))
        return RingElem(self, x.value * inv)

    def __str__(self) -> str:
        if self.kind == "integers":
            return "Z"
        if self.kind == "rationals":
            return "Q"
        if self.kind == "modular":
            return f"Z/{self.modulus}"
        if self.kind == "ideal":
            return f"{self.generator}Z/{self.modulus}"
        return f"{'Zp' if self.integral else 'Qp'}:{self.prime}:{self.precision}"

    @classmethod
    def parse(cls, text: str) -> Ring:
        s = text.strip()
        try:
            if s == "Z":
                return cls.integers()
            if s == "Q":
                return cls.rationals()
            if s.startswith(("Zp:", "Qp:")):
                parts = s.split(":")
                if len(parts) == 2:
                    parts.append(str(DEFAULT_PRECISION))
                _, p, k = parts
                return cls.padic(int(p), int(k), integral=s.startswith("Zp"))
            if "/" in s:
                head, m = s.split("/", 1)
                if head == "Z":
                    return cls.modular(int(m))
                if head.endswith("Z"):
                    return cls.ideal(int(head[:-1]), int(m))
        except (ValueError, TypeError) as exc:
            raise ParseError(f"bad ring literal {text!r}: {exc}") from exc
        raise ParseError(f"bad ring literal {text!r}")

    def parse_elem(self, text: str) -> RingElem:
        s = text.strip()
        if s.startswith("p:"):
            return self(PadicScalar.parse(s))
        try:
            return self(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad element {text!r} for {self}: {exc}") from exc


class RingElem:
    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("RingElem is immutable")

    def _other(self, other):
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.ring._canon(other)
        return NotImplemented

    def _wrap(self, value) -> RingElem:
        r = self.ring
        if r.finite:
            value %= r.modulus
        return RingElem(r, value)

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.value + o)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.value)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(o - self.value)

    def __mul__(self, other):
        # a bare int acts as an integer multiple, valid in rings without 1
        if isinstance(other, int) and not isinstance(other, bool):
            return RingElem(self.ring, self.ring.int_mul(other, self.value))
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.value * o)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 1:
            if n == 0:
                return self.ring.one()
            raise ValueError("negative powers are not ring operations")
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def is_zero(self) -> bool:
        v = self.value
        if isinstance(v, PadicScalar):
            return v.kind != "approx"
        return v == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = self.ring(other)
            except (ValueError, TypeError):
                return False
        if not isinstance(other, RingElem) or other.ring != self.ring:
            return NotImplemented if not isinstance(other, RingElem) else False
        if self.ring.kind == "padic":
            return self.value.congruent(other.value)
        return self.value == other.value

    def __hash__(self):
        if self.ring.kind == "padic":
            return hash(self.ring)
        return hash((self.ring, self.value))

    def __repr__(self):
        return f"RingElem({self.ring}, {self})"

    def __str__(self):
        v = self.value
        if isinstance(v, PadicScalar):
            return v.to_text()
        return str(v)

    def valuation(self, p: int | None = None):
        """v_p of the element; p defaults to the ring's prime."""
        from .exact import p_valuation

        v = self.value
        if isinstance(v, PadicScalar):
            return p_valuation(v, v.prime)
        if p is None:
            raise ValueError(f"{self.ring} needs an explicit prime")
        return p_valuation(v, p)


def vec(ring: Ring, values: Iterable) -> tuple[RingElem, ...]:
    return tuple(ring(v) for v in values)


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class RingHom:
    source: Ring
    target: Ring
    rule: str
    func: Callable = field(compare=False, repr=False, default=None)

    def apply(self, x: RingElem) -> RingElem:
        if not isinstance(x, RingElem) or x.ring != self.source:
            raise HomDomainError(f"{x!r} is not in {self.source}")
        return self.func(x)

    __call__ = apply

    def then(self, other: RingHom) -> RingHom:
        """other after self."""
        if other.source != self.target:
            raise HomDomainError(f"cannot compose {self.target} with {other.source}")
        return RingHom(
            self.source,
            other.target,
            f"({other.rule})o({self.rule})",
            lambda x: other.func(self.func(x)),
        )

    @classmethod
    def identity(cls, ring: Ring) -> RingHom:
        return cls(ring, ring, "identity", lambda x: x)

    @classmethod
    def canonical(cls, source: Ring, target: Ring) -> RingHom:
        """Reduction, inclusion or their composite, whichever applies."""
        if source == target:
            return cls.identity(source)
        s, t = source.kind, target.kind
        if t in ("modular", "ideal"):
            m = target.modulus
            if s in ("integers", "modular", "ideal"):
                if s != "integers" and source.modulus % m:
                    raise HomDomainError(f"no reduction {source} -> {target}")
                return cls(source, target, f"reduce mod {m}", lambda x: target(x.value % m))
            if s == "padic" and source.integral:
                p = source.prime
                j = _prime_power(m, p)
                if j is None:
                    raise HomDomainError(f"{target} is not Z/{p}^j")
                return cls(source, target, f"reduce mod {p}^{j}", lambda x: target(x.value.residue(j)))
            if s == "rationals":
                return cls(source, target, f"reduce mod {m}", lambda x: target(x.value))
        if t == "rationals" and s == "integers":
            return cls(source, target, "inclusion", lambda x: target(x.value))
        if t == "padic" and s in ("integers", "rationals"):
            if s == "rationals" and target.integral:
                raise HomDomainError("Q does not map into Z_p")
            return cls(source, target, "inclusion", lambda x: target(x.value))
        if t == "padic" and s == "padic" and source.prime == target.prime:
            if source.integral or not target.integral:
                return cls(source, target, "inclusion", lambda x: target(x.value))
        raise HomDomainError(f"no canonical map {source} -> {target}")


def _prime_power(m: int, p: int) -> int | None:
    j = 0
    while m % p == 0:
        m //= p
        j += 1
    return j if m == 1 else None


def hom_apply(phi: RingHom, x: RingElem) -> RingElem:
    return phi.apply(x)


# ---------------------------------------------------------------------------
# bilinear forms


class BilinearForm:
    """B(w, z) = sum b[j][l] w_j z_l, optionally followed by a homomorphism.

    With ``hom`` set the form takes values in ``hom.target``; this models
    a form composed with a ring map without a separate group type.
    """

    def __init__(self, matrix: Sequence[Sequence], ring: Ring, hom: RingHom | None = None):
        n = len(matrix)
        if any(len(row) != n for row in matrix):
            raise DimensionError("form matrix must be square")
        self.ring = ring
        self.matrix = tuple(tuple(ring(x) for x in row) for row in matrix)
        if hom is not None and hom.source != ring:
            raise HomDomainError(f"hom source {hom.source} differs from {ring}")
        self.hom = hom

    @property
    def N(self) -> int:
        return len(self.matrix)

    @property
    def codomain(self) -> Ring:
        return self.hom.target if self.hom else self.ring

    @property
    def antisymmetric(self) -> bool:
        b = self.matrix
        return all(b[j][l] == -b[l][j] for j in range(self.N) for l in range(self.N))

    @property
    def symmetric(self) -> bool:
        b = self.matrix
        return all(b[j][l] == b[l][j] for j in range(self.N) for l in range(self.N))

    def entry(self, j: int, l: int) -> RingElem:
        return self.matrix[j][l]

    def transpose(self) -> BilinearForm:
        n = self.N
        return BilinearForm([[self.matrix[l][j] for l in range(n)] for j in range(n)], self.ring, self.hom)

    def __add__(self, other: BilinearForm) -> BilinearForm:
        if other.ring != self.ring or other.N != self.N:
            raise RingMismatch("forms over different rings or dimensions")
        n = self.N
        return BilinearForm(
            [[self.matrix[j][l] + other.matrix[j][l] for l in range(n)] for j in range(n)],
            self.ring,
            self.hom,
        )

    def __call__(self, w, z) -> RingElem:
        return form_eval(self, w, z)

    def __eq__(self, other):
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.ring == other.ring and self.matrix == other.matrix and self.hom == other.hom

    def __hash__(self):
        return hash((self.ring, self.N))

    def __repr__(self):
        rows = [[str(x) for x in row] for row in self.matrix]
        return f"BilinearForm({rows}, {self.ring})"


def form_eval(B: BilinearForm, w: Sequence[RingElem], z: Sequence[RingElem]) -> RingElem:
    n = B.N
    if len(w) != n or len(z) != n:
        raise DimensionError(f"expected vectors of length {n}, got {len(w)} and {len(z)}")
    acc = B.ring.zero()
    for j in range(n):
        if w[j].is_zero():
            continue
        row = B.matrix[j]
        for l in range(n):
            if not row[l].is_zero():
                acc = acc + row[l] * w[j] * z[l]
    return B.hom.apply(acc) if B.hom else acc


def standard_symplectic(n: int, ring: Ring) -> BilinearForm:
    if n < 1:
        raise ValueError("n must be positive")
    one = ring.one()
    zero = ring.zero()
    N = 2 * n
    b = [[zero] * N for _ in range(N)]
    for j in range(n):
        b[j][n + j] = one
        b[n + j][j] = -one
    return BilinearForm(b, ring)


def basis_vector(ring: Ring, n: int, j: int) -> tuple[RingElem, ...]:
    one, zero = ring.one(), ring.zero()
    return tuple(one if i == j else zero for i in range(n))


def matrix_from_form(
    fn: Callable,
    N: int,
    ring: Ring,
    samples: int = 100,
    rng: random.Random | None = None,
) -> BilinearForm:
    """Recover b[j][l] = fn(e_j, e_l) and confirm it reproduces fn."""
    if not ring.has_one:
        raise RequiresIdentity(f"{ring} has no identity, so e_j is undefined")
    e = [basis_vector(ring, N, j) for j in range(N)]
    B = BilinearForm([[fn(e[j], e[l]) for l in range(N)] for j in range(N)], ring)
    rng = rng or random.Random(0)
    for _ in range(samples):
        w = tuple(ring.random(rng) for _ in range(N))
        z = tuple(ring.random(rng) for _ in range(N))
        if fn(w, z) != B(w, z):
            raise NotBilinear("black box is not a bilinear form", witness=(w, z))
    return B


# ---------------------------------------------------------------------------
# subrings of finite rings


def _as_elems(ring: Ring, gens) -> list[RingElem]:
    return [ring(g) for g in gens]


def additive_closure(ring: Ring, elems: Iterable[RingElem]) -> frozenset[RingElem]:
    out = {ring.zero()}
    frontier = list(out)
    gens = set(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                for y in (x + g, x - g):
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
        frontier = nxt
    return frozenset(out)


def subring_closure(ring: Ring, gens) -> frozenset[RingElem]:
    """Smallest subring (not necessarily unital) containing gens."""
    if not ring.finite:
        raise RequiresFiniteRing(f"{ring} is infinite")
    if ring.order > MAX_FINITE_RING:
        raise TooLargeToEnumerate(f"{ring} has {ring.order} elements")
    current = additive_closure(ring, _as_elems(ring, gens))
    while True:
        products = {a * b for a in current for b in current}
        nxt = additive_closure(ring, current | products)
        if nxt == current:
            return current
        current = nxt


def square_subring(ring: Ring, gens) -> frozenset[RingElem]:
    """Additive closure of all products a*b with a, b in the subring R1."""
    r1 = subring_closure(ring, gens)
    return additive_closure(ring, {a * b for a in r1 for b in r1})


def is_ideal_of(ideal: frozenset[RingElem], sub: frozenset[RingElem]):
    """Return None, or a witness pair breaking the ideal property."""
    for x, y in itertools.product(ideal, ideal):
        if x + y not in ideal:
            return ("sum", x, y)
    for x in ideal:
        if -x not in ideal:
            return ("neg", x)
    for x, a in itertools.product(ideal, sub):
        if x * a not in ideal:
            return ("product", x, a)
    return None
