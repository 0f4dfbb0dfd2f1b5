"""Exact rationals and capped-precision p-adic scalars.

Rationals are :class:`fractions.Fraction`.  A :class:`PadicScalar` is a
value ``p**v * u`` known modulo ``p**(v + k)``, where ``u`` is a unit
stored as an integer in ``[0, p**k)``.  Three kinds exist:

* ``zero``   -- the exact zero,
* ``approx`` -- a nonzero class as above,
* ``fuzzy``  -- every known digit cancelled; only ``O(p**m)`` is known.
"""

from __future__ import annotations

import functools
import random
import re
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CannotCertifyConvergence,
    DivisionByZero,
    IndistinguishableFromZero,
    InsufficientPrecision,
    InvalidPrime,
    ParseError,
    PrimeMismatch,
)

DEFAULT_PRECISION = 32

# ---------------------------------------------------------------------------
# integer helpers


@functools.lru_cache(maxsize=256)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidPrime(f"{p!r} is not a prime")
    return p


def int_valuation(n: int, p: int) -> int:
    """v_p(n) for a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def split_unit(n: int, p: int) -> tuple[int, int]:
    """Return (v, m) with n = p**v * m and p not dividing m."""
    v = int_valuation(n, p)
    return v, n // p**v


def unit_inverse(u: int, p: int, k: int) -> int:
    """Inverse of a unit modulo p**k by Hensel lifting from the residue field."""
    if u % p == 0:
        raise DivisionByZero(f"{u} is not a unit mod {p}")
    x = pow(u % p, p - 2, p) if p > 2 else 1
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        mod = p**prec
        x = x * (2 - u * x) % mod
    return x % p**k


def rational_valuation(x: Fraction | int, p: int) -> int:
    x = Fraction(x)
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


# ---------------------------------------------------------------------------
# absolute values


@functools.total_ordering
@dataclass(frozen=True)
class AbsValue:
    """The value ``p**(-exponent)``, or zero when ``exponent is None``."""

    prime: int
    exponent: int | None

    @classmethod
    def zero(cls, p: int) -> AbsValue:
        return cls(p, None)

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def _key(self):
        # larger exponent means smaller value; zero is the minimum
        return (0, 0) if self.exponent is None else (1, -self.exponent)

    def __lt__(self, other: AbsValue) -> bool:
        return self._key() < other._key()

    def __mul__(self, other: AbsValue) -> AbsValue:
        if self.is_zero or other.is_zero:
            return AbsValue.zero(self.prime)
        return AbsValue(self.prime, self.exponent + other.exponent)

    def __pow__(self, n: int) -> AbsValue:
        if self.is_zero:
            return self
        return AbsValue(self.prime, self.exponent * n)

    def as_fraction(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.prime) ** (-self.exponent)

    def __str__(self) -> str:
        return str(self.as_fraction())


def rational_padic_abs(x: Fraction | int, p: int) -> AbsValue:
    check_prime(p)
    x = Fraction(x)
    if x == 0:
        return AbsValue.zero(p)
    return AbsValue(p, rational_valuation(x, p))


# ---------------------------------------------------------------------------
# p-adic scalars

_TEXT_RE = re.compile(
    r"^p:(\d+);(?:(zero)|O:(-?\d+)|v:(-?\d+);d:\[([\d,\s]*)\];k:(\d+))$"
)


class PadicScalar:
    __slots__ = ("prime", "kind", "valuation", "unit", "precision")

    def __init__(self, prime, kind, valuation=None, unit=0, precision=0):
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, name, value):
        raise AttributeError("PadicScalar is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> PadicScalar:
        return cls(p, "zero")

    @classmethod
    def fuzzy(cls, p: int, absolute_precision: int) -> PadicScalar:
        """A value known only to lie in p**m Z_p."""
        return cls(p, "fuzzy", absolute_precision)

    @classmethod
    def from_parts(cls, p: int, v: int, n: int, absolute_precision: int) -> PadicScalar:
        """Normalize ``p**v * n`` known modulo ``p**absolute_precision``."""
        room = absolute_precision - v
        if room <= 0:
            return cls.fuzzy(p, absolute_precision)
        n %= p**room
        if n == 0:
            return cls.fuzzy(p, absolute_precision)
        e, u = split_unit(n, p)
        return cls(p, "approx", v + e, u, room - e)

    @classmethod
    def from_rational(cls, x, p: int, k: int = DEFAULT_PRECISION) -> PadicScalar:
        return padic_from_rational(x, p, k)

    # -- inspection ---------------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.kind == "zero"

    @property
    def is_fuzzy(self) -> bool:
        return self.kind == "fuzzy"

    @property
    def absolute_precision(self) -> int | None:
        """Exponent m such that the value is known mod p**m (None if exact)."""
        if self.kind == "zero":
            return None
        if self.kind == "fuzzy":
            return self.valuation
        return self.valuation + self.precision

    @property
    def digits(self) -> list[int]:
        out, u = [], self.unit
        for _ in range(self.precision):
            u, r = divmod(u, self.prime)
            out.append(r)
        return out

    def abs(self) -> AbsValue:
        if self.kind == "fuzzy":
            raise IndistinguishableFromZero(
                f"value is O({self.prime}^{self.valuation}); |x|_p is undetermined"
            )
        if self.kind == "zero":
            return AbsValue.zero(self.prime)
        return AbsValue(self.prime, self.valuation)

    def lower_valuation(self) -> float | int:
        """A guaranteed lower bound for the valuation (inf for exact zero)."""
        if self.kind == "zero":
            return float("inf")
        return self.valuation

    def to_rational(self) -> Fraction:
        """The canonical representative p**v * u (0 for zero kinds)."""
        if self.kind != "approx":
            return Fraction(0)
        return Fraction(self.prime) ** self.valuation * self.unit

    def residue(self, j: int) -> int:
        """Image in Z/p^jZ; requires an integral value known mod p**j."""
        if j < 0:
            raise ValueError("j must be nonnegative")
        if j == 0 or self.kind == "zero":
            return 0
        if self.absolute_precision < j:
            raise InsufficientPrecision(
                f"value known mod {self.prime}^{self.absolute_precision}, need {j}"
            )
        if self.kind == "fuzzy":
            return 0
        if self.valuation < 0:
            raise ValueError("residue of a non-integral p-adic number")
        return self.prime**self.valuation * self.unit % self.prime**j

    def with_absolute_precision(self, m: int) -> PadicScalar:
        """Forget every digit at or above p**m."""
        if self.kind == "zero":
            return PadicScalar.fuzzy(self.prime, m) if m is not None else self
        cur = self.absolute_precision
        if m >= cur:
            return self
        if self.kind == "fuzzy":
            return PadicScalar.fuzzy(self.prime, m)
        return PadicScalar.from_parts(self.prime, self.valuation, self.unit, m)

    def congruent(self, other: PadicScalar) -> bool:
        """Equality up to the coarser of the two known precisions."""
        _same_prime(self, other)
        d = self - other
        return d.kind != "approx"

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> PadicScalar:
        if self.kind != "approx":
            return self
        return PadicScalar(
            self.prime, "approx", self.valuation, (-self.unit) % self.prime**self.precision, self.precision
        )

    def __add__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return other
        return padic_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return other
        return padic_add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return other
        return padic_add(other, -self)

    def __mul__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return other
        return padic_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return other
        return padic_mul(self, padic_inv(other))

    def __rtruediv__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return other
        return padic_mul(other, padic_inv(self))

    def __pow__(self, n: int) -> PadicScalar:
        if n < 0:
            return padic_inv(self) ** (-n)
        result = padic_from_rational(1, self.prime, max(self.precision, 1))
        base = self
        while n:
            if n & 1:
                result = padic_mul(result, base)
            base = padic_mul(base, base)
            n >>= 1
        return result

    # -- identity -----------------------------------------------------------

    def _key(self):
        return (self.prime, self.kind, self.valuation, self.unit, self.precision)

    def __eq__(self, other):
        if not isinstance(other, PadicScalar):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PadicScalar({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        if self.kind == "zero":
            return f"p:{self.prime};zero"
        if self.kind == "fuzzy":
            return f"p:{self.prime};O:{self.valuation}"
        digits = ",".join(str(d) for d in self.digits)
        return f"p:{self.prime};v:{self.valuation};d:[{digits}];k:{self.precision}"

    @classmethod
    def parse(cls, text: str) -> PadicScalar:
        m = _TEXT_RE.match(text.strip())
        if not m:
            raise ParseError(f"not a p-adic literal: {text!r}")
        p = check_prime(int(m.group(1)))
        if m.group(2):
            return cls.zero(p)
        if m.group(3) is not None:
            return cls.fuzzy(p, int(m.group(3)))
        v, k = int(m.group(4)), int(m.group(6))
        digits = [int(d) for d in m.group(5).split(",") if d.strip()]
        if len(digits) != k or k < 1:
            raise ParseError(f"digit count {len(digits)} does not match k={k}")
        if any(not 0 <= d < p for d in digits) or digits[0] == 0:
            raise ParseError("digits must lie in [0, p) with a nonzero leading digit")
        unit = sum(d * p**i for i, d in enumerate(digits))
        return cls(p, "approx", v, unit, k)


def _same_prime(a: PadicScalar, b: PadicScalar) -> int:
    if a.prime != b.prime:
        raise PrimeMismatch(f"primes differ: {a.prime} vs {b.prime}")
    return a.prime


def _coerce(x, like: PadicScalar):
    if isinstance(x, PadicScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return padic_from_rational(x, like.prime, max(like.precision, DEFAULT_PRECISION))
    return NotImplemented


# ---------------------------------------------------------------------------
# operations


def padic_from_rational(x, p: int, k: int = DEFAULT_PRECISION) -> PadicScalar:
    check_prime(p)
    if k < 1:
        raise ValueError("precision must be at least 1")
    x = Fraction(x)
    if x == 0:
        return PadicScalar.zero(p)
    vn, a = split_unit(x.numerator, p)
    vd, b = split_unit(x.denominator, p)
    mod = p**k
    unit = a * unit_inverse(b, p, k) % mod
    return PadicScalar(p, "approx", vn - vd, unit, k)


def padic_add(a: PadicScalar, b: PadicScalar) -> PadicScalar:
    p = _same_prime(a, b)
    if a.kind == "zero":
        return b
    if b.kind == "zero":
        return a
    m = min(a.absolute_precision, b.absolute_precision)
    terms = [x for x in (a, b) if x.kind == "approx"]
    if not terms:
        return PadicScalar.fuzzy(p, m)
    v0 = min(x.valuation for x in terms)
    total = sum(x.unit * p ** (x.valuation - v0) for x in terms)
    return PadicScalar.from_parts(p, v0, total, m)


def padic_mul(a: PadicScalar, b: PadicScalar) -> PadicScalar:
    p = _same_prime(a, b)
    if a.kind == "zero" or b.kind == "zero":
        return PadicScalar.zero(p)
    if a.kind == "fuzzy" or b.kind == "fuzzy":
        # O(p^m) times a value of valuation >= v is O(p^(m + v))
        return PadicScalar.fuzzy(p, a.lower_valuation() + b.lower_valuation())
    k = min(a.precision, b.precision)
    return PadicScalar(p, "approx", a.valuation + b.valuation, a.unit * b.unit % p**k, k)


def padic_inv(a: PadicScalar) -> PadicScalar:
    if a.kind != "approx":
        raise DivisionByZero("cannot invert a value indistinguishable from zero")
    return PadicScalar(
        a.prime, "approx", -a.valuation, unit_inverse(a.unit, a.prime, a.precision), a.precision
    )


def series_sum(
    terms: Iterable[PadicScalar],
    k: int,
    tail_bound: Callable[[int], int] | None = None,
    *,
    prime: int | None = None,
    max_terms: int = 1_000_000,
) -> PadicScalar:
    """Sum a p-adic series modulo p**k.

    A list or tuple is summed outright.  Any other iterable needs
    ``tail_bound(n)``: a lower bound on the valuation of every term with
    index >= n, nondecreasing in n.  Consumption stops once it reaches k.
    """
    if isinstance(terms, Sequence):
        items = list(terms)
    else:
        if tail_bound is None:
            raise CannotCertifyConvergence("an unbounded iterable needs a tail bound")
        items = []
        it = iter(terms)
        while tail_bound(len(items)) < k:
            if len(items) >= max_terms:
                raise CannotCertifyConvergence(
                    f"tail bound still below {k} after {max_terms} terms"
                )
            try:
                items.append(next(it))
            except StopIteration:
                break
    if not items:
        if prime is None:
            raise ValueError("empty sum needs an explicit prime")
        return PadicScalar.zero(check_prime(prime))
    p = items[0].prime
    acc = PadicScalar.zero(p)
    for term in items:
        if term.prime != p:
            raise PrimeMismatch(f"primes differ: {p} vs {term.prime}")
        if term.lower_valuation() >= k:
            continue
        acc = padic_add(acc, term.with_absolute_precision(k))
    if acc.kind == "zero":
        # every retained term vanished mod p**k, or none was retained
        if all(t.kind == "zero" for t in items):
            return acc
        return PadicScalar.fuzzy(p, k)
    return acc


def geometric_inverse(p: int, e: int, k: int) -> PadicScalar:
    """(1 - p*e)**-1 mod p**k via the partial sum of (p*e)**l for l < k."""
    check_prime(p)
    q = padic_from_rational(p * e, p, k) if p * e else PadicScalar.zero(p)
    terms = []
    power = padic_from_rational(1, p, k)
    for _ in range(k):
        terms.append(power)
        power = power * q if q.kind != "zero" else PadicScalar.zero(p)
    return series_sum(terms, k)


def p_valuation(x, p: int) -> int | float:
    """v_p for ints, Fractions and PadicScalars (inf for zero)."""
    if isinstance(x, PadicScalar):
        return x.abs().exponent if not x.is_exact_zero else float("inf")
    x = Fraction(x)
    if x == 0:
        return float("inf")
    return rational_valuation(x, p)


@dataclass
class ResidueReport:
    prime: int
    j: int
    samples: int
    classes_hit: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures and self.classes_hit == self.prime**self.j


def residue_iso_check(
    p: int, j: int, samples: int, rng: random.Random | None = None, k: int | None = None
) -> ResidueReport:
    """Check that reduction Z_p -> Z/p^jZ is a surjective ring homomorphism.

    Random integral scalars at precision k (default j + 4) are reduced and
    compared against the residues of their sums and products.  Surjectivity
    is checked on the integer lifts 0 .. p**j - 1.
    """
    check_prime(p)
    if j < 0:
        raise ValueError("j must be nonnegative")
    k = j + 4 if k is None else k
    if k < j:
        raise InsufficientPrecision(f"precision {k} is below {j}")
    rng = rng or random.Random(0)
    mod = p**j
    failures = []

    def rand():
        return padic_from_rational(rng.randrange(p**k), p, k) if k else PadicScalar.zero(p)

    for _ in range(samples):
        a, b = rand(), rand()
        ra, rb = a.residue(j), b.residue(j)
        if (a + b).with_absolute_precision(k).residue(j) != (ra + rb) % mod:
            failures.append(("add", a.to_text(), b.to_text()))
        if (a * b).residue(j) != (ra * rb) % mod:
            failures.append(("mul", a.to_text(), b.to_text()))
    hit = {
        (padic_from_rational(n, p, max(j, 1)) if n else PadicScalar.zero(p)).residue(j)
        for n in range(mod)
    }
    return ResidueReport(p, j, samples, len(hit), failures)
