"""Ultrametrics: sequence spaces, the sup ultranorm and the homogeneous gauge.

All values are compared as integer exponents; no real arithmetic is used.
A gauge value p^(-m/2) is stored through its half-exponent m.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    GaugeRequiresIntegralForm,
    InsufficientPrecision,
    NeedMorePrefix,
    OutsideIntegralDomain,
)
from .exact import AbsValue, PadicScalar, check_prime, rational_valuation
from .heis import HeisGroup, HeisPoint
from .report import Verdict
from .rings import RingElem


@functools.total_ordering
@dataclass(frozen=True)
class GaugeValue:
    prime: int
    half_exponent: int | None  # None encodes zero

    @property
    def is_zero(self) -> bool:
        return self.half_exponent is None

    def _key(self):
        return (0, 0) if self.is_zero else (1, -self.half_exponent)

    def __lt__(self, other: GaugeValue) -> bool:
        return self._key() < other._key()

    def scale(self, r: AbsValue) -> GaugeValue:
        """|r| times this value."""
        if self.is_zero or r.is_zero:
            return GaugeValue(self.prime, None)
        return GaugeValue(self.prime, self.half_exponent + 2 * r.exponent)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"{self.prime}^(-{self.half_exponent}/2)" if self.half_exponent >= 0 else (
            f"{self.prime}^({-self.half_exponent}/2)"
        )


# ---------------------------------------------------------------------------
# sequence space


@dataclass(frozen=True)
class SeqPoint:
    """A sequence over {0..alphabet_size-1}: a prefix, then optionally a repeating tail.

    Without a tail only the prefix is known.
    """

    alphabet_size: int
    prefix: tuple[int, ...]
    tail: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.alphabet_size < 2:
            raise ValueError("alphabet needs at least two symbols")
        syms = self.prefix + (self.tail or ())
        if any(not 0 <= s < self.alphabet_size for s in syms):
            raise ValueError("symbol out of range")
        if self.tail is not None and not self.tail:
            raise ValueError("a periodic tail must be nonempty")

    def symbol(self, i: int) -> int | None:
        if i < len(self.prefix):
            return self.prefix[i]
        if self.tail is None:
            return None
        return self.tail[(i - len(self.prefix)) % len(self.tail)]

    def extend(self, symbols: Sequence[int]) -> SeqPoint:
        if self.tail is not None:
            raise ValueError("sequence is already fully determined")
        return SeqPoint(self.alphabet_size, self.prefix + tuple(symbols))


def common_prefix(x: SeqPoint, y: SeqPoint) -> int | None:
    """n(x, y), or None when x == y."""
    if x.alphabet_size != y.alphabet_size:
        raise ValueError("different alphabets")
    if x.tail is not None and y.tail is not None:
        horizon = max(len(x.prefix), len(y.prefix)) + math.lcm(len(x.tail), len(y.tail))
    else:
        horizon = None
    i = 0
    while horizon is None or i < horizon:
        a, b = x.symbol(i), y.symbol(i)
        if a is None or b is None:
            raise NeedMorePrefix(f"sequences agree on the first {i} stored symbols")
        if a != b:
            return i
        i += 1
    return None


def seq_distance(x: SeqPoint, y: SeqPoint, rho) -> Fraction:
    """rho**n(x, y) with 0 < rho < 1, so longer agreement means closer."""
    rho = Fraction(rho)
    if not 0 < rho < 1:
        raise ValueError("rho must lie in (0, 1)")
    n = common_prefix(x, y)
    return Fraction(0) if n is None else rho**n


# ---------------------------------------------------------------------------
# p-adic norms


def _abs_or_bound(x: PadicScalar) -> tuple[AbsValue | None, int | None]:
    """(exact |x|, None) or (None, m) when x is only known to be O(p^m)."""
    if x.is_fuzzy:
        return None, x.absolute_precision
    return x.abs(), None


def _max_with_bounds(p: int, values: list[AbsValue], bounds: list[int]) -> AbsValue:
    best = max(values, default=AbsValue.zero(p))
    for m in bounds:
        if best < AbsValue(p, m):
            raise InsufficientPrecision(f"coordinate only known to be O({p}^{m})")
    return best


def ultranorm(v: Sequence[PadicScalar]) -> AbsValue:
    """max_j |v_j|_p over a vector of p-adic scalars."""
    if not v:
        raise ValueError("empty vector")
    p = v[0].prime
    if any(x.prime != p for x in v):
        raise ValueError("mixed primes")
    values, bounds = [], []
    for x in v:
        a, m = _abs_or_bound(x)
        (values.append(a) if m is None else bounds.append(m))
    if bounds and not values:
        raise InsufficientPrecision("every coordinate is indistinguishable from zero")
    return _max_with_bounds(p, values, bounds)


def _prime_of(G: HeisGroup, p: int | None) -> int:
    if G.ring.kind == "padic":
        if p is not None and p != G.ring.prime:
            raise ValueError("prime does not match the group's ring")
        return G.ring.prime
    if G.ring.kind in ("integers", "rationals"):
        if p is None:
            raise ValueError(f"a prime is needed for points over {G.ring}")
        return check_prime(p)
    raise ValueError(f"no p-adic absolute value on {G.ring}")


def _valuation_parts(x: RingElem, p: int) -> tuple[int | None, int | None]:
    """(valuation, None), (None, m) for O(p^m), or (None, None) for exact zero."""
    v = x.value
    if isinstance(v, PadicScalar):
        if v.is_exact_zero:
            return None, None
        if v.is_fuzzy:
            return None, v.absolute_precision
        return v.valuation, None
    if v == 0:
        return None, None
    return rational_valuation(v, p), None


def _check_integral_form(G: HeisGroup, p: int, err) -> None:
    if G.kind != "bilinear":
        raise err("the gauge is defined for bilinear laws")
    for row in G.law.matrix:
        for b in row:
            v, _ = _valuation_parts(b, p)
            if v is not None and v < 0:
                raise err(f"form entry {b} is not in Z_{p}")


def _gauge_raw(p: int, a: HeisPoint) -> GaugeValue:
    halves, bounds = [], []
    for x in a.z:
        v, m = _valuation_parts(x, p)
        if v is not None:
            halves.append(2 * v)
        elif m is not None:
            bounds.append(2 * m)
    v, m = _valuation_parts(a.t, p)
    if v is not None:
        halves.append(v)
    elif m is not None:
        bounds.append(m)
    if not halves:
        if bounds:
            raise InsufficientPrecision("point is indistinguishable from the identity")
        return GaugeValue(p, None)
    best = min(halves)
    if any(b < best for b in bounds):
        raise InsufficientPrecision("a coordinate's precision is too low to fix the gauge")
    return GaugeValue(p, best)


def gauge(G: HeisGroup, a: HeisPoint, p: int | None = None) -> GaugeValue:
    """max(|z_1|_p, ..., |z_N|_p, |t|_p^(1/2))."""
    p = _prime_of(G, p)
    _check_integral_form(G, p, GaugeRequiresIntegralForm)
    G._check(a)
    return _gauge_raw(p, a)


def left_invariant_distance(G: HeisGroup, a: HeisPoint, b: HeisPoint, p: int | None = None) -> GaugeValue:
    p = _prime_of(G, p)
    if a == b:
        return GaugeValue(p, None)
    return gauge(G, G.mul(G.inv(a), b), p)


def _is_integral(x: RingElem, p: int) -> bool:
    v, _ = _valuation_parts(x, p)
    return v is None or v >= 0


def integral_bi_invariant_distance(
    G: HeisGroup, a: HeisPoint, b: HeisPoint, p: int | None = None
) -> AbsValue:
    """||a^-1 b||_p = max of all N+1 coordinate absolute values; points in Z_p^N x Z_p."""
    p = _prime_of(G, p)
    _check_integral_form(G, p, OutsideIntegralDomain)
    for pt in (a, b):
        G._check(pt)
        if not all(_is_integral(x, p) for x in pt.z + (pt.t,)):
            raise OutsideIntegralDomain(f"{pt} is not in Z_{p}^N x Z_{p}")
    if a == b:
        return AbsValue.zero(p)
    c = G.mul(G.inv(a), b)
    exps, bounds = [], []
    for x in c.z + (c.t,):
        v, m = _valuation_parts(x, p)
        if v is not None:
            exps.append(AbsValue(p, v))
        elif m is not None:
            bounds.append(m)
    if not exps:
        raise InsufficientPrecision("points are indistinguishable")
    return _max_with_bounds(p, exps, bounds)


def coordinate_distance(G: HeisGroup, a: HeisPoint, b: HeisPoint, p: int | None = None) -> AbsValue:
    """max over coordinates of |b_i - a_i|_p."""
    p = _prime_of(G, p)
    vals = []
    for x, y in zip(a.z + (a.t,), b.z + (b.t,)):
        v, m = _valuation_parts(y - x, p)
        if v is not None:
            vals.append(AbsValue(p, v))
    return max(vals, default=AbsValue.zero(p))


# ---------------------------------------------------------------------------
# distances as values and the generic checker


def gauge_metric(G: HeisGroup, p: int | None = None) -> Callable:
    return lambda a, b: left_invariant_distance(G, a, b, p)


def integral_metric(G: HeisGroup, p: int | None = None) -> Callable:
    return lambda a, b: integral_bi_invariant_distance(G, a, b, p)


def seq_metric(rho) -> Callable:
    return lambda x, y: seq_distance(x, y, rho)


def _is_zero(d) -> bool:
    z = getattr(d, "is_zero", None)
    return bool(z) if z is not None else d == 0


def ultrametric_check(dist: Callable, points: Sequence) -> Verdict:
    """Symmetry, d(x,y) = 0 iff x = y, and the strong triangle inequality on all triples."""
    pts = list(points)
    n = len(pts)
    table = {}
    for i in range(n):
        for j in range(n):
            table[i, j] = dist(pts[i], pts[j])
    checked = 0
    for i in range(n):
        for j in range(n):
            checked += 1
            if table[i, j] != table[j, i]:
                return Verdict("ultrametric", False, ("symmetry", pts[i], pts[j]), checked)
            if _is_zero(table[i, j]) != (pts[i] == pts[j]):
                return Verdict("ultrametric", False, ("identity", pts[i], pts[j]), checked)
    for i, j, k in itertools.product(range(n), repeat=3):
        checked += 1
        if table[i, k] > max(table[i, j], table[j, k]):
            return Verdict("ultrametric", False, (pts[i], pts[j], pts[k]), checked)
    return Verdict("ultrametric", True, None, checked)
