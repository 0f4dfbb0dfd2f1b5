"""Formal calculus on R^N x R: polynomials, truncated series and invariant derivatives.

A :class:`MultiSeries` is a finitely supported map from multi-indices to
ring elements plus a truncation order T (None for exact polynomials).
Symbolic parameters such as a translation point (w, s) or a dilation
factor r are extra variables, so identities are checked coefficientwise.

Convention for the group layer: in a series over n >= N+1 variables,
variables 0..N-1 are z_1..z_N and variable N is t.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    CannotCertifyConvergence,
    DimensionError,
    InsufficientPrecision,
    NotComposable,
    NotConvergentOnDomain,
    OutsideDomain,
    RingMismatch,
)
from .exact import PadicScalar, padic_from_rational, rational_valuation, series_sum
from .report import Verdict
from .rings import BilinearForm, Ring, RingElem

Index = tuple[int, ...]


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class MultiSeries:
    __slots__ = ("ring", "nvars", "coeffs", "order", "names")

    def __init__(
        self,
        ring: Ring,
        nvars: int,
        coeffs: Mapping[Index, object] | None = None,
        order: int | None = None,
        names: Sequence[str] | None = None,
    ):
        self.ring = ring
        self.nvars = nvars
        self.order = order
        self.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(nvars))
        if len(self.names) != nvars:
            raise DimensionError("one name per variable")
        clean = {}
        for alpha, a in (coeffs or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != nvars or any(e < 0 for e in alpha):
                raise DimensionError(f"bad multi-index {alpha}")
            if order is not None and sum(alpha) > order:
                continue
            a = ring(a)
            if not a.is_zero():
                clean[alpha] = a
        self.coeffs = clean

    # -- construction -------------------------------------------------------

    @classmethod
    def constant(cls, ring: Ring, nvars: int, c, names=None) -> MultiSeries:
        return cls(ring, nvars, {(0,) * nvars: c}, names=names)

    @classmethod
    def variable(cls, ring: Ring, nvars: int, i: int, names=None) -> MultiSeries:
        alpha = tuple(1 if k == i else 0 for k in range(nvars))
        return cls(ring, nvars, {alpha: ring.one()}, names=names)

    def like(self, coeffs, order="same") -> MultiSeries:
        return MultiSeries(self.ring, self.nvars, coeffs, self.order if order == "same" else order, self.names)

    def zero(self) -> MultiSeries:
        return self.like({})

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other) -> MultiSeries:
        if isinstance(other, MultiSeries):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            if other.nvars != self.nvars:
                raise DimensionError(f"{self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction, RingElem, PadicScalar)):
            if isinstance(other, int) and not self.ring.has_one:
                raise TypeError("integer constants need a ring with identity")
            return MultiSeries.constant(self.ring, self.nvars, other, self.names)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for alpha, a in other.coeffs.items():
            out[alpha] = out[alpha] + a if alpha in out else a
        return self.like(out, _min_order(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return self.like({alpha: -a for alpha, a in self.coeffs.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> MultiSeries:
        """c * f for a ring element c, or an integer multiple."""
        return self.like({alpha: a * c for alpha, a in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.scale(other)
        if isinstance(other, RingElem):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        order = _min_order(self.order, other.order)
        out: dict = {}
        for alpha, a in self.coeffs.items():
            da = sum(alpha)
            for beta, b in other.coeffs.items():
                if order is not None and da + sum(beta) > order:
                    continue
                gamma = tuple(x + y for x, y in zip(alpha, beta))
                c = a * b
                out[gamma] = out[gamma] + c if gamma in out else c
        return self.like(out, order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiSeries:
        if n < 0:
            raise ValueError("negative power")
        result = MultiSeries.constant(self.ring, self.nvars, self.ring.one(), self.names)
        result = result.like(result.coeffs, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------

    def mismatches(self, other: MultiSeries) -> list[Index]:
        """Multi-indices where the coefficients differ, up to the common truncation."""
        other = self._lift(other)
        order = _min_order(self.order, other.order)
        bad = []
        for alpha in set(self.coeffs) | set(other.coeffs):
            if order is not None and sum(alpha) > order:
                continue
            a = self.coeffs.get(alpha)
            b = other.coeffs.get(alpha)
            if a is None or b is None:
                if (a if b is None else b).is_zero():
                    continue
                bad.append(alpha)
            elif a != b:
                bad.append(alpha)
        return sorted(bad)

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return not self.mismatches(other)

    __hash__ = None

    # -- calculus -----------------------------------------------------------

    def derivative(self, l: int) -> MultiSeries:
        if not 0 <= l < self.nvars:
            raise DimensionError(f"no variable {l}")
        out = {}
        for alpha, a in self.coeffs.items():
            e = alpha[l]
            if e:
                beta = alpha[:l] + (e - 1,) + alpha[l + 1 :]
                out[beta] = a * e
        order = None if self.order is None else self.order - 1
        return self.like(out, order)

    def truncate(self, order: int | None) -> MultiSeries:
        return self.like(self.coeffs, _min_order(self.order, order))

    def degree(self) -> int:
        return max((sum(a) for a in self.coeffs), default=0)

    def constant_term(self) -> RingElem:
        return self.coeffs.get((0,) * self.nvars, self.ring.zero())

    def substitute(self, subs: Sequence[MultiSeries]) -> MultiSeries:
        """f(g_1, ..., g_n) for series g_i in a common variable set."""
        if len(subs) != self.nvars:
            raise DimensionError(f"need {self.nvars} substitutions, got {len(subs)}")
        if not subs:
            raise DimensionError("nothing to substitute")
        target = subs[0]
        for g in subs:
            if g.ring != self.ring or g.nvars != target.nvars:
                raise RingMismatch("substitutions must share ring and variables")
        order = None
        for g in subs:
            order = _min_order(order, g.order)
        if self.order is not None:
            if any(not g.constant_term().is_zero() for g in subs):
                raise NotComposable("a truncated series needs inner series without constant term")
            order = _min_order(order, self.order)
        one = MultiSeries.constant(self.ring, target.nvars, self.ring.one(), target.names).truncate(order)
        powers: list[dict[int, MultiSeries]] = [{0: one} for _ in subs]

        def power(i: int, e: int) -> MultiSeries:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * subs[i].truncate(order)
            return cache[e]

        out = MultiSeries(self.ring, target.nvars, {}, order, target.names)
        for alpha, a in self.coeffs.items():
            term = one
            for i, e in enumerate(alpha):
                if e:
                    term = term * power(i, e)
            out = out + term.scale(a)
        return out

    def evaluate(self, point: Sequence) -> RingElem:
        """Value at a point of the ring; exact polynomials only."""
        if self.order is not None:
            raise NotComposable("a truncated series has no value at a general point")
        pt = [self.ring(x) for x in point]
        if len(pt) != self.nvars:
            raise DimensionError("point has the wrong dimension")
        total = self.ring.zero()
        for alpha, a in self.coeffs.items():
            m = a
            for x, e in zip(pt, alpha):
                if e:
                    m = m * x**e
            total = total + m
        return total

    def embed(self, nvars: int, positions: Sequence[int], names=None) -> MultiSeries:
        """Re-home variable i at index positions[i] of a larger variable set."""
        out = {}
        for alpha, a in self.coeffs.items():
            beta = [0] * nvars
            for i, e in enumerate(alpha):
                beta[positions[i]] += e
            out[tuple(beta)] = a
        return MultiSeries(self.ring, nvars, out, self.order, names)

    def __str__(self) -> str:
        if not self.coeffs:
            s = "0"
        else:
            parts = []
            for alpha in sorted(self.coeffs, key=lambda a: (sum(a), tuple(-x for x in a))):
                a = self.coeffs[alpha]
                mono = "*".join(
                    n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, alpha) if e
                )
                c = str(a)
                if not mono:
                    parts.append(c)
                elif c == "1":
                    parts.append(mono)
                else:
                    parts.append(f"({c})*{mono}" if any(ch in c for ch in "+-/ ;") else f"{c}*{mono}")
            s = " + ".join(parts)
        return s if self.order is None else f"{s} + O(deg {self.order + 1})"

    def __repr__(self):
        return f"MultiSeries({self})"


def variables(ring: Ring, names: Sequence[str]) -> list[MultiSeries]:
    n = len(names)
    return [MultiSeries.variable(ring, n, i, names) for i in range(n)]


def partial_derivative(f: MultiSeries, l: int) -> MultiSeries:
    return f.derivative(l)


def series_arith(f: MultiSeries, g: MultiSeries, op: str) -> MultiSeries:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# delta-homogeneity


def delta_degree(alpha: Index) -> int:
    """alpha_1 + ... + alpha_N + 2 alpha_{N+1}."""
    return sum(alpha[:-1]) + 2 * alpha[-1]


def is_delta_homogeneous(f: MultiSeries, d: int, N: int | None = None) -> Verdict:
    """Every monomial in (z, t) has delta-degree d (variables beyond N+1 ignored)."""
    N = f.nvars - 1 if N is None else N
    for alpha in sorted(f.coeffs):
        if delta_degree(alpha[: N + 1]) != d:
            return Verdict("delta-homogeneous", False, alpha)
    return Verdict("delta-homogeneous", True)


# ---------------------------------------------------------------------------
# the group law on series


def _matrix(b) -> tuple[tuple[RingElem, ...], ...]:
    return b.matrix if isinstance(b, BilinearForm) else tuple(tuple(row) for row in b)


def form_series(b, w: Sequence[MultiSeries], z: Sequence[MultiSeries]) -> MultiSeries:
    m = _matrix(b)
    out = MultiSeries(w[0].ring, w[0].nvars, {}, _min_order(w[0].order, z[0].order), w[0].names)
    for j, row in enumerate(m):
        for l, bjl in enumerate(row):
            if not bjl.is_zero():
                out = out + (w[j] * z[l]).scale(bjl)
    return out


def heis_mul_series(b, a: tuple, c: tuple) -> tuple[list[MultiSeries], MultiSeries]:
    (w, s), (z, t) = a, c
    return [x + y for x, y in zip(w, z)], s + t + form_series(b, w, z)


def heis_inv_series(b, a: tuple) -> tuple[list[MultiSeries], MultiSeries]:
    w, s = a
    return [-x for x in w], -s + form_series(b, w, w)


def _as_series(x, like: MultiSeries) -> MultiSeries:
    if isinstance(x, MultiSeries):
        return x
    return MultiSeries.constant(like.ring, like.nvars, x, like.names)


def _coords(f: MultiSeries, N: int) -> tuple[list[MultiSeries], MultiSeries]:
    v = variables(f.ring, f.names)
    return v[:N], v[N]


def left_translate(b, f: MultiSeries, point: tuple) -> MultiSeries:
    """L_(w,s) f: (z, t) -> f((w, s)^-1 * (z, t)).

    ``point`` is (w, s) with entries that are series in f's variables
    (symbolic) or ring elements (concrete).
    """
    N = len(_matrix(b))
    if f.nvars < N + 1:
        raise DimensionError("f needs variables z_1..z_N, t")
    w, s = point
    w = [_as_series(x, f) for x in w]
    s = _as_series(s, f)
    z, t = _coords(f, N)
    nz, nt = heis_mul_series(b, heis_inv_series(b, (w, s)), (z, t))
    rest = variables(f.ring, f.names)[N + 1 :]
    return f.substitute(nz + [nt] + rest)


def invariant_derivative(b, f: MultiSeries, l: int) -> MultiSeries:
    """D_l f = df/dz_l + (sum_j b_jl z_j) df/dt, l counted from 0."""
    m = _matrix(b)
    N = len(m)
    if not 0 <= l < N:
        raise DimensionError(f"l must lie in [0, {N})")
    z, _ = _coords(f, N)
    coeff = MultiSeries(f.ring, f.nvars, {}, None, f.names)
    for j in range(N):
        if not m[j][l].is_zero():
            coeff = coeff + z[j].scale(m[j][l])
    return f.derivative(l) + coeff * f.derivative(N)


def dilation_pullback(f: MultiSeries, r, N: int) -> MultiSeries:
    """f(r z, r^2 t); r is a ring element or a series in f's variables."""
    r = _as_series(r, f)
    v = variables(f.ring, f.names)
    subs = [r * v[j] for j in range(N)] + [r * r * v[N]] + v[N + 1 :]
    return f.substitute(subs)


# ---------------------------------------------------------------------------
# horizontal curves


@dataclass
class HorizontalCurve:
    form: object
    phis: list[MultiSeries]
    order: int

    @property
    def N(self) -> int:
        return len(self.phis) - 1

    def integrand(self) -> MultiSeries:
        m = _matrix(self.form)
        N = self.N
        out = MultiSeries(self.phis[0].ring, 1, {}, self.order - 1, ("x",))
        for j in range(N):
            for l in range(N):
                if not m[j][l].is_zero():
                    out = out + (self.phis[j] * self.phis[l].derivative(0)).scale(m[j][l])
        return out.truncate(self.order - 1)

    def satisfies_ode(self) -> Verdict:
        lhs = self.phis[-1].derivative(0)
        bad = lhs.mismatches(self.integrand())
        return Verdict("horizontal-ode", not bad, bad[0] if bad else None, self.order)

    def chain_rule_check(self, f: MultiSeries) -> Verdict:
        """d/dx f(phi(x)) = sum_l phi_l'(x) (D_l f)(phi(x)) through order T-1."""
        N = self.N
        if f.order is not None:
            raise NotComposable("chain-rule check takes a polynomial f")
        lhs = f.substitute(self.phis).derivative(0)
        rhs = MultiSeries(f.ring, 1, {}, self.order - 1, ("x",))
        for l in range(N):
            rhs = rhs + self.phis[l].derivative(0) * invariant_derivative(self.form, f, l).substitute(self.phis)
        bad = lhs.truncate(self.order - 1).mismatches(rhs.truncate(self.order - 1))
        return Verdict("chain-rule", not bad, bad[0] if bad else None, self.order)

    def translate(self, w: Sequence, s) -> HorizontalCurve:
        """The curve (w, s) * phi(x)."""
        like = self.phis[0]
        ws = [_as_series(x, like) for x in w]
        z, t = heis_mul_series(self.form, (ws, _as_series(s, like)), (self.phis[:-1], self.phis[-1]))
        return HorizontalCurve(self.form, [g.truncate(self.order) for g in z + [t]], self.order)


def horizontal_ode_solve(b, phis: Sequence[MultiSeries], t0=0, order: int = 12) -> HorizontalCurve:
    """Solve phi_{N+1}' = sum b_jl phi_j phi_l' with phi_{N+1}(0) = t0 through x^order."""
    m = _matrix(b)
    N = len(m)
    if len(phis) != N:
        raise DimensionError(f"need {N} component series")
    ring = phis[0].ring
    phis = [p.truncate(order) for p in phis]
    curve = HorizontalCurve(b, list(phis) + [MultiSeries(ring, 1, {}, order, ("x",))], order)
    g = curve.integrand()
    coeffs = {(0,): ring(t0)}
    for (e,), a in g.coeffs.items():
        coeffs[(e + 1,)] = ring.div_int(a, e + 1)
    curve.phis[-1] = MultiSeries(ring, 1, coeffs, order, ("x",))
    return curve


# ---------------------------------------------------------------------------
# convergent p-adic series


@dataclass(frozen=True)
class TailBound:
    """g(n) = slope * n + intercept, a lower bound for v_p(a_alpha) + alpha.k when |alpha| = n."""

    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "intercept", Fraction(self.intercept))
        if self.slope <= 0:
            raise ValueError("slope must be positive so the bound tends to infinity")

    def __call__(self, n: int) -> Fraction:
        return self.slope * n + self.intercept

    def cutoff(self, m: int) -> int:
        """Least n with g(n') >= m for every n' >= n."""
        return max(0, math.ceil((m - self.intercept) / self.slope))


def _coeff_valuation(a, p: int):
    if isinstance(a, PadicScalar):
        return a.lower_valuation()
    a = Fraction(a)
    return float("inf") if a == 0 else rational_valuation(a, p)


def _indices(n: int, total: int):
    """All multi-indices in n variables with |alpha| = total."""
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _indices(n - 1, total - first):
            yield (first,) + rest


class ConvergentSeries:
    """sum a_alpha x^alpha over Q_p with a witness that |a_alpha| p^(-alpha.k) -> 0.

    ``source`` is a dict of coefficients (finite support, bound optional)
    or a callable alpha -> coefficient (bound required).
    """

    def __init__(self, p: int, nvars: int, k: Sequence[int], source, bound: TailBound | None = None,
                 check_degree: int = 40):
        self.p, self.nvars = p, nvars
        self.k = tuple(k)
        if len(self.k) != nvars:
            raise DimensionError("one radius exponent per variable")
        self.bound = bound
        self._cache: dict = {}
        if callable(source):
            if bound is None:
                raise CannotCertifyConvergence("an infinite series needs a tail bound")
            self._fn = source
            self.support = None
        else:
            items = {tuple(a): c for a, c in source.items()}
            self._fn = lambda alpha: items.get(alpha, 0)
            self.support = max((sum(a) for a, c in items.items() if _coeff_valuation(c, p) != float("inf")), default=-1)
        limit = self.support if self.support is not None else check_degree
        for n in range(limit + 1):
            for alpha in _indices(nvars, n):
                self._verify(alpha, self.coefficient(alpha))

    def _verify(self, alpha, a) -> None:
        if self.bound is None:
            return
        v = _coeff_valuation(a, self.p)
        if v == float("inf"):
            return
        shift = sum(ai * ki for ai, ki in zip(alpha, self.k))
        if v + shift < self.bound(sum(alpha)):
            raise NotConvergentOnDomain(
                f"coefficient at {alpha} violates the tail bound", witness=alpha
            )

    def coefficient(self, alpha: Index):
        alpha = tuple(alpha)
        if alpha not in self._cache:
            self._cache[alpha] = self._fn(alpha)
        return self._cache[alpha]

    def terms_needed(self, m: int) -> int:
        """Total degrees below this cutoff can contribute mod p^m."""
        if self.bound is None:
            return self.support + 1
        cut = self.bound.cutoff(m)
        return cut if self.support is None else min(cut, self.support + 1)

    def effective_bound(self) -> TailBound:
        """A tail bound valid for every coefficient (built for finite support if absent)."""
        if self.bound is not None:
            return self.bound
        lows = []
        for n in range(self.support + 1):
            for alpha in _indices(self.nvars, n):
                v = _coeff_valuation(self.coefficient(alpha), self.p)
                if v != float("inf"):
                    lows.append(v + sum(a * k for a, k in zip(alpha, self.k)) - n)
        return TailBound(1, min(lows, default=0))

    # -- witnesses for derived series ---------------------------------------

    def __mul__(self, other: ConvergentSeries) -> ConvergentSeries:
        self._same(other)
        g1, g2 = self.effective_bound(), other.effective_bound()
        bound = TailBound(min(g1.slope, g2.slope), g1.intercept + g2.intercept)

        def coeff(gamma):
            total = Fraction(0)
            for alpha in itertools.product(*(range(g + 1) for g in gamma)):
                beta = tuple(g - a for g, a in zip(gamma, alpha))
                total += _rat(self.coefficient(alpha)) * _rat(other.coefficient(beta))
            return total

        return ConvergentSeries(self.p, self.nvars, self.k, coeff, bound, check_degree=0)

    def __add__(self, other: ConvergentSeries) -> ConvergentSeries:
        self._same(other)
        g1, g2 = self.effective_bound(), other.effective_bound()
        bound = TailBound(min(g1.slope, g2.slope), min(g1.intercept, g2.intercept))
        return ConvergentSeries(
            self.p, self.nvars, self.k,
            lambda a: _rat(self.coefficient(a)) + _rat(other.coefficient(a)), bound, check_degree=0,
        )

    def derivative(self, l: int) -> ConvergentSeries:
        g = self.effective_bound()
        bound = TailBound(g.slope, g.intercept + g.slope - self.k[l])

        def coeff(alpha):
            beta = alpha[:l] + (alpha[l] + 1,) + alpha[l + 1 :]
            return (alpha[l] + 1) * _rat(self.coefficient(beta))

        return ConvergentSeries(self.p, self.nvars, self.k, coeff, bound, check_degree=10)

    def _same(self, other):
        if (self.p, self.nvars, self.k) != (other.p, other.nvars, other.k):
            raise RingMismatch("series on different domains")

    def polynomial(self, m: int) -> dict[Index, Fraction]:
        """The coefficients that can matter mod p^m on the domain."""
        out = {}
        for n in range(self.terms_needed(m)):
            for alpha in _indices(self.nvars, n):
                a = self.coefficient(alpha)
                self._verify(alpha, a)
                if _coeff_valuation(a, self.p) != float("inf"):
                    out[alpha] = _rat(a)
        return out


def _rat(a) -> Fraction:
    if isinstance(a, PadicScalar):
        return a.to_rational()
    return Fraction(a)


def convergence_certify(f, k: Sequence[int], bound: TailBound | None, p: int | None = None,
                        check_degree: int = 40) -> ConvergentSeries:
    """Certify f on the polydisc |x_i| <= p^-k_i.

    f may be a MultiSeries over Q_p/Z_p (finite support) or a callable
    alpha -> coefficient together with p.
    """
    if isinstance(f, MultiSeries):
        if f.ring.kind == "padic":
            p = f.ring.prime
        elif p is None:
            raise ValueError("a prime is needed")
        if f.order is not None and bound is None:
            raise CannotCertifyConvergence("a truncated series needs a tail bound")
        coeffs = {alpha: a.value for alpha, a in f.coeffs.items()}
        return ConvergentSeries(p, f.nvars, k, coeffs, bound, check_degree)
    if p is None:
        raise ValueError("a prime is needed")
    nvars = len(k)
    return ConvergentSeries(p, nvars, k, f, bound, check_degree)


def _to_padic(x, p: int, prec: int) -> PadicScalar:
    if isinstance(x, RingElem):
        x = x.value
    if isinstance(x, PadicScalar):
        return x
    x = Fraction(x)
    return PadicScalar.zero(p) if x == 0 else padic_from_rational(x, p, prec)


def series_eval(f: ConvergentSeries, x: Sequence, m: int, slack: int = 2) -> PadicScalar:
    """f(x) mod p^m for x in the certified domain."""
    p = f.p
    if len(x) != f.nvars:
        raise DimensionError("point has the wrong dimension")
    g = f.effective_bound()
    prec = max(1, m - math.floor(min(g.intercept, 0)) + slack)
    xs = [_to_padic(xi, p, prec) for xi in x]
    for xi, ki in zip(xs, f.k):
        if xi.is_fuzzy:
            if xi.absolute_precision < ki:
                raise InsufficientPrecision("coordinate too imprecise to place in the domain")
        elif not xi.is_exact_zero and xi.valuation < ki:
            raise OutsideDomain(f"|{xi}|_p exceeds {p}^-{ki}")
    terms = []
    for alpha, a in f.polynomial(m).items():
        term = _to_padic(a, p, prec)
        for xi, e in zip(xs, alpha):
            if e:
                term = term * xi**e
        terms.append(term)
    result = series_sum(terms, m, prime=p)
    if result.absolute_precision is not None and result.absolute_precision < m:
        raise InsufficientPrecision(f"result known only mod {p}^{result.absolute_precision}")
    return result


def left_translate_series(f: ConvergentSeries, b, point: tuple, m: int, ring: Ring) -> ConvergentSeries:
    """L_(w,s) f on the domain (k, 2k), kept to the terms that matter mod p^m.

    The result is a polynomial, certified on the same domain; evaluating it
    agrees with f((w,s)^-1 * x) mod p^m.
    """
    N = len(_matrix(b))
    if f.nvars != N + 1:
        raise DimensionError("f must be a series in z_1..z_N, t")
    poly = MultiSeries(ring, N + 1, {a: c for a, c in f.polynomial(m).items()})
    w, s = point
    moved = left_translate(b, poly, ([ring(x) for x in w], ring(s)))
    coeffs = {alpha: _rat(a.value) if isinstance(a.value, PadicScalar) else Fraction(a.value)
              for alpha, a in moved.coeffs.items()}
    return ConvergentSeries(f.p, f.nvars, f.k, coeffs, None)
