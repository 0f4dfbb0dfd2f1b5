"""Executable property suites.

Each suite takes a seeded ``random.Random`` and size knobs and returns a
list of verdicts.  ``FULL`` holds the sizes used for acceptance runs;
``run_all`` scales everything down to a sample budget for quick checks.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .calculus import (
    MultiSeries,
    TailBound,
    convergence_certify,
    delta_degree,
    dilation_pullback,
    heis_mul_series,
    horizontal_ode_solve,
    invariant_derivative,
    is_delta_homogeneous,
    left_translate,
    series_eval,
    variables,
)
from .errors import InsufficientPrecision
from .exact import (
    AbsValue,
    PadicScalar,
    geometric_inverse,
    padic_from_rational,
    padic_inv,
)
from .heis import Coboundary, CocycleTable, HeisGroup, HeisPoint, cocycle_verify, h2_enumerate
from .measure import Cell, cell_decompose, cell_residue_count, dilate_measure, random_cell
from .metric import (
    SeqPoint,
    gauge,
    integral_bi_invariant_distance,
    left_invariant_distance,
    seq_distance,
)
from .report import Verdict
from .rings import BilinearForm, Ring, standard_symplectic

FULL = {
    "field_pairs": 10_000,
    "geometric": 100,
    "z3_triples": 10_000,
    "infinite_triples": 1_000,
    "cells": 100,
    "metric": 1_000,
    "calculus_trials": 5,
    "ode_trials": 5,
    "eval_pairs": 100,
}


def _verdict(name: str, failures: list, checked: int, **details) -> Verdict:
    return Verdict(name, not failures, failures[0] if failures else None, checked, details)


def random_padic(rng: random.Random, p: int, k: int, vmin: int = -4, vmax: int = 4) -> PadicScalar:
    if rng.random() < 0.02:
        return PadicScalar.zero(p)
    unit = rng.randrange(1, p**k)
    while unit % p == 0:
        unit = rng.randrange(1, p**k)
    return PadicScalar(p, "approx", rng.randint(vmin, vmax), unit, rng.randint(1, k))


# ---------------------------------------------------------------------------
# p-adic arithmetic


def field_laws(rng: random.Random, pairs: int = FULL["field_pairs"], primes=(2, 3, 5, 7)) -> list[Verdict]:
    mul_fail, add_fail, checked = [], [], 0
    for p in primes:
        for i in range(pairs):
            x, y = random_padic(rng, p, 12), random_padic(rng, p, 12)
            if i % 4 == 0 and not x.is_exact_zero:
                # force equal absolute values so the inequality case is exercised
                y = PadicScalar(p, "approx", x.valuation, y.unit or 1, y.precision) if y.kind == "approx" else y
            checked += 1
            if x.abs() * y.abs() != (x * y).abs():
                mul_fail.append((x, y))
            s = x + y
            if s.is_fuzzy:
                # every known digit cancelled: |x| = |y| and the sum sits below both
                if x.abs() != y.abs() or AbsValue(p, s.absolute_precision) > max(x.abs(), y.abs()):
                    add_fail.append((x, y))
                continue
            a, b, c = x.abs(), y.abs(), s.abs()
            if c > max(a, b) or (a != b and c != max(a, b)):
                add_fail.append((x, y))
    return [
        _verdict("padic |xy| = |x||y|", mul_fail, checked),
        _verdict("padic |x+y| <= max, equality off the diagonal", add_fail, checked),
    ]


def quotient_iso(rng: random.Random, primes=(2, 3, 5), js=(1, 2, 3)) -> list[Verdict]:
    failures, checked = [], 0
    for p in primes:
        for j in js:
            mod = p**j
            k = j + 3
            # each residue lifted with random higher digits
            lifts = [r + mod * rng.randrange(p**3) for r in range(mod)]
            scal = [padic_from_rational(x, p, k) if x else PadicScalar.zero(p) for x in lifts]
            hit = {s.residue(j) for s in scal}
            if hit != set(range(mod)):
                failures.append(("surjective", p, j))
            for (a, sa), (b, sb) in itertools.product(zip(lifts, scal), repeat=2):
                checked += 1
                ra, rb = a % mod, b % mod
                if (sa + sb).residue(j) != (ra + rb) % mod or (sa * sb).residue(j) != ra * rb % mod:
                    failures.append((p, j, a, b))
                    break
    return [_verdict("Z_p -> Z/p^j is a surjective ring homomorphism", failures, checked)]


def geometric_inversion(rng: random.Random, count: int = FULL["geometric"], primes=(2, 3, 5)) -> list[Verdict]:
    failures, checked = [], 0
    for p in primes:
        for _ in range(count):
            k = rng.randint(1, 16)
            e = rng.randrange(-(p**k), p**k)
            checked += 1
            mod = p**k
            got = geometric_inverse(p, e, k)
            oracle = pow(1 - p * e, -1, mod)
            via_inv = padic_inv(padic_from_rational(1 - p * e, p, k))
            if got.residue(k) != oracle or via_inv.residue(k) != oracle:
                failures.append((p, e, k))
    return [_verdict("sum (pe)^l == (1-pe)^-1 mod p^k", failures, checked)]


# ---------------------------------------------------------------------------
# rings


def ring_axioms(rng: random.Random, triples: int = 1000) -> list[Verdict]:
    rings = [
        Ring.integers(), Ring.rationals(), Ring.modular(12), Ring.ideal(2, 8),
        Ring.padic(3, 16), Ring.padic(5, 16, integral=True),
    ]
    failures, checked = [], 0
    for R in rings:
        for _ in range(triples):
            a, b, c = R.random(rng), R.random(rng), R.random(rng)
            checked += 1
            if not (
                (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
                and a + b == b + a and a * b == b * a and a * (b + c) == a * b + a * c
            ):
                failures.append((str(R), a, b, c))
    return [_verdict("commutative ring axioms", failures, checked)]


# ---------------------------------------------------------------------------
# groups


def random_form(rng: random.Random, R: Ring, N: int) -> BilinearForm:
    return BilinearForm([[R.random(rng) for _ in range(N)] for _ in range(N)], R)


def _axioms(G: HeisGroup, triples, failures: list) -> int:
    e = G.identity()
    checked = 0
    for a, b, c in triples:
        checked += 1
        if G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)):
            failures.append(("assoc", a, b, c))
        if G.mul(e, a) != a or G.mul(a, e) != a:
            failures.append(("identity", a))
        ai = G.inv(a)
        if G.mul(a, ai) != e or G.mul(ai, a) != e:
            failures.append(("inverse", a))
        if failures:
            break
    return checked


def group_axioms(
    rng: random.Random,
    z3_triples: int = FULL["z3_triples"],
    infinite_triples: int = FULL["infinite_triples"],
) -> list[Verdict]:
    out = []
    for m in (2, 3):
        R = Ring.modular(m)
        for G in (HeisGroup(random_form(rng, R, 2)), HeisGroup.symplectic(1, R)):
            els = G.elements()
            failures = []
            n = _axioms(G, itertools.product(els, repeat=3), failures)
            out.append(_verdict(f"group axioms N=2 over Z/{m}, exhaustive", failures, n))
    # N=4 symplectic: exhaustive over Z/2, sampled over Z/3
    G = HeisGroup.symplectic(2, Ring.modular(2))
    els = G.elements()
    failures = []
    n = _axioms(G, itertools.product(els, repeat=3), failures)
    out.append(_verdict("group axioms N=4 over Z/2, exhaustive", failures, n))
    G = HeisGroup.symplectic(2, Ring.modular(3))
    failures = []
    n = _axioms(G, ((G.random_point(rng), G.random_point(rng), G.random_point(rng)) for _ in range(z3_triples)), failures)
    out.append(_verdict("group axioms N=4 over Z/3, sampled", failures, n))
    # N=5 over Z/3: |H| = 3^6, so 3^18 triples; sampled
    G = HeisGroup(random_form(rng, Ring.modular(3), 5))
    failures = []
    n = _axioms(G, ((G.random_point(rng), G.random_point(rng), G.random_point(rng)) for _ in range(z3_triples)), failures)
    out.append(_verdict("group axioms N=5 over Z/3, sampled", failures, n))
    for R in (Ring.integers(), Ring.rationals(), Ring.padic(5, 20)):
        G = HeisGroup(random_form(rng, R, 2))
        failures = []
        n = _axioms(
            G, ((G.random_point(rng), G.random_point(rng), G.random_point(rng)) for _ in range(infinite_triples)), failures
        )
        out.append(_verdict(f"group axioms N=2 over {R}, sampled", failures, n))
    return out


def cocycle_machinery(rng: random.Random, moduli=(2, 3)) -> list[Verdict]:
    out = []
    for m in moduli:
        A = Ring.modular(m)
        tables = []
        fails = []
        for b in A.elements():
            B = BilinearForm([[b]], A)
            t = CocycleTable(A, 1, A, lambda w, z, B=B: B(w, z), verify=False)
            if not cocycle_verify(t).passed:
                fails.append(("form", b))
            tables.append(t)
        for values in itertools.product(range(m), repeat=m):
            cob = Coboundary(A, 1, A, {(i,): v for i, v in enumerate(values)})
            t = cob.cocycle(verify=False)
            if not cocycle_verify(t).passed:
                fails.append(("coboundary", values))
            tables.append(t)
        out.append(_verdict(f"forms and coboundaries are cocycles over Z/{m}", fails, len(tables)))
        # un-normalized laws: add constants so B(0,0) != 0
        fails = []
        checked = 0
        for base in tables:
            for c in A.elements():
                t = CocycleTable(A, 1, A, lambda w, z, base=base, c=c: base(w, z) + c, verify=False)
                G = HeisGroup(t)
                e = G.identity()
                b00 = t.zero_value()
                if e != HeisPoint((A.zero(),), -b00):
                    fails.append(("identity", c))
                for a in G.elements():
                    checked += 1
                    w, s = a.z, a.t
                    negw = (-w[0],)
                    inv = HeisPoint(negw, -s - t(w, negw) - b00)
                    if G.inv(a) != inv or G.mul(a, inv) != e or G.mul(inv, a) != e:
                        fails.append(("inverse", a))
                    if G.mul(e, a) != a or G.mul(a, e) != a:
                        fails.append(("identity", a))
        out.append(_verdict(f"cocycle law identity and inverse over Z/{m}", fails, checked))
    return out


def h2_brute_force(rng: random.Random) -> list[Verdict]:
    out = []
    A = Ring.modular(2)
    for N in (1, 2):
        first = h2_enumerate(A, N, A)
        second = h2_enumerate(A, N, A)
        ok = first == second and first.cocycles % first.coboundaries == 0
        tables = 2 ** (2 ** (2 * N))
        out.append(
            Verdict(
                f"H^2 brute force, A=Z/2, N={N}",
                ok,
                None if ok else (first, second),
                tables,
                {"cocycles": first.cocycles, "coboundaries": first.coboundaries, "order": first.order},
            )
        )
    return out


# ---------------------------------------------------------------------------
# measure


def haar_measure(rng: random.Random, cells: int = FULL["cells"]) -> list[Verdict]:
    out = []
    fails, checked = [], 0
    for p in (2, 3, 5):
        for j in range(-3, 6):
            checked += 1
            ball = Cell(p, [(0, j)])
            mu = ball.measure()
            # independent routes: residue counting for j >= 0, splitting into Z_p translates for j < 0
            if j >= 0:
                count = Fraction(p ** (6 - j), p**6)
                route = Fraction(sum(1 for x in range(p**6) if x % p**j == 0), p**6)
            else:
                route = Fraction(len(cell_decompose(ball, 0)))
                count = Fraction(p) ** -j
            if not mu == route == count == Fraction(p) ** -j:
                fails.append((p, j, mu))
    out.append(_verdict("mu(p^j Z_p) = p^-j for j in [-3, 5]", fails, checked))

    fails, checked = [], 0
    setups = [(2, 1, 3), (3, 1, 2), (2, 2, 3), (3, 2, 2)]
    for i in range(cells):
        p, N, k = setups[i % len(setups)]
        coords = []
        for _ in range(N + 1):
            j = rng.randint(0, k)
            coords.append((rng.randrange(p**k), j))
        E = Cell(p, coords)
        checked += 1
        counted = Fraction(cell_residue_count(E, k), p ** (k * (N + 1)))
        if counted != E.measure():
            fails.append(E)
    out.append(_verdict("counting measure on (Z/p^k)^(N+1) equals cell measure", fails, checked))

    G = HeisGroup(random_form(rng, Ring.modular(9), 2))
    fails, checked = [], 0
    shapes = [(1, 1, 1), (1, 0, 2), (2, 1, 0), (0, 0, 1)]
    subsets = []
    for shape in shapes:
        center = [rng.randrange(9) for _ in range(3)]
        subsets.append(
            {
                G.point(z, t)
                for z in itertools.product(range(9), repeat=2)
                for t in range(9)
                if all((x - c) % 3**j == 0 for x, c, j in zip((*z, t), center, shape))
            }
        )
    subsets.append(set(rng.sample(G.elements(), 40)))
    for g in G.elements():
        for S in subsets:
            checked += 1
            if len({G.mul(g, a) for a in S}) != len(S) or len({G.mul(a, g) for a in S}) != len(S):
                fails.append((g, len(S)))
    out.append(_verdict("left and right translations preserve counts on H over Z/9, N=2", fails, checked))
    return out


def dilation_scaling(rng: random.Random, cells: int = FULL["cells"], p: int = 3) -> list[Verdict]:
    fails, checked = [], 0
    for N in (1, 2, 4):
        for r in (Fraction(p), Fraction(p * p), Fraction(1, p)):
            absr = Fraction(p) ** -(1 if r == p else 2 if r == p * p else -1)
            for _ in range(cells):
                E = random_cell(p, N + 1, rng)
                res = dilate_measure(E, r, "parabolic")
                checked += 1
                if not res.formula == res.image_measure == absr ** (N + 2) * E.measure():
                    fails.append((N, r, E))
    return [_verdict("mu(delta_r E) = |r|^(N+2) mu(E)", fails, checked)]


# ---------------------------------------------------------------------------
# metrics


def _integral_form(rng, R, N):
    return BilinearForm([[rng.randrange(R.prime**3) for _ in range(N)] for _ in range(N)], R)


def metric_suite(rng: random.Random, samples: int = FULL["metric"], p: int = 3) -> list[Verdict]:
    R = Ring.padic(p, 30)
    G = HeisGroup(_integral_form(rng, R, 2))
    names = ["strong triangle", "gauge subadditive", "gauge inverse-symmetric",
             "left-invariant", "dilation scaling", "integral metric right-invariant",
             "sequence metric strong triangle"]
    fails = {n: [] for n in names}

    def pt():
        return G.random_point(rng)

    for _ in range(samples):
        a, b, c = pt(), pt(), pt()
        d_ac, d_ab, d_bc = (left_invariant_distance(G, x, y) for x, y in ((a, c), (a, b), (b, c)))
        if d_ac > max(d_ab, d_bc):
            fails["strong triangle"].append((a, b, c))
        if gauge(G, G.mul(a, b)) > max(gauge(G, a), gauge(G, b)):
            fails["gauge subadditive"].append((a, b))
        if gauge(G, G.inv(a)) != gauge(G, a):
            fails["gauge inverse-symmetric"].append(a)
        if left_invariant_distance(G, G.mul(c, a), G.mul(c, b)) != d_ab:
            fails["left-invariant"].append((a, b, c))
        r = rng.choice([Fraction(p), Fraction(p * p), Fraction(1, p), Fraction(p * 2), Fraction(1)])
        rr = R(r)
        absr = AbsValue(p, rr.value.valuation)
        if (
            left_invariant_distance(G, G.dilate(rr, a), G.dilate(rr, b)) != d_ab.scale(absr)
            or gauge(G, G.dilate(rr, a)) != gauge(G, a).scale(absr)
        ):
            fails["dilation scaling"].append((r, a, b))

    Ri = Ring.padic(5, 30, integral=True)
    H = HeisGroup(_integral_form(rng, Ri, 2))
    for _ in range(samples):
        a, b, c = H.random_point(rng), H.random_point(rng), H.random_point(rng)
        d = integral_bi_invariant_distance(H, a, b)
        if (
            integral_bi_invariant_distance(H, H.mul(a, c), H.mul(b, c)) != d
            or integral_bi_invariant_distance(H, H.mul(c, a), H.mul(c, b)) != d
        ):
            fails["integral metric right-invariant"].append((a, b, c))

    rho = Fraction(1, 2)
    for _ in range(samples):
        base = [rng.randrange(3) for _ in range(8)]
        seqs = []
        for _ in range(3):
            cut = rng.randint(0, 8)
            seqs.append(SeqPoint(3, tuple(base[:cut] + [rng.randrange(3) for _ in range(8 - cut)]), (rng.randrange(3),)))
        x, y, z = seqs
        if seq_distance(x, z, rho) > max(seq_distance(x, y, rho), seq_distance(y, z, rho)):
            fails["sequence metric strong triangle"].append((x, y, z))
    return [_verdict(n, fails[n], samples) for n in names]


# ---------------------------------------------------------------------------
# calculus


def _random_poly(rng, R: Ring, nvars: int, deg: int, names, active: int, terms: int = 8) -> MultiSeries:
    coeffs = {}
    for _ in range(terms):
        d = rng.randint(0, deg)
        alpha = [0] * nvars
        for _ in range(d):
            alpha[rng.randrange(active)] += 1
        coeffs[tuple(alpha)] = R.random(rng)
    return MultiSeries(R, nvars, coeffs, names=names)


def _small(R: Ring, rng: random.Random):
    if R.kind == "rationals":
        return R(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
    return R.random(rng)


def calculus_identities(rng: random.Random, trials: int = FULL["calculus_trials"]) -> list[Verdict]:
    checks = ["D_l L = L D_l", "D_l delta_r* = r delta_r* D_l", "L composition", "delta-homogeneity"]
    fails = {c: [] for c in checks}
    checked = 0
    for R in (Ring.rationals(), Ring.modular(7)):
        for N in (1, 2):
            names = ([f"z{i + 1}" for i in range(N)] + ["t"] + [f"w{i + 1}" for i in range(N)] + ["s"]
                     + [f"v{i + 1}" for i in range(N)] + ["u", "r"])
            n = len(names)
            V = variables(R, names)
            w, s = V[N + 1 : 2 * N + 1], V[2 * N + 1]
            v, u = V[2 * N + 2 : 3 * N + 2], V[3 * N + 2]
            r = V[-1]
            for _ in range(trials):
                b = [[_small(R, rng) for _ in range(N)] for _ in range(N)]
                f = _random_poly(rng, R, n, 4, names, N + 1)
                checked += 1
                Lf = left_translate(b, f, (w, s))
                for l in range(N):
                    if invariant_derivative(b, Lf, l).mismatches(left_translate(b, invariant_derivative(b, f, l), (w, s))):
                        fails[checks[0]].append((N, str(R), l))
                    lhs = invariant_derivative(b, dilation_pullback(f, r, N), l)
                    rhs = r * dilation_pullback(invariant_derivative(b, f, l), r, N)
                    if lhs.mismatches(rhs):
                        fails[checks[1]].append((N, str(R), l))
                # L_(v,u) L_(w,s) = L_((v,u)(w,s))
                prod_w, prod_s = heis_mul_series(b, (v, u), (w, s))
                if left_translate(b, Lf, (v, u)).mismatches(left_translate(b, f, (prod_w, prod_s))):
                    fails[checks[2]].append((N, str(R)))
                # homogeneous part of degree d
                d = rng.randint(0, 4)
                hom = MultiSeries(
                    R, n, {a: c for a, c in f.coeffs.items() if delta_degree(a[: N + 1]) == d}, names=names
                )
                hom = hom + _homogeneous(rng, R, n, N, d, names)
                ok = is_delta_homogeneous(hom, d, N).passed
                if not ok or dilation_pullback(hom, r, N).mismatches(hom * r**d if d else hom):
                    fails[checks[3]].append((N, str(R), d))
    return [_verdict(c, fails[c], checked) for c in checks]


def _homogeneous(rng, R, n, N, d, names) -> MultiSeries:
    coeffs = {}
    for k in range(d // 2 + 1):
        rest = d - 2 * k
        for _ in range(2):
            alpha = [0] * n
            alpha[N] = k
            for _ in range(rest):
                alpha[rng.randrange(N)] += 1
            coeffs[tuple(alpha)] = R.random(rng)
    return MultiSeries(R, n, coeffs, names=names)


def horizontal_ode(rng: random.Random, trials: int = FULL["ode_trials"], order: int = 12) -> list[Verdict]:
    names = ("x",)
    fails = {"ode": [], "chain rule": [], "translated": []}
    checked = 0
    rings = [Ring.rationals(), Ring.padic(13, 24), Ring.padic(17, 24, integral=True)]
    for R in rings:
        for N in (1, 2):
            for _ in range(trials):
                b = [[_small(R, rng) for _ in range(N)] for _ in range(N)]
                phis = [
                    MultiSeries(R, 1, {(e,): _small(R, rng) for e in range(rng.randint(1, order))}, order, names)
                    for _ in range(N)
                ]
                t0 = _small(R, rng)
                curve = horizontal_ode_solve(b, phis, t0, order)
                checked += 1
                if not curve.satisfies_ode().passed:
                    fails["ode"].append((str(R), N))
                fnames = [f"z{i + 1}" for i in range(N)] + ["t"]
                f = _random_poly(rng, R, N + 1, 3, fnames, N + 1, terms=5)
                if not curve.chain_rule_check(f).passed:
                    fails["chain rule"].append((str(R), N, str(f)))
                moved = curve.translate([_small(R, rng) for _ in range(N)], _small(R, rng))
                if not moved.satisfies_ode().passed:
                    fails["translated"].append((str(R), N))
    return [_verdict(f"horizontal ODE: {k}", v, checked) for k, v in fails.items()]


def convergent_evaluation(rng: random.Random, pairs: int = FULL["eval_pairs"]) -> list[Verdict]:
    fails, checked = [], 0
    for p in (2, 3, 5):
        f = convergence_certify(lambda a, p=p: Fraction(p) ** a[0], [0], TailBound(1, 0), p=p)
        for m in range(1, 21):
            checked += 1
            if series_eval(f, [1], m).residue(m) != pow(1 - p, -1, p**m):
                fails.append((p, m))
    out = [_verdict("sum p^j x^j at x=1 equals (1-p)^-1 mod p^m", fails, checked)]

    fails, checked = [], 0
    for i in range(pairs):
        p = (2, 3, 5)[i % 3]
        k = rng.randint(0, 2)
        m = rng.randint(4, 12)

        def make():
            slope = rng.randint(1, 2)
            units = [rng.randrange(1, 50) for _ in range(6)]
            shift = rng.randint(0, 2)
            return convergence_certify(
                lambda a, s=slope, us=units, sh=shift: Fraction(p) ** (s * a[0] + sh - k * a[0]) * us[a[0] % 6],
                [k], TailBound(slope, shift), p=p,
            )

        f, g = make(), make()
        x = p**k * rng.randrange(1, 100)
        checked += 1
        lhs = series_eval(f * g, [x], m)
        rhs = series_eval(f, [x], m) * series_eval(g, [x], m)
        if lhs.residue(m) != rhs.with_absolute_precision(m).residue(m):
            fails.append((p, k, m, x))
    out.append(_verdict("evaluation is multiplicative mod p^m", fails, checked))
    return out


# ---------------------------------------------------------------------------


SUITES = {
    "exact": (field_laws, quotient_iso, geometric_inversion),
    "rings": (ring_axioms,),
    "heis": (group_axioms, cocycle_machinery, h2_brute_force),
    "measure": (haar_measure, dilation_scaling),
    "metric": (metric_suite,),
    "calc": (calculus_identities, horizontal_ode, convergent_evaluation),
}


def _scaled(fn, samples: int) -> dict:
    """Keyword arguments shrinking a suite to roughly ``samples`` checks."""
    knobs = {
        field_laws: {"pairs": samples},
        geometric_inversion: {"count": max(1, samples // 3)},
        ring_axioms: {"triples": samples},
        group_axioms: {"z3_triples": samples, "infinite_triples": samples},
        haar_measure: {"cells": max(4, samples // 10)},
        dilation_scaling: {"cells": max(1, samples // 10)},
        metric_suite: {"samples": samples},
        calculus_identities: {"trials": 1},
        horizontal_ode: {"trials": 1},
        convergent_evaluation: {"pairs": max(3, samples // 10)},
    }
    return knobs.get(fn, {})


def run_suites(names, seed: int, samples: int | None = None) -> list[Verdict]:
    verdicts = []
    for name in names:
        for i, fn in enumerate(SUITES[name]):
            rng = random.Random(f"{seed}:{name}:{i}")
            kwargs = _scaled(fn, samples) if samples is not None else {}
            verdicts.extend(fn(rng, **kwargs))
    return verdicts


def run_all(seed: int, samples: int | None = None) -> list[Verdict]:
    return run_suites(list(SUITES), seed, samples)
