"""Command-line front end.

Exit codes: 0 on success, 1 when a checked property fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import properties
from .calculus import (
    MultiSeries,
    TailBound,
    convergence_certify,
    delta_degree,
    dilation_pullback,
    horizontal_ode_solve,
    invariant_derivative,
    is_delta_homogeneous,
    left_translate,
    series_eval,
    variables,
)
from .errors import PadicHeisError
from .exact import (
    PadicScalar,
    check_prime,
    padic_from_rational,
    padic_inv,
    residue_iso_check,
)
from .heis import HeisGroup, cocycle_verify, h2_enumerate
from .literals import (
    heis_names,
    load_series,
    parse_cells,
    parse_group,
    parse_point,
    parse_poly,
    parse_rational,
)
from .measure import cell_decompose, dilate_measure, finite_quotient_count, shear_invariance_check
from .metric import (
    SeqPoint,
    gauge,
    integral_bi_invariant_distance,
    left_invariant_distance,
    seq_distance,
)
from .report import Report, Verdict, emit
from .rings import Ring, standard_symplectic

DEFAULT_SEED = 20240917
DEFAULT_SAMPLES = 200


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _common(sub: bool) -> argparse.ArgumentParser:
    # subcommand copies use SUPPRESS so flags may appear on either side of the subcommand
    d = argparse.SUPPRESS if sub else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "text"), default=d if sub else "text")
    p.add_argument("--seed", type=int, default=d if sub else DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=d if sub else DEFAULT_SAMPLES)
    p.add_argument("--output", "-o", default=d)
    return p


def _padic(text: str, p: int | None, k: int) -> PadicScalar:
    if text.strip().startswith("p:"):
        return PadicScalar.parse(text)
    if p is None:
        raise UsageError("rational operands need -p")
    x = parse_rational(text)
    return PadicScalar.zero(check_prime(p)) if x == 0 else padic_from_rational(x, p, k)


HELP = {
    "padic": "p-adic scalar arithmetic",
    "heis": "Heisenberg-type group operations",
    "gauge": "homogeneous gauge ||(z,t)||",
    "dist": "distances",
    "measure": "Haar measure of cells",
    "calc": "formal calculus",
    "check": "run property suites",
}


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    # two stages so positionals may follow options (argparse subparsers cannot intermix)
    epilog = "commands:\n" + "\n".join(f"  {k:<8} {v}" for k, v in HELP.items())
    parser = _Parser(prog="padicheis", description=__doc__, epilog=epilog, parents=[_common(False)],
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("command", choices=tuple(HELP))
    parser.add_argument("rest", nargs=argparse.REMAINDER, help="command arguments (see padicheis <command> -h)")
    common = _common(True)
    subs = {}

    def add(name, help_):
        subs[name] = _Parser(prog=f"padicheis {name}", description=help_, parents=[common])
        return subs[name]

    pa = add("padic", "p-adic scalar arithmetic")
    pa.add_argument("op", choices=("from", "abs", "add", "sub", "mul", "inv", "residue", "iso-check"))
    pa.add_argument("operands", nargs="*", help="rationals or p:<p>;v:..;d:[..];k:.. literals")
    pa.add_argument("-p", type=int)
    pa.add_argument("-k", type=int, default=32, help="relative precision for rational operands")
    pa.add_argument("-j", type=int, help="residue exponent")

    he = add("heis", "Heisenberg-type group operations")
    he.add_argument("op", choices=("mul", "inv", "conj", "commutator", "dilate", "identity", "cocycle-verify", "h2"))
    he.add_argument("points", nargs="*")
    he.add_argument("--group", help="sympl:<n>:<ring> | matrix:<rows>:<ring> | cocycle:<file>:<ring>")
    he.add_argument("-r", help="dilation factor")
    he.add_argument("--ring", default="Z/2", help="A for h2")
    he.add_argument("--codomain", default=None, help="A' for h2 (defaults to A)")
    he.add_argument("-N", type=int, default=1)

    ga = add("gauge", "homogeneous gauge ||(z,t)||")
    ga.add_argument("point")
    ga.add_argument("--group", required=True)
    ga.add_argument("-p", type=int)

    di = add("dist", "distances")
    di.add_argument("a")
    di.add_argument("b")
    di.add_argument("--metric", choices=("gauge", "integral", "seq"), default="gauge")
    di.add_argument("--group")
    di.add_argument("-p", type=int)
    di.add_argument("--rho", default="1/2")
    di.add_argument("--alphabet", type=int, default=2)

    me = add("measure", "Haar measure of cells")
    me.add_argument("op", choices=("cell", "decompose", "dilate", "shear", "count"))
    me.add_argument("cells", nargs="?", help="ball(c,j) x ball(c,j) ... (cells joined by +)")
    me.add_argument("-p", type=int)
    me.add_argument("-j", type=int, help="refinement exponent")
    me.add_argument("-r", help="dilation factor")
    me.add_argument("--mode", choices=("scalar", "parabolic"), default="scalar")
    me.add_argument("--phi", help="shear polynomial in x2..xn")
    me.add_argument("--ring", help="Z/<p^k> for count")
    me.add_argument("-n", type=int, default=1, help="count in the symplectic group with N = 2n")
    me.add_argument("--set", default="all", help="all | dilate-image | cell:<cells>")

    ca = add("calc", "formal calculus")
    ca.add_argument("op", choices=("diff", "D", "translate", "dilate", "degree", "ode", "eval"))
    ca.add_argument("poly", nargs="?")
    ca.add_argument("--group", help="group whose form is used (ring Q if omitted)")
    ca.add_argument("--ring", default="Q")
    ca.add_argument("-N", type=int, default=1)
    ca.add_argument("--var", help="variable for diff")
    ca.add_argument("-l", type=int, default=1, help="index for D_l (1-based)")
    ca.add_argument("--point", help="(w1,..,wN;s) for translate")
    ca.add_argument("-r", help="dilation factor (symbolic r if omitted)")
    ca.add_argument("--phi", action="append", default=[], help="curve component in x (repeatable)")
    ca.add_argument("--t0", default="0")
    ca.add_argument("--order", type=int, default=12)
    ca.add_argument("--series", help="series file: lines 'a1 .. an : coeff'")
    ca.add_argument("-p", type=int)
    ca.add_argument("-k", default="0", help="radius exponents, comma separated")
    ca.add_argument("--at", help="evaluation point, comma separated rationals")
    ca.add_argument("-m", type=int, default=10)
    ca.add_argument("--slope", default=None)
    ca.add_argument("--intercept", default="0")

    ch = add("check", "run property suites")
    ch.add_argument("suite", choices=("all", *properties.SUITES))
    return parser, subs


# ---------------------------------------------------------------------------


def cmd_padic(args, rep: Report) -> None:
    ops = [_padic(x, args.p, args.k) for x in args.operands]

    def need(n):
        if len(ops) != n:
            raise UsageError(f"padic {args.op} takes {n} operand(s)")

    if args.op == "iso-check":
        if args.p is None or args.j is None:
            raise UsageError("iso-check needs -p and -j")
        import random

        r = residue_iso_check(args.p, args.j, args.samples, random.Random(args.seed))
        rep.verdicts.append(Verdict("residue isomorphism", r.passed, r.failures[0] if r.failures else None,
                                    r.samples, {"classes": r.classes_hit}))
        rep.values["classes"] = r.classes_hit
        return
    if args.op == "from":
        need(1)
        rep.values["result"] = ops[0].to_text()
    elif args.op == "abs":
        need(1)
        rep.values["result"] = str(ops[0].abs())
    elif args.op in ("add", "sub", "mul"):
        need(2)
        a, b = ops
        r = a + b if args.op == "add" else a - b if args.op == "sub" else a * b
        rep.values["result"] = r.to_text()
    elif args.op == "inv":
        need(1)
        rep.values["result"] = padic_inv(ops[0]).to_text()
    elif args.op == "residue":
        need(1)
        if args.j is None:
            raise UsageError("residue needs -j")
        rep.values["result"] = ops[0].residue(args.j)


def _group(args) -> HeisGroup:
    if not args.group:
        raise UsageError("--group is required")
    return parse_group(args.group)


def cmd_heis(args, rep: Report) -> None:
    if args.op == "h2":
        A = Ring.parse(args.ring)
        A2 = Ring.parse(args.codomain) if args.codomain else A
        r = h2_enumerate(A, args.N, A2)
        rep.values.update(cocycles=r.cocycles, coboundaries=r.coboundaries, order=r.order)
        rep.display = f"|Z^2| = {r.cocycles}, |B^2| = {r.coboundaries}, |H^2| = {r.order}"
        return
    G = _group(args)
    pts = [parse_point(x, G) for x in args.points]
    if args.op == "cocycle-verify":
        if G.kind != "cocycle":
            raise UsageError("cocycle-verify needs a cocycle:<file>:<ring> group")
        v = cocycle_verify(G.law)
        rep.verdicts.append(v)
        return
    arity = {"mul": 2, "conj": 2, "commutator": 2, "inv": 1, "dilate": 1, "identity": 0}[args.op]
    if len(pts) != arity:
        raise UsageError(f"heis {args.op} takes {arity} point(s)")
    if args.op == "mul":
        r = G.mul(*pts)
    elif args.op == "inv":
        r = G.inv(*pts)
    elif args.op == "conj":
        r = G.conj(*pts) if G.kind == "bilinear" else G.conj_by_law(*pts)
    elif args.op == "commutator":
        r = G.commutator(*pts)
    elif args.op == "identity":
        r = G.identity()
    else:
        if args.r is None:
            raise UsageError("dilate needs -r")
        r = G.dilate(G.ring.parse_elem(args.r), pts[0])
    rep.values["result"] = str(r)


def cmd_gauge(args, rep: Report) -> None:
    G = _group(args)
    rep.values["result"] = str(gauge(G, parse_point(args.point, G), args.p))


def _seq(text: str, alphabet: int) -> SeqPoint:
    head, _, tail = text.partition("|")
    pre = tuple(int(x) for x in head.split(",") if x.strip())
    tl = tuple(int(x) for x in tail.split(",") if x.strip()) if tail else None
    return SeqPoint(alphabet, pre, tl)


def cmd_dist(args, rep: Report) -> None:
    if args.metric == "seq":
        d = seq_distance(_seq(args.a, args.alphabet), _seq(args.b, args.alphabet), parse_rational(args.rho))
        rep.values["result"] = d
        return
    G = _group(args)
    a, b = parse_point(args.a, G), parse_point(args.b, G)
    if args.metric == "gauge":
        rep.values["result"] = str(left_invariant_distance(G, a, b, args.p))
    else:
        rep.values["result"] = str(integral_bi_invariant_distance(G, a, b, args.p))


def cmd_measure(args, rep: Report) -> None:
    if args.op == "count":
        if not args.ring:
            raise UsageError("count needs --ring Z/<p^k>")
        R = Ring.parse(args.ring)
        G = HeisGroup(standard_symplectic(args.n, R))
        els = G.elements()
        if args.set == "all":
            S = set(els)
        elif args.set == "dilate-image":
            p = _prime_of_modulus(R.modulus)
            S = {G.dilate(R(p), a) for a in els}
        elif args.set.startswith("cell:"):
            E = parse_cells(args.set[5:], _prime_of_modulus(R.modulus))
            S = {a for a in els if any(c.contains_point([x.value for x in a.z] + [a.t.value]) for c in E)}
        else:
            raise UsageError(f"unknown set {args.set!r}")
        import random

        rng = random.Random(args.seed)
        trans = [G.random_point(rng) for _ in range(min(args.samples, 50))]
        r = finite_quotient_count(G, S, trans)
        rep.values.update(measure=r.measure, count=r.count)
        rep.verdicts.append(r.verdict)
        rep.display = f"count {r.count}, measure {_frac(r.measure)}"
        return
    if args.p is None or not args.cells:
        raise UsageError(f"measure {args.op} needs cells and -p")
    E = parse_cells(args.cells, args.p)
    if args.op == "cell":
        rep.values.update(measure=E.measure(), count=len(E))
        rep.display = _frac(E.measure())
    elif args.op == "decompose":
        if args.j is None or len(E) != 1:
            raise UsageError("decompose needs one cell and -j")
        parts = cell_decompose(E.cells[0], args.j)
        rep.values.update(measure=parts.measure(), count=len(parts), cells=[str(c) for c in parts])
        rep.display = "\n".join(str(c) for c in parts)
    elif args.op == "dilate":
        if args.r is None or len(E) != 1:
            raise UsageError("dilate needs one cell and -r")
        res = dilate_measure(E.cells[0], parse_rational(args.r), args.mode)
        rep.values.update(measure=res.formula, image=str(res.image), image_measure=res.image_measure, count=1)
        rep.verdicts.append(Verdict("formula matches image", res.agrees))
        rep.display = _frac(res.formula)
    else:
        if not args.phi:
            raise UsageError("shear needs --phi")
        n = E.cells[0].dim
        names = [f"x{i + 2}" for i in range(n - 1)]
        poly = parse_poly(args.phi, Ring.rationals(), names)
        v = shear_invariance_check(E, poly, args.j)
        rep.values.update(measure=v.details["measure"], count=v.details["image_cells"])
        rep.verdicts.append(v)


def _prime_of_modulus(m: int) -> int:
    for p in range(2, m + 1):
        if m % p == 0:
            while m % p == 0:
                m //= p
            if m != 1:
                raise UsageError("count needs a prime-power modulus")
            return p
    raise UsageError("modulus must exceed 1")


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_calc(args, rep: Report) -> None:
    if args.op == "eval":
        _calc_eval(args, rep)
        return
    if args.group:
        G = parse_group(args.group)
        if G.kind != "bilinear":
            raise UsageError("calculus needs a bilinear law")
        R, b, N = G.ring, G.law, G.N
    else:
        R, N = Ring.parse(args.ring), args.N
        b = None
    if args.op == "ode":
        if b is None:
            raise UsageError("ode needs --group")
        names = ["x"]
        phis = [parse_poly(s, R, names).truncate(args.order) for s in args.phi]
        curve = horizontal_ode_solve(b, phis, R.parse_elem(args.t0), args.order)
        rep.values["result"] = [str(f) for f in curve.phis]
        rep.verdicts.append(curve.satisfies_ode())
        rep.display = "\n".join(f"phi{i + 1} = {f}" for i, f in enumerate(curve.phis))
        return
    if not args.poly:
        raise UsageError(f"calc {args.op} needs a polynomial")
    names = heis_names(N)
    f = parse_poly(args.poly, R, names)
    if args.op == "diff":
        if args.var not in names:
            raise UsageError(f"--var must be one of {names}")
        r = f.derivative(names.index(args.var))
    elif args.op == "D":
        if b is None:
            raise UsageError("D needs --group")
        r = invariant_derivative(b, f, args.l - 1)
    elif args.op == "translate":
        if b is None:
            raise UsageError("translate needs --group")
        V = variables(R, names)
        if args.point:
            pt = parse_point(args.point, G)
            r = left_translate(b, f, (list(pt.z), pt.t))
        else:
            r = left_translate(b, f, (V[N + 1 : 2 * N + 1], V[2 * N + 1]))
    elif args.op == "dilate":
        rr = R.parse_elem(args.r) if args.r else variables(R, names)[-1]
        r = dilation_pullback(f, rr, N)
    else:
        degs = {delta_degree(a[: N + 1]) for a in f.coeffs}
        d = max(degs, default=0)
        v = is_delta_homogeneous(f, d, N)
        rep.values["result"] = d if v.passed else sorted(degs)
        rep.values["homogeneous"] = v.passed
        rep.display = f"delta-degree {d}" if v.passed else f"not homogeneous: degrees {sorted(degs)}"
        return
    rep.values["result"] = str(r)


def _calc_eval(args, rep: Report) -> None:
    if not (args.series and args.p and args.at):
        raise UsageError("eval needs --series, -p and --at")
    n, coeffs = load_series(Path(args.series))
    k = [int(x) for x in args.k.split(",")]
    if len(k) == 1 and n > 1:
        k = k * n
    if args.slope:
        # coefficients beyond the file are zero; the bound certifies that tail
        bound = TailBound(parse_rational(args.slope), parse_rational(args.intercept))
        f = convergence_certify(lambda a: coeffs.get(a, 0), k, bound, p=args.p)
    else:
        f = convergence_certify(MultiSeries(Ring.rationals(), n, coeffs), k, None, p=args.p)
    x = [parse_rational(s) for s in args.at.split(",")]
    rep.values["result"] = series_eval(f, x, args.m).to_text()


def cmd_check(args, rep: Report) -> None:
    names = list(properties.SUITES) if args.suite == "all" else [args.suite]
    rep.verdicts.extend(properties.run_suites(names, args.seed, args.samples))


COMMANDS = {
    "padic": cmd_padic,
    "heis": cmd_heis,
    "gauge": cmd_gauge,
    "dist": cmd_dist,
    "measure": cmd_measure,
    "calc": cmd_calc,
    "check": cmd_check,
}


def run(argv: list[str]) -> tuple[int, str, str | None]:
    """Parse argv, execute, and return (exit code, serialized report, output path)."""
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    args = subs[args.command].parse_intermixed_args(args.rest, namespace=args)
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    rep = Report(list(argv), seed=args.seed)
    start = time.perf_counter()
    COMMANDS[args.command](args, rep)
    rep.timing = time.perf_counter() - start
    text = emit(rep, args.format)
    return (0 if rep.passed else 1), text, getattr(args, "output", None)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        code, text, output = run(argv)
    except UsageError as exc:
        print(f"padicheis: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (PadicHeisError, ValueError, ArithmeticError) as exc:
        print(f"padicheis: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if output:
        try:
            Path(output).write_text(text + "\n")
        except OSError as exc:
            print(f"padicheis: error: cannot write {output}: {exc}", file=sys.stderr)
            return 2
    else:
        print(text)
    return code
