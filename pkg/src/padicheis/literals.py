"""Text formats for rings, points, groups, polynomials, cells and series files."""

from __future__ import annotations

import ast
import json
import re
from fractions import Fraction
from pathlib import Path

from .calculus import MultiSeries
from .errors import ParseError
from .heis import CocycleTable, HeisGroup, HeisPoint
from .measure import Cell, CellUnion
from .rings import BilinearForm, Ring, standard_symplectic


def parse_ring(text: str) -> Ring:
    return Ring.parse(text)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc


def parse_group(literal: str) -> HeisGroup:
    """sympl:<n>:<ring>, matrix:<json rows>:<ring> or cocycle:<path>:<ring>."""
    kind, _, rest = literal.partition(":")
    try:
        if kind == "sympl":
            n, _, ring = rest.partition(":")
            return HeisGroup(standard_symplectic(int(n), Ring.parse(ring)))
        if kind == "matrix":
            end = _matching_bracket(rest)
            rows = json.loads(rest[: end + 1])
            ring = Ring.parse(rest[end + 2 :])
            return HeisGroup(BilinearForm([[_elem(ring, x) for x in row] for row in rows], ring))
        if kind == "cocycle":
            path, _, ring = rest.rpartition(":")
            return HeisGroup(load_cocycle(Path(path), Ring.parse(ring)))
    except ParseError:
        raise
    except (ValueError, TypeError, json.JSONDecodeError, OSError) as exc:
        raise ParseError(f"bad group {literal!r}: {exc}") from exc
    raise ParseError(f"bad group {literal!r}")


def _matching_bracket(s: str) -> int:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth == 0:
                return i
    raise ParseError(f"unbalanced brackets in {s!r}")


def _elem(ring: Ring, x):
    if isinstance(x, str):
        return ring.parse_elem(x)
    return ring(x)


def load_cocycle(path: Path, ring: Ring, codomain: Ring | None = None) -> CocycleTable:
    """Lines ``w|z|value`` with w, z comma-separated coordinates; # starts a comment."""
    codomain = codomain or ring
    values = {}
    N = None
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split("|")
        if len(parts) != 3:
            raise ParseError(f"{path}:{lineno}: expected w|z|value")
        w = tuple(ring(int(x)).value for x in parts[0].split(","))
        z = tuple(ring(int(x)).value for x in parts[1].split(","))
        if N is None:
            N = len(w)
        if len(w) != N or len(z) != N:
            raise ParseError(f"{path}:{lineno}: inconsistent dimension")
        values[(w, z)] = int(parts[2])
    if N is None:
        raise ParseError(f"{path}: empty cocycle table")
    return CocycleTable(ring, N, codomain, values)


def parse_point(text: str, G: HeisGroup) -> HeisPoint:
    """(z1,...,zN;t)."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")) or ";" not in s:
        raise ParseError(f"bad point literal {text!r}")
    zs, _, t = s[1:-1].rpartition(";")
    z = [G.ring.parse_elem(x) for x in zs.split(",")] if zs.strip() else []
    if len(z) != G.N:
        raise ParseError(f"point {text!r} needs {G.N} coordinates")
    return G.point(z, G.codomain.parse_elem(t))


def heis_names(N: int, symbols: bool = True) -> list[str]:
    """z1..zN, t, then (optionally) w1..wN, s, r."""
    names = [f"z{i + 1}" for i in range(N)] + ["t"]
    if symbols:
        names += [f"w{i + 1}" for i in range(N)] + ["s", "r"]
    return names


def parse_poly(text: str, ring: Ring, names: list[str]) -> MultiSeries:
    """Polynomials such as ``3*z1^2*t - z2 + 7``."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"bad polynomial {text!r}") from exc
    index = {n: i for i, n in enumerate(names)}
    n = len(names)

    def const(c) -> MultiSeries:
        return MultiSeries.constant(ring, n, ring(Fraction(c)), names)

    def walk(node) -> MultiSeries | Fraction:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in index:
                raise ParseError(f"unknown variable {node.id!r}")
            return MultiSeries.variable(ring, n, index[node.id], names)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Pow):
                if not isinstance(b, Fraction) or b.denominator != 1 or b < 0:
                    raise ParseError("exponents must be nonnegative integers")
                return a ** int(b)
            if isinstance(node.op, ast.Div):
                if not isinstance(b, Fraction) or b == 0:
                    raise ParseError("only division by nonzero constants")
                if isinstance(a, Fraction):
                    return a / b
                return a * const(1 / b)
            if not (isinstance(a, Fraction) and isinstance(b, Fraction)):
                a = const(a) if isinstance(a, Fraction) else a
                b = const(b) if isinstance(b, Fraction) else b
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
        return _bad(node)

    result = walk(tree)
    return const(result) if isinstance(result, Fraction) else result


def _bad(node):
    raise ParseError(f"unsupported syntax: {ast.dump(node)[:60]}")


_BALL = re.compile(r"ball\(\s*([^,()]+)\s*,\s*(-?\d+)\s*\)")


def parse_cell(text: str, p: int) -> Cell:
    """``ball(c,j) x ball(c,j) ...``."""
    parts = [s.strip() for s in re.split(r"\s+x\s+", text.strip())]
    coords = []
    for part in parts:
        m = _BALL.fullmatch(part)
        if not m:
            raise ParseError(f"bad ball {part!r}")
        coords.append((parse_rational(m.group(1)), int(m.group(2))))
    return Cell(p, coords)


def parse_cells(text: str, p: int) -> CellUnion:
    """Cells separated by ``+``."""
    return CellUnion(parse_cell(c, p) for c in text.split("+"))


def load_series(path: Path, ring: Ring | None = None):
    """Lines ``a_1 ... a_n : coeff``; returns (nvars, {alpha: Fraction})."""
    coeffs = {}
    n = None
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, sep, rhs = line.partition(":")
        if not sep:
            raise ParseError(f"{path}:{lineno}: expected 'alpha : coeff'")
        try:
            alpha = tuple(int(x) for x in lhs.split())
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: bad multi-index") from exc
        if n is None:
            n = len(alpha)
        if len(alpha) != n or any(a < 0 for a in alpha):
            raise ParseError(f"{path}:{lineno}: bad multi-index")
        coeffs[alpha] = parse_rational(rhs)
    if n is None:
        raise ParseError(f"{path}: no coefficients")
    return n, coeffs
