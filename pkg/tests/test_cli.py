import json
import random
from fractions import Fraction

import pytest

from padicheis import properties
from padicheis.cli import main
from padicheis.errors import ParseError
from padicheis.exact import PadicScalar
from padicheis.heis import HeisGroup, HeisPoint
from padicheis.literals import load_cocycle, load_series, parse_cells, parse_group, parse_point, parse_poly
from padicheis.report import Report, Verdict, emit, parse
from padicheis.rings import Ring


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


# -- literals -------------------------------------------------------------------


def test_group_literals(tmp_path):
    G = parse_group("matrix:[[0,1],[-1,0]]:Z/5")
    assert G.N == 2 and G.ring == Ring.modular(5)
    assert str(parse_point("(1,2;3)", G)) == "(1,2;3)"
    with pytest.raises(ParseError):
        parse_point("(1;3)", G)
    with pytest.raises(ParseError):
        parse_group("bogus:1:Z")
    f = tmp_path / "c.txt"
    f.write_text("# constant cocycle\n" + "\n".join(f"{w}|{z}|1" for w in range(2) for z in range(2)))
    T = load_cocycle(f, Ring.modular(2))
    assert HeisGroup(T).identity() == HeisPoint((Ring.modular(2)(0),), Ring.modular(2)(1))


def test_poly_and_cells(tmp_path):
    Q = Ring.rationals()
    f = parse_poly("3*z1^2*t - z1/2 + 7", Q, ["z1", "t"])
    assert f.evaluate([Q(2), Q(1)]).value == 3 * 4 - 1 + 7
    for bad in ("z1 / t", "z1 ** -1", "foo", "z1 < 2"):
        with pytest.raises(ParseError):
            parse_poly(bad, Q, ["z1", "t"])
    E = parse_cells("ball(0,1) x ball(1/3,0) + ball(1,1) x ball(0,0)", 3)
    assert E.measure() == Fraction(2, 3)
    s = tmp_path / "s.txt"
    s.write_text("0 : 1\n1 : 3\n2 : 9\n")
    assert load_series(s) == (1, {(0,): 1, (1,): 3, (2,): 9})


# -- report -----------------------------------------------------------------------


def test_report_roundtrip():
    r = Report(["x"], [Verdict("a", True), Verdict("b", False, ["1", "2", "3"], 4)], {"measure": Fraction(1, 9)}, 7, 0.5)
    d = json.loads(emit(r, "json"))
    assert d["schema"] == 1 and d["values"] == {"measure": "1/9"}
    assert d["verdicts"][1]["witness"] == ["1", "2", "3"]
    back = parse(emit(r, "json"))
    assert emit(back, "json") == emit(r, "json")
    assert json.loads(emit(Report(["y"]), "json"))["verdicts"] == []


# -- command line -------------------------------------------------------------------


def test_cli_examples(capsys):
    assert run(capsys, "heis", "mul", "--group", "sympl:1:Z", "(1,0;0)", "(0,1;0)")[:2] == (0, "(1,1;1)")
    assert run(capsys, "measure", "cell", "ball(0,2)", "-p", "3")[:2] == (0, "1/9")
    code, out, _ = run(capsys, "measure", "cell", "ball(0,2)", "-p", "3", "--format", "json")
    assert json.loads(out)["values"]["measure"] == "1/9"
    assert run(capsys, "padic", "add", "1", "-1", "-p", "5", "-k", "4")[:2] == (0, "p:5;O:4")
    assert run(capsys, "gauge", "(0,0;9)", "--group", "sympl:1:Z", "-p", "3")[:2] == (0, "3^(-2/2)")
    code, out, _ = run(capsys, "heis", "h2", "--ring", "Z/2", "-N", "1", "--format", "json")
    assert json.loads(out)["values"]["order"] == 2
    code, out, _ = run(capsys, "calc", "ode", "--group", "sympl:1:Q", "--phi", "x", "--phi", "x^2", "--order", "6")
    assert code == 0 and "phi3 = (1/3)*x^3" in out


def test_cli_eval(capsys, tmp_path):
    s = tmp_path / "geo.txt"
    s.write_text("\n".join(f"{j} : {3**j}" for j in range(30)))
    code, out, _ = run(capsys, "calc", "eval", "--series", str(s), "-p", "3", "--at", "1", "-m", "5",
                       "--slope", "1", "--format", "json")
    assert code == 0
    # coefficients past the file are zero, so the tail bound holds
    val = PadicScalar.parse(json.loads(out)["values"]["result"])
    assert val.residue(5) == pow(1 - 3, -1, 3**5)


def test_cli_exit_codes(capsys, tmp_path):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "heis", "mul", "--nope")[0] == 2
    assert run(capsys, "heis", "mul", "--group", "sympl:1:Z", "(1,0;0)")[0] == 2
    assert run(capsys, "measure", "cell", "ball(0,x)", "-p", "3")[0] == 2
    assert run(capsys, "check", "exact", "--samples", "0")[0] == 2
    assert run(capsys, "check", "exact", "--samples", "5", "-o", str(tmp_path / "no" / "such.json"))[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_cli_failure_exit_code(capsys, monkeypatch):
    def broken(rng, **_):
        return [Verdict("always fails", False, ("1", "2", "3"), 1)]

    monkeypatch.setitem(properties.SUITES, "exact", (broken,))
    code, out, _ = run(capsys, "check", "exact", "--format", "json")
    assert code == 1
    assert json.loads(out)["verdicts"][0]["witness"] == ["1", "2", "3"]


def test_cli_output_file_and_determinism(capsys, tmp_path):
    outs = []
    f = tmp_path / "r.json"
    for _ in range(2):
        assert run(capsys, "check", "rings", "--seed", "11", "--samples", "20", "--format", "json", "-o", str(f))[0] == 0
        d = json.loads(f.read_text())
        d.pop("timing")
        outs.append(json.dumps(d, sort_keys=True))
    assert outs[0] == outs[1]
    assert all(v["pass"] for v in json.loads(outs[0])["verdicts"])


# -- negative controls: the suites notice broken implementations ---------------------


def test_suites_catch_broken_group_law(monkeypatch):
    real = HeisGroup.mul

    def skewed(self, a, b):
        c = real(self, a, b)
        # add 1 to t whenever both z-parts are nonzero; this breaks associativity
        if any(not x.is_zero() for x in a.z) and any(not x.is_zero() for x in b.z):
            return HeisPoint(c.z, c.t + c.t.ring(1))
        return c

    monkeypatch.setattr(HeisGroup, "mul", skewed)
    vs = properties.group_axioms(random.Random(0), z3_triples=50, infinite_triples=20)
    assert not all(v.passed for v in vs)


def test_suites_catch_broken_gauge(monkeypatch):
    from padicheis import metric
    from padicheis.metric import GaugeValue

    real = metric._gauge_raw

    def doubled(p, a):
        g = real(p, a)
        # wrong: squares the gauge whenever it is below 1
        return g if g.is_zero else GaugeValue(p, min(g.half_exponent, 2 * g.half_exponent))

    monkeypatch.setattr(metric, "_gauge_raw", doubled)
    vs = properties.metric_suite(random.Random(0), samples=100)
    assert not all(v.passed for v in vs)


def test_suites_catch_broken_measure(monkeypatch):
    from padicheis import measure

    monkeypatch.setattr(measure.Cell, "measure", lambda self: Fraction(self.prime) ** -sum(j for _, j in self.coords[:-1]))
    vs = properties.haar_measure(random.Random(0), cells=10)
    assert not all(v.passed for v in vs)
