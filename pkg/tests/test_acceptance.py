"""Acceptance criteria at full size.

Each criterion prints one PASS/FAIL line.  Run directly with
``python tests/test_acceptance.py`` or through pytest.
"""

import random
import sys
import time

import pytest

from padicheis import properties as P

SEED = 20240917

CRITERIA = [
    (1, "p-adic field laws, 10^4 pairs per p in {2,3,5,7}", P.field_laws),
    (2, "Z_p -> Z/p^j surjective ring homomorphism, p in {2,3,5}, j in {1,2,3}", P.quotient_iso),
    (3, "geometric-series inversion mod p^k", P.geometric_inversion),
    (4, "group axioms over Z/2, Z/3, Z, Q, Q_p", P.group_axioms),
    (5, "cocycle machinery over Z/2, Z/3", P.cocycle_machinery),
    (6, "H^2 brute force over Z/2", P.h2_brute_force),
    (7, "Haar measure: balls, counting, translation counts", P.haar_measure),
    (8, "dilation scaling |r|^(N+2)", P.dilation_scaling),
    (9, "metric suite", P.metric_suite),
    (10, "calculus identities over Q and Z/7", P.calculus_identities),
    (11, "horizontal ODE, chain rule, translated solutions", P.horizontal_ode),
    (12, "convergent evaluation", P.convergent_evaluation),
]

BUDGET_SECONDS = 300
_elapsed = {}


def run_criterion(number, fn):
    start = time.perf_counter()
    verdicts = fn(random.Random(f"{SEED}:{number}"))
    _elapsed[number] = time.perf_counter() - start
    return verdicts


def line(number, title, verdicts):
    ok = bool(verdicts) and all(v.passed for v in verdicts)
    checked = sum(v.checked for v in verdicts)
    head = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({checked} checks, {_elapsed[number]:.1f}s)"
    bad = [f"    FAIL {v.name} witness={v.witness}" for v in verdicts if not v.passed]
    return ok, "\n".join([head, *bad])


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, capsys):
    verdicts = run_criterion(number, fn)
    ok, text = line(number, title, verdicts)
    with capsys.disabled():
        print("\n" + text)
    assert ok, text


def test_time_budget(capsys):
    if len(_elapsed) < len(CRITERIA):
        pytest.skip("needs the full criterion run")
    total = sum(_elapsed.values())
    ok = total < BUDGET_SECONDS
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} time budget: {total:.1f}s of {BUDGET_SECONDS}s")
    assert ok


def main() -> int:
    failed = 0
    for number, title, fn in CRITERIA:
        ok, text = line(number, title, run_criterion(number, fn))
        print(text, flush=True)
        failed += not ok
    total = sum(_elapsed.values())
    print(f"{'PASS' if total < BUDGET_SECONDS else 'FAIL'} time budget: {total:.1f}s of {BUDGET_SECONDS}s")
    return 1 if failed or total >= BUDGET_SECONDS else 0


if __name__ == "__main__":
    sys.exit(main())
