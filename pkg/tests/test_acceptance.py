"""
Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction
from itertools import product

import pytest

from hasse_witt.arith import INF, hilbert_oracle, hilbert_symbol, is_prime, squarefree_part
from hasse_witt.galois_coh import BrauerClass, SquareClass, cup, relevant_places
from hasse_witt.groupcoh import FiniteGroup, basis_pairs, coboundary, cohomology_dim, cup_basis, decompose_cocycle
from hasse_witt.groupcoh import F2Cochain, odd_order_groups
from hasse_witt.grid import default_grid, run_grid
from hasse_witt.linalg import det
from hasse_witt.multiquad import MultiQuadField
from hasse_witt.quadform import QuadraticForm, is_equivalent, local_data, standard_form, w1, w2
from hasse_witt.twists import delta2, delta2_details, regular_rep_cocycle, trace_form, twist_form
from hasse_witt.universal import HW1, HW2, check_sq_identity, cq_class, det_class

GRID_BUDGET = 600.0


def report(n, ok, detail):
    line = "criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail)
    capman = _capture_manager()
    if capman is not None:
        with capman.global_and_fixture_disabled():
            print(line, flush=True)
    else:
        print(line, flush=True)
    assert ok, line


_pytest_config = None


def _capture_manager():
    if _pytest_config is None:
        return None
    return _pytest_config.pluginmanager.getplugin("capturemanager")


@pytest.fixture(autouse=True)
def _grab_config(request):
    global _pytest_config
    _pytest_config = request.config


@pytest.fixture(scope="module")
def grid_run():
    cells = default_grid()
    start = time.perf_counter()
    results = run_grid(cells)
    return cells, results, time.perf_counter() - start


def test_criterion_01_oracle_equivalence():
    places = [INF] + [p for p in range(2, 51) if is_prime(p)]
    start = time.perf_counter()
    mismatches = []
    for a, b in product(range(-50, 51), repeat=2):
        if a == 0 or b == 0:
            continue
        for v in places:
            if hilbert_symbol(a, b, v) != hilbert_oracle(a, b, v):
                mismatches.append((a, b, v))
    elapsed = time.perf_counter() - start
    report(1, not mismatches and elapsed < 60, "mismatches=%d time=%.1fs" % (len(mismatches), elapsed))


def test_criterion_02_reciprocity():
    failures = []
    for a, b in product(range(-100, 101), repeat=2):
        if a == 0 or b == 0:
            continue
        # symbols at odd primes not dividing ab are 1; a few such places are included anyway
        places = set(relevant_places(a, b)) | {3, 5, 7}
        prod = 1
        for v in places:
            prod *= hilbert_symbol(a, b, v)
        x = cup(SquareClass.of(a), SquareClass.of(b))
        if prod != 1 or len(x.ramified) % 2:
            failures.append((a, b))
    report(2, not failures, "pairs=%d failures=%d" % (200 * 200, len(failures)))


def _random_form(rng, n):
    while True:
        a = [[Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2))) for _ in range(n)] for _ in range(n)]
        g = tuple(tuple(a[i][j] if i <= j else a[j][i] for j in range(n)) for i in range(n))
        if det(g) != 0:
            return QuadraticForm(g)


def _random_invertible(rng, n):
    while True:
        p = tuple(tuple(Fraction(rng.randint(-2, 2), rng.choice((1, 1, 2))) for _ in range(n)) for _ in range(n))
        if det(p) != 0:
            return p


def test_criterion_03_diagonalization_invariance():
    rng = random.Random(2024)
    failures = 0
    for _ in range(50):
        n = rng.randint(1, 5)
        q = _random_form(rng, n)
        ref = local_data(q, pivot="largest")
        if local_data(q, pivot="first") != ref or local_data(q, pivot="last") != ref:
            failures += 1
            continue
        a1, a2 = w1(q), w2(q)
        for _ in range(20):
            r = q.transform(_random_invertible(rng, n))
            if local_data(r) != ref or w1(r) != a1 or w2(r) != a2:
                failures += 1
    report(3, failures == 0, "forms=50 congruences=1000 failures=%d" % failures)


def test_criterion_04_two_route_delta2(grid_run):
    cells, results, elapsed = grid_run
    bad = [r.name for r in results if r.error or not r.delta2_two_route]
    ok = not bad and len(cells) >= 200 and elapsed < GRID_BUDGET
    report(4, ok, "cells=%d mismatches=%d time=%.1fs %s" % (len(cells), len(bad), elapsed, bad[:3]))


def test_criterion_05_w1_identity(grid_run):
    cells, results, _ = grid_run
    bad = [r.name for r in results if r.error or not r.w1_identity]
    report(5, not bad, "cells=%d mismatches=%d %s" % (len(cells), len(bad), bad[:3]))


def test_criterion_06_trace_form_bridge():
    ds = [d for d in range(-30, 31) if d not in (0, 1) and squarefree_part(d) == d]
    failures = []
    for d in ds:
        tf = trace_form((1, 0, -d))
        tw = twist_form(standard_form(2), regular_rep_cocycle(d))
        if not is_equivalent(tf, tw):
            failures.append(d)
    report(6, not failures, "radicands=%d failures=%s" % (len(ds), failures))


def test_criterion_07_universal_identity():
    rng = random.Random(7)
    reps = (1, -1, 2, -2, 3, -3, 5, 6, -6, 7, 10, -15, 21)
    pairs = [(SquareClass(1), BrauerClass()), (SquareClass(1), BrauerClass((2, INF))), (SquareClass(3), BrauerClass((2, 3)))]
    for _ in range(100):
        a = SquareClass(rng.choice(reps))
        b = cup(SquareClass(rng.choice(reps)), SquareClass(rng.choice(reps)))
        pairs.append((a, b))
    failures = [p for p in pairs if not check_sq_identity(*p)]
    tn = all(det_class(w1(standard_form(n))) == HW1 and cq_class(w1(standard_form(n)), w2(standard_form(n))) == HW2 for n in range(1, 9))
    report(7, not failures and tn, "pairs=%d failures=%d t_n=%s" % (len(pairs), len(failures), tn))


def test_criterion_08_corollary_bridge(grid_run):
    cells, results, _ = grid_run
    bad = [r.name for r in results if r.error or not r.bridge]
    report(8, not bad, "cells=%d mismatches=%d %s" % (len(cells), len(bad), bad[:3]))


def test_criterion_09_group_cohomology():
    problems = []
    for name, g in odd_order_groups(15):
        if cohomology_dim(g, 1) or cohomology_dim(g, 2):
            problems.append(name)
    for k in (1, 2, 3):
        if cohomology_dim(FiniteGroup.elementary_abelian(k), 2) != k * (k + 1) // 2:
            problems.append("(Z/2)^%d" % k)
    rng = random.Random(9)
    for k in (1, 2, 3):
        g = FiniteGroup.elementary_abelian(k)
        for _ in range(50):
            z = F2Cochain(g, 2)
            for i, j in basis_pairs(k):
                if rng.random() < 0.5:
                    z = z + cup_basis(k, i, j)
            f = F2Cochain(g, 1, frozenset((x,) for x in g.nonidentity() if rng.random() < 0.5))
            z = z + coboundary(f)
            if decompose_cocycle(z).resynthesize(k) != z:
                problems.append("resynthesis k=%d" % k)
    report(9, not problems, "problems=%s" % problems[:5])


def test_criterion_10_lift_independence():
    cells = default_grid()
    rng = random.Random(10)
    sample = rng.sample(cells, 30)
    failures = []
    for cell in sample:
        c = cell.cocycle()
        base = delta2(c)
        big = delta2_details(c).field
        signs = {g: rng.choice((1, -1)) for g in big.galois_group() if g}
        extra = next(r for r in (7, 11, 13, 17) if r not in big.radicands and abs(cell.d) != r)
        inflated = c.inflate(MultiQuadField((cell.d, extra)))
        if delta2(c, signs) != base or delta2(inflated) != base:
            failures.append(cell.name())
    report(10, not failures, "cells=30 failures=%d %s" % (len(failures), failures[:3]))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
