"""Acceptance criteria 1-10; each test records one PASS/FAIL line in the summary."""

import random
from math import ceil, comb

import pytest

from conftest import ACCEPTANCE_LINES
from terracini.arith import MERSENNE_61, derive_seed, roots_in_field
from terracini.errors import GenericityFailure
from terracini.fatpoints import double_point_matrix, prefix_cohomology, random_points
from terracini.linalg import kernel_basis
from terracini.polyring import HomogPoly, evaluate, gradient
from terracini.plane_curves import curve_through_nodes, general_nodal_member, singular_locus
from terracini.verify import Harness
from test_arith import _brute_roots, _random_polys
from test_plane_curves import _brute_singular, _test_curves

SEED = 20240611


@pytest.fixture(scope="module")
def rows(primes):
    harness = Harness(primes, SEED)
    return list(harness.run())


def record(k, title, ok, detail=""):
    line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'} - {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def check_rows(k, title, selected):
    assert selected, "no rows selected"
    bad = [f"{r.claim}: computed {r.computed or r.error} expected {r.expected}" for r in selected
           if r.verdict != "PASS"]
    record(k, title, not bad, f"{len(selected) - len(bad)}/{len(selected)} rows")
    assert not bad, "\n".join(bad)


def test_criterion_1_ah_oracle(rows):
    sel = [r for r in rows if r.claim.startswith("ah:")]
    assert len(sel) == 182
    check_rows(1, "AH oracle reproduction", sel)


def test_criterion_2_main_positive_cases(rows):
    sel = [r for r in rows if r.claim.startswith("finale2:") and "(9,19)" not in r.claim]
    assert len(sel) == 10
    check_rows(2, "families of dimension 2x-1", sel)


def test_criterion_3_two_components_degree_eight(rows):
    check_rows(3, "two components at (8,15)", [r for r in rows if r.claim == "d8:two_components"])


def test_criterion_4_collinear_formulas(rows):
    sel = [r for r in rows if r.claim.startswith("spread:collinear(")]
    assert {r.claim.split("(")[1].rsplit(",", 1)[0] for r in sel} == {
        f"{n},{d}" for n in (2, 3) for d in range(4, 9)}
    check_rows(4, "collinear rank and spread", sel)


def test_criterion_5_severi_dominance_switch(rows):
    sel = [r for r in rows if r.claim.startswith("severi_dphi:")]
    assert len(sel) == 4
    check_rows(5, "rank of the node map", sel)


def test_criterion_6_nodality(rows, primes):
    sel = [r for r in rows if r.claim.startswith("nodal:")]
    assert len(sel) == 4
    bad = [r.claim for r in sel if r.verdict != "PASS"]
    # every x in range, not only 5 random ones; nine general points are
    # singular only on the double cubic through them, so (6, 9) must fail
    q = primes[0]
    for d in (5, 6, 7, 8):
        for x in range(1, ceil((d + 2) * (d + 1) / 6)):
            r = random.Random(derive_seed(SEED, "nodal_all", d, x))
            A = random_points(2, x, r, q)
            if (d, x) == (6, 9):
                if not singular_locus(curve_through_nodes(A, 6)).reduced:
                    continue
                bad.append("(6,9) unexpectedly has a reduced member")
                continue
            try:
                general_nodal_member(A, d, r)
            except GenericityFailure as exc:
                bad.append(f"({d},{x}): {exc}")
    record(6, "general members are nodal", not bad, "all x checked; (6,9) is the double cubic")
    assert not bad, bad


def test_criterion_7_quadric_p5(rows):
    check_rows(7, "21 points on a quadric of P^5 are minimally Terracini",
               [r for r in rows if r.claim == "quadric_p5:minimal"])


def test_criterion_8_coplanar_p3(rows):
    check_rows(8, "coplanar configuration in P^3 has h0 = h1",
               [r for r in rows if r.claim == "coplanar_p3:h0=h1"])


def test_criterion_9_inequalities(rows):
    sel = [r for r in rows if r.claim.startswith("spread:") and not r.claim.startswith("spread:collinear(2,")
           and not r.claim.startswith("spread:collinear(3,")]
    assert len(sel) >= 10
    check_rows(9, "dimension and spread inequalities", sel)


def test_criterion_10_oracles_and_rank_identity():
    problems = []
    for q in (101, 103):
        for f in _random_polys(q, 50, q):
            if sorted(roots_in_field(f, q)) != _brute_roots(f, q):
                problems.append(f"roots mismatch at p={q}")
        for i, F in enumerate(_test_curves(q, 50, q)):
            rep = singular_locus(F, random.Random(i))
            if rep.reduced and set(rep.points) != _brute_singular(F):
                problems.append(f"singular locus mismatch at p={q}")
    rng = random.Random(SEED)
    reports = sweeps = 0
    while reports < 10_000:
        n, d = rng.randint(2, 4), rng.randint(2, 6)
        N = comb(n + d, n)
        # one incremental elimination yields a report for every prefix
        xmax = rng.randint(1, N // (n + 1) + 2)
        S = random_points(n, xmax, rng, MERSENNE_61)
        reps = prefix_cohomology(S, d)
        for rep in reps:
            reports += 1
            if rep.h0 - rep.h1 != N - (n + 1) * rep.x:
                problems.append(f"rank identity fails at {(n, d, rep.x)}")
            if rep.h0 < rep.expected_h0 or rep.h1 < rep.expected_h1:
                problems.append(f"below expected values at {(n, d, rep.x)}")
        if any(a.h0 < b.h0 or a.h1 > b.h1 for a, b in zip(reps, reps[1:])):
            problems.append(f"prefix values not monotone at {(n, d)}")
        sweeps += 1
        if sweeps % 10 == 0:
            # independent h0: the kernel, with every form checked to be singular on S
            K = kernel_basis(double_point_matrix(S, d), MERSENNE_61, N)
            coeffs = [rng.randrange(MERSENNE_61) for _ in K]
            F = HomogPoly(n, d, tuple(sum(c * v[j] for c, v in zip(coeffs, K)) % MERSENNE_61 for j in range(N)),
                          MERSENNE_61)
            singular = all(evaluate(G, pt) == 0 for G in gradient(F) for pt in S.points)
            if len(K) != reps[-1].h0 or not singular:
                problems.append(f"h0 disagrees with the kernel at {(n, d, xmax)}")
    record(10, "brute-force oracles and rank identity", not problems, f"{reports} reports")
    assert not problems, problems[:5]
