import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from terracini.arith import MERSENNE_61, Dual, eps_part, residue
from terracini.errors import CorankNotOne, InternalInconsistency
from terracini.linalg import (
    EchelonBasis,
    det,
    dual_kernel_basis,
    incremental_ranks,
    kernel_basis,
    kernel_lift,
    mat_vec,
    rank,
    rref,
)

P = 101


def brute_rank(M, p):
    """Largest nonvanishing minor, by Leibniz expansion."""
    rows, cols = len(M), len(M[0])
    for k in range(min(rows, cols), 0, -1):
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                total = 0
                for perm in itertools.permutations(range(k)):
                    sign = 1
                    for i in range(k):
                        for j in range(i + 1, k):
                            if perm[i] > perm[j]:
                                sign = -sign
                    term = sign
                    for i in range(k):
                        term *= M[rs[i]][cs[perm[i]]]
                    total += term
                if total % p:
                    return k
    return 0


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 4), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_matches_minor_oracle(M):
    # small entries make rank drops common
    assert rank(M, P) == brute_rank(M, P)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_dimension_and_vanishing(M):
    K = kernel_basis(M, P)
    assert len(K) == len(M[0]) - rank(M, P)
    for v in K:
        assert all(x == 0 for x in mat_vec(M, v, P))


def test_rank_invariant_under_row_and_column_operations():
    rng = random.Random(1)
    p = MERSENNE_61
    base = [[rng.randrange(p) for _ in range(7)] for _ in range(3)]
    combos = [[rng.randrange(3) for _ in base] for _ in range(6)]
    M = [[sum(c * r[j] for c, r in zip(cs, base)) % p for j in range(7)] for cs in combos]
    r = rank(M, p)
    assert r == 3
    g = [[rng.randrange(p) for _ in range(7)] for _ in range(7)]
    assert det(g, p) != 0
    MG = [[sum(row[k] * g[k][j] for k in range(7)) % p for j in range(7)] for row in M]
    assert rank(MG, p) == r


def test_incremental_ranks_match_prefix_ranks():
    rng = random.Random(2)
    M = [[rng.randrange(5) for _ in range(6)] for _ in range(9)]
    inc = incremental_ranks(M, P, block=1)
    assert inc == [rank(M[:i], P) for i in range(1, 10)]
    eb = EchelonBasis(6, P)
    for row in M:
        eb.add(row)
    assert eb.rank == rank(M, P)
    assert all(eb.contains(row) for row in M)


def test_rref_pivots():
    R, piv = rref([[0, 2, 4], [0, 1, 2], [1, 0, 1]], P)
    assert piv == [0, 1]
    assert R[0] == [1, 0, 1] and R[1] == [0, 1, 2]


def test_det_sign():
    assert det([[0, 1], [1, 0]], P) == P - 1
    assert det([[2, 3], [4, 6]], P) == 0


def test_kernel_lift_one_by_two():
    p = P
    v = kernel_lift([[1, Dual(0, 1, p)]], p)
    assert [residue(c) for c in v] == [0, 1]
    assert [eps_part(c) for c in v] == [p - 1, 0]


def test_kernel_lift_rejects_wrong_corank():
    with pytest.raises(CorankNotOne):
        kernel_lift([[1, 0, 0]], P)
    with pytest.raises(CorankNotOne):
        kernel_lift([[1, 0], [0, 1]], P)


def test_kernel_lift_unliftable_is_inconsistency():
    # residue has a kernel but the eps-part pushes out of the column space
    M = [[1, 0], [0, 0], [0, Dual(0, 1, P)]]
    with pytest.raises(InternalInconsistency):
        kernel_lift(M, P)


def test_dual_kernel_against_formal_parameter():
    """M(t) = M0 + t*M1 with a kernel for every t: the eps-kernel is its derivative."""
    rng = random.Random(3)
    p = MERSENNE_61
    # M(t) v(t) = 0 with v(t) = a + t*b built in by construction
    a = [rng.randrange(p) for _ in range(4)] + [1]
    b = [rng.randrange(p) for _ in range(4)] + [0]
    rows0, rows1 = [], []
    for _ in range(4):
        r0 = [rng.randrange(p) for _ in range(5)]
        r1 = [rng.randrange(p) for _ in range(5)]
        # fix the last entry so that r0.a = 0 and r1.a + r0.b = 0
        r0[4] = -sum(x * y for x, y in zip(r0[:4], a[:4])) % p
        r1[4] = (-sum(x * y for x, y in zip(r1[:4], a[:4])) - sum(x * y for x, y in zip(r0, b))) % p
        rows0.append(r0)
        rows1.append(r1)
    M = [[Dual(x, y, p) for x, y in zip(r0, r1)] for r0, r1 in zip(rows0, rows1)]
    v = kernel_lift(M, p)
    assert [residue(c) for c in v] == a
    assert [eps_part(c) for c in v] == b
    # and the product really vanishes in the dual numbers
    for row in M:
        s = sum((x * y for x, y in zip(row, v)), Dual(0, 0, p))
        assert s == 0


def test_dual_kernel_basis_plain_ints():
    K = dual_kernel_basis([[1, 1, 0]], P)
    assert K == kernel_basis([[1, 1, 0]], P)
