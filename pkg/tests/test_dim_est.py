import pytest

from terracini.arith import MERSENNE_61, random_primes
from terracini.dim_est import (
    check_inequalities,
    collinear_completion,
    collinear_sweep,
    jacobian_at,
    jacobian_rank,
    spread_estimate,
)
from terracini.families import collinear, generic, get_family

p = MERSENNE_61
PRIMES = random_primes(2, 77)


def test_generic_family_has_full_rank():
    rep = jacobian_rank(generic(2, 5, 7), 1, PRIMES)
    assert rep.jacobian_rank == 14 and rep.spread == 7
    assert rep.prefix_ranks == [2 * i for i in range(1, 8)]


def test_collinear_sextic_ten_points():
    spec = collinear(2, 6, 10)
    rep = jacobian_rank(spec, 2, PRIMES)
    assert rep.jacobian_rank == 18
    assert spread_estimate(spec, 2, PRIMES, report=rep) == 8


def test_cubic_plus_one():
    spec = get_family("cubic9_plus1")
    rep = jacobian_rank(spec, 3, PRIMES)
    assert rep.jacobian_rank == 19 and rep.spread == 9
    assert all(rep.terracini)


def test_prefix_ranks_are_monotone_and_bounded():
    spec = get_family("conic5_plus2_Y")
    r, prefix, _ = jacobian_at(spec, p, 4)
    assert r == spec.expected_dim
    assert all(a <= b for a, b in zip(prefix, prefix[1:]))
    assert all(b - a <= spec.n for a, b in zip([0] + prefix, prefix))


def test_collinear_sweep_quartics():
    rows = collinear_sweep(2, 4, p, 5)
    for row in rows:
        k = 2
        assert row["rank"] == k + 1 + 2 * (row["x"] - k)
        assert row["spread"] == row["x"] - k + 1
        assert row["completion"] and row["terracini"]


def test_collinear_completion():
    assert collinear_completion(2, 6, 10, p, 6)
    assert collinear_completion(3, 4, 6, p, 6)


@pytest.mark.parametrize("name", ["conic6_plus1", "four_collinear_Z", "cubic9_plus1", "cubic_lines_U"])
def test_inequalities_hold(name):
    spec = get_family(name)
    rep = jacobian_rank(spec, 8, PRIMES)
    checks = check_inequalities(rep, spec.n, spec.d, spec.x)
    assert checks and all(ok for _, ok, _ in checks), checks


def test_inequalities_detect_violation():
    spec = generic(2, 5, 12)
    rep = jacobian_rank(spec, 9, PRIMES[:1])
    failed = [name for name, ok, _ in check_inequalities(rep, 2, 5, 12) if not ok]
    assert failed  # a general configuration is not Terracini, so the bounds must fail
