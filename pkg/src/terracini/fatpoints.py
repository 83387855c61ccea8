"""Double-point schemes: evaluation matrices, h^0/h^1, Terracini predicates.

For a configuration ``S`` of ``x`` points in P^n, ``h0`` is the dimension of
the degree-``d`` forms singular at every point of ``S`` and ``h1`` measures
how far ``2S`` is from imposing ``(n+1)x`` independent conditions.  Both come
from one matrix rank through the identity ``h0 - h1 = C(n+d, n) - (n+1)x``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from math import comb

from .arith import residue
from .errors import PointsNotDistinct, PreconditionError
from .linalg import incremental_ranks, rank
from .polyring import gradient_rows, monomial_values, normalize_point

AH_EXCEPTIONS = frozenset({(2, 4, 5), (3, 4, 9), (4, 3, 7), (4, 4, 14)})
RHO_EXCEPTIONS = frozenset({(2, 4), (3, 4), (4, 3), (4, 4)})


@dataclass(frozen=True)
class PointConfiguration:
    """An ordered list of distinct points of P^n over F_p (or its dual numbers)."""

    n: int
    points: tuple
    p: int

    def __post_init__(self):
        pts = tuple(normalize_point(pt, self.p) for pt in self.points)
        if any(len(pt) != self.n + 1 for pt in pts):
            raise ValueError(f"points must have {self.n + 1} coordinates")
        if len(pts) < 1:
            raise ValueError("a configuration needs at least one point")
        if len({tuple(residue(c) for c in pt) for pt in pts}) != len(pts):
            raise PointsNotDistinct()
        object.__setattr__(self, "points", pts)

    @property
    def x(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def residue(self) -> "PointConfiguration":
        return PointConfiguration(self.n, tuple(tuple(residue(c) for c in pt) for pt in self.points), self.p)

    def prefix(self, y: int) -> "PointConfiguration":
        return PointConfiguration(self.n, self.points[:y], self.p)

    def without(self, i: int) -> "PointConfiguration":
        return PointConfiguration(self.n, self.points[:i] + self.points[i + 1:], self.p)

    def add(self, point) -> "PointConfiguration":
        return PointConfiguration(self.n, self.points + (tuple(point),), self.p)

    def to_json(self, witness: dict | None = None) -> dict:
        obj = {
            "n": self.n,
            "prime": str(self.p),
            "points": [[str(residue(c)) for c in pt] for pt in self.points],
        }
        if witness is not None:
            obj["witness"] = witness
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "PointConfiguration":
        p = int(obj["prime"])
        n = int(obj["n"])
        points = tuple(tuple(int(c) % p for c in pt) for pt in obj["points"])
        return cls(n, points, p)

    @classmethod
    def loads(cls, text: str) -> "PointConfiguration":
        return cls.from_json(json.loads(text))


def random_points(n: int, x: int, rng, p: int) -> PointConfiguration:
    """``x`` distinct points drawn uniformly from P^n(F_p)."""
    seen: dict = {}
    while len(seen) < x:
        v = [rng.randrange(p) for _ in range(n + 1)]
        if any(v):
            pt = normalize_point(v, p)
            seen.setdefault(pt, None)
    return PointConfiguration(n, tuple(seen), p)


@dataclass(frozen=True)
class CohomologyReport:
    n: int
    d: int
    x: int
    h0: int
    h1: int
    rank: int
    ambient_dim_spanned: int
    expected_h0: int
    expected_h1: int
    spans: bool
    is_terracini: bool

    @property
    def defective(self) -> bool:
        return self.h0 != self.expected_h0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["defective"] = self.defective
        return out


def double_point_matrix(S: PointConfiguration, d: int) -> list[list]:
    """``(n+1)x`` rows by ``C(n+d, n)`` columns; row ``(i, j)`` is ``d/dx_j`` of
    each monomial at ``p_i``.  Vanishing of the form itself follows by Euler."""
    if d < 1:
        raise PreconditionError("need d >= 1")
    rows = []
    for pt in S.points:
        rows.extend(gradient_rows(pt, d, S.p))
    return rows


def evaluation_matrix(S: PointConfiguration, k: int) -> list[list]:
    """Simple-point conditions: one row of degree-``k`` monomial values per point."""
    return [monomial_values(pt, k, S.p) for pt in S.points]


def h0_simple(S: PointConfiguration, k: int) -> int:
    """Dimension of the degree-``k`` forms vanishing on ``S``."""
    S = S.residue()
    ncols = comb(S.n + k, S.n)
    return ncols - rank(evaluation_matrix(S, k), S.p, ncols)


def span_rank(S: PointConfiguration) -> int:
    return rank([list(residue(c) for c in pt) for pt in S.points], S.p)


def spans(S: PointConfiguration) -> bool:
    """True iff the points span P^n."""
    return S.x > S.n and span_rank(S) == S.n + 1


def expected_h0(n: int, d: int, x: int) -> int:
    return max(comb(n + d, n) - (n + 1) * x, 0)


def expected_h1(n: int, d: int, x: int) -> int:
    return max((n + 1) * x - comb(n + d, n), 0)


def ah_defective(n: int, d: int, x: int) -> bool:
    """Whether ``x`` general double points fail to have the expected h^0 in degree ``d``."""
    if n < 1 or d < 2 or x < 1:
        raise PreconditionError("need n >= 1, d >= 2, x >= 1")
    return (d == 2 and 2 <= x <= n) or (n, d, x) in AH_EXCEPTIONS


# (h0, h1) at the sporadic defective cases: one form more than expected
_SPORADIC_H = {(2, 4, 5): (1, 1), (3, 4, 9): (1, 2), (4, 3, 7): (1, 1), (4, 4, 14): (1, 1)}


def ah_expected_h(n: int, d: int, x: int) -> tuple[int, int]:
    """(h0, h1) for ``x`` general double points in degree ``d`` on P^n."""
    if ah_defective(n, d, x):
        if d == 2:
            # quadrics singular along the span of the points: a cone over P^(n-x)
            h0 = comb(n - x + 2, 2)
        else:
            return _SPORADIC_H[(n, d, x)]
        return h0, h0 - comb(n + 2, 2) + (n + 1) * x
    return expected_h0(n, d, x), expected_h1(n, d, x)


def sigma(n: int, d: int) -> int:
    return comb(n + d, n) // (n + 1)


def rho(n: int, d: int) -> int:
    if n < 2 or d < 3:
        raise PreconditionError("rho is defined for n >= 2, d >= 3")
    r = -(-comb(n + d, n) // (n + 1))
    return r + 1 if (n, d) in RHO_EXCEPTIONS else r


def nonempty_threshold(n: int, d: int) -> int:
    """Smallest ``x`` for which the Terracini locus is nonempty (d >= 3, (n, d) != (2, 3))."""
    return n + (d + 1) // 2


def _report(S: PointConfiguration, d: int, r: int, span_r: int) -> CohomologyReport:
    n, x = S.n, S.x
    N = comb(n + d, n)
    h0 = N - r
    h1 = (n + 1) * x - r
    sp = span_r == n + 1
    return CohomologyReport(
        n=n, d=d, x=x, h0=h0, h1=h1, rank=r,
        ambient_dim_spanned=span_r - 1,
        expected_h0=expected_h0(n, d, x),
        expected_h1=expected_h1(n, d, x),
        spans=sp,
        is_terracini=sp and h0 > 0 and h1 > 0,
    )


def cohomology(S: PointConfiguration, d: int) -> CohomologyReport:
    S = S.residue()
    N = comb(S.n + d, S.n)
    r = rank(double_point_matrix(S, d), S.p, N)
    return _report(S, d, r, span_rank(S))


def prefix_cohomology(S: PointConfiguration, d: int) -> list[CohomologyReport]:
    """Reports for every prefix ``S[:1], S[:2], ...`` from one incremental elimination."""
    S = S.residue()
    N = comb(S.n + d, S.n)
    ranks = incremental_ranks(double_point_matrix(S, d), S.p, block=S.n + 1, ncols=N)
    coords = [list(pt) for pt in S.points]
    span_ranks = incremental_ranks(coords, S.p, block=1, ncols=S.n + 1)
    return [_report(S.prefix(i + 1), d, r, sr) for i, (r, sr) in enumerate(zip(ranks, span_ranks))]


def is_terracini(S: PointConfiguration, d: int) -> tuple[bool, CohomologyReport]:
    rep = cohomology(S, d)
    return rep.is_terracini, rep


def is_minimally_terracini(S: PointConfiguration, d: int) -> bool:
    """Terracini, and every subset of size ``x - 1`` has ``h1 = 0``."""
    ok, _ = is_terracini(S, d)
    if not ok:
        raise PreconditionError("configuration is not Terracini")
    return all(cohomology(S.without(i), d).h1 == 0 for i in range(S.x))
