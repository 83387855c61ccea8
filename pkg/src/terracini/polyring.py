"""Homogeneous polynomials over F_p (or the dual numbers) in dense form.

Monomials of a fixed degree are ordered graded-lexicographically with
x0 > x1 > ... > xn; every coefficient vector and file format uses this order.
Projective points are tuples of coordinates; :func:`normalize_point` scales
them so that the last coordinate with nonzero constant part equals 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .arith import Dual, inverse, residue
from .errors import DegenerateLeadingCoefficient, PreconditionError
from .linalg import det


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the degree-``d`` monomials in ``n + 1`` variables."""
    if n < 0 or d < 0:
        raise PreconditionError("need n >= 0 and d >= 0")

    def rec(k, deg):
        if k == 0:
            return [(deg,)]
        out = []
        for e in range(deg, -1, -1):
            out.extend((e,) + rest for rest in rec(k - 1, deg - e))
        return out

    basis = tuple(rec(n, d))
    assert len(basis) == comb(n + d, n)
    return basis


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomial_basis(n, d))}


def monomial_values(point, d: int, p: int) -> list:
    """Values of all degree-``d`` monomials at ``point``, in basis order."""
    n = len(point) - 1
    powers = []
    for c in point:
        row = [1]
        for _ in range(d):
            row.append(row[-1] * c % p)
        powers.append(row)
    out = []
    for m in monomial_basis(n, d):
        v = 1
        for i, e in enumerate(m):
            if e:
                v = v * powers[i][e] % p
        out.append(v)
    return out


@lru_cache(maxsize=None)
def _partial_plan(n: int, d: int, j: int) -> tuple[tuple[int, int, int], ...]:
    """(column, index of m - e_j in degree d-1, exponent) for monomials with m_j > 0."""
    lower = monomial_index(n, d - 1)
    plan = []
    for col, m in enumerate(monomial_basis(n, d)):
        if m[j]:
            mm = list(m)
            mm[j] -= 1
            plan.append((col, lower[tuple(mm)], m[j]))
    return tuple(plan)


def gradient_rows(point, d: int, p: int) -> list[list]:
    """The ``n + 1`` rows ``(dm/dx_j (point))_m`` for ``j = 0..n``."""
    n = len(point) - 1
    ncols = comb(n + d, n)
    vals = monomial_values(point, d - 1, p)
    rows = []
    for j in range(n + 1):
        row = [0] * ncols
        for col, idx, e in _partial_plan(n, d, j):
            row[col] = e * vals[idx] % p
        rows.append(row)
    return rows


def normalize_point(coords, p: int) -> tuple:
    """Scale so the last coordinate with nonzero constant part is 1."""
    coords = tuple(c % p for c in coords)
    for c in reversed(coords):
        if residue(c) % p:
            inv = inverse(c, p)
            return tuple(x * inv % p for x in coords)
    raise ValueError("the zero vector is not a projective point")


def chart_index(point) -> int:
    """Index of the last coordinate with nonzero constant part."""
    for i in range(len(point) - 1, -1, -1):
        if residue(point[i]):
            return i
    raise ValueError("the zero vector is not a projective point")


@dataclass(frozen=True)
class HomogPoly:
    """Degree-``d`` form in ``n + 1`` variables with dense graded-lex coefficients."""

    n: int
    d: int
    coeffs: tuple
    p: int

    def __post_init__(self):
        if len(self.coeffs) != comb(self.n + self.d, self.n):
            raise ValueError(f"expected {comb(self.n + self.d, self.n)} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_dict(cls, n: int, d: int, terms: dict, p: int) -> "HomogPoly":
        idx = monomial_index(n, d)
        coeffs = [0] * len(idx)
        for m, c in terms.items():
            coeffs[idx[tuple(m)]] = (coeffs[idx[tuple(m)]] + c) % p
        return cls(n, d, tuple(coeffs), p)

    def terms(self) -> dict:
        return {m: c for m, c in zip(monomial_basis(self.n, self.d), self.coeffs) if c != 0}

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def residue(self) -> "HomogPoly":
        return HomogPoly(self.n, self.d, tuple(residue(c) for c in self.coeffs), self.p)

    def __call__(self, point):
        return evaluate(self, point)

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        return HomogPoly(self.n, self.d, tuple((a + b) % self.p for a, b in zip(self.coeffs, other.coeffs)), self.p)

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return HomogPoly(self.n, self.d, tuple((a - b) % self.p for a, b in zip(self.coeffs, other.coeffs)), self.p)

    def scale(self, c) -> "HomogPoly":
        return HomogPoly(self.n, self.d, tuple(a * c % self.p for a in self.coeffs), self.p)

    def __mul__(self, other: "HomogPoly") -> "HomogPoly":
        p = self.p
        out: dict = {}
        for m1, a in self.terms().items():
            for m2, b in other.terms().items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = (out.get(m, 0) + a * b) % p
        return HomogPoly.from_dict(self.n, self.d + other.d, out, p)

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "prime": str(self.p), "coeffs": [str(residue(c)) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict, p: int | None = None) -> "HomogPoly":
        prime = int(obj["prime"]) if p is None else p
        return cls(int(obj["n"]), int(obj["d"]), tuple(int(c) % prime for c in obj["coeffs"]), prime)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def evaluate(F: HomogPoly, point):
    """Exact value of ``F`` at a point with int or dual coordinates."""
    p = F.p
    acc = 0
    for c, v in zip(F.coeffs, monomial_values(point, F.d, p)):
        if c != 0:
            acc = (acc + c * v) % p
    return acc


def partial(F: HomogPoly, j: int) -> HomogPoly:
    """Formal derivative with respect to ``x_j``."""
    if F.d < 1:
        raise PreconditionError("cannot differentiate a constant form")
    p = F.p
    coeffs = [0] * comb(F.n + F.d - 1, F.n)
    for col, idx, e in _partial_plan(F.n, F.d, j):
        coeffs[idx] = F.coeffs[col] * e % p
    return HomogPoly(F.n, F.d - 1, tuple(coeffs), p)


def gradient(F: HomogPoly) -> list[HomogPoly]:
    return [partial(F, j) for j in range(F.n + 1)]


def linear_form(coeffs, p: int) -> HomogPoly:
    n = len(coeffs) - 1
    return HomogPoly(n, 1, tuple(c % p for c in coeffs), p)


def power_of(F: HomogPoly, k: int) -> HomogPoly:
    out = HomogPoly.from_dict(F.n, 0, {(0,) * (F.n + 1): 1}, F.p)
    for _ in range(k):
        out = out * F
    return out


def substitute_linear(F: HomogPoly, g) -> HomogPoly:
    """``F(g x)`` for an ``(n+1) x (n+1)`` matrix ``g``: x_i is replaced by sum_j g[i][j] x_j."""
    p, n = F.p, F.n
    forms = [linear_form(g[i], p) for i in range(n + 1)]
    powers = []
    for L in forms:
        row = [power_of(L, 0)]
        for _ in range(F.d):
            row.append(row[-1] * L)
        powers.append(row)
    total: dict = {}
    for m, c in F.terms().items():
        prod = powers[0][m[0]]
        for i in range(1, n + 1):
            if m[i]:
                prod = prod * powers[i][m[i]]
        for mm, a in prod.terms().items():
            total[mm] = (total.get(mm, 0) + c * a) % p
    return HomogPoly.from_dict(n, F.d, total, p)


# --------------------------------------------------------- bivariate helpers


def dehomogenize(F: HomogPoly, chart: int | None = None) -> dict[tuple[int, int], int]:
    """Affine restriction of a ternary form to ``x_chart = 1``.

    Returns ``{(i, j): c}`` meaning ``c * u**i * v**j`` where ``(u, v)`` are the
    remaining two coordinates in their original order.
    """
    if F.n != 2:
        raise PreconditionError("dehomogenize expects a ternary form")
    chart = 2 if chart is None else chart
    others = [k for k in range(3) if k != chart]
    out: dict = {}
    for m, c in F.terms().items():
        key = (m[others[0]], m[others[1]])
        out[key] = (out.get(key, 0) + c) % F.p
    return out


def biv_y_degree(f: dict) -> int:
    return max((j for (i, j), c in f.items() if c), default=-1)


def biv_total_degree(f: dict) -> int:
    return max((i + j for (i, j), c in f.items() if c), default=-1)


def biv_at_x(f: dict, x0: int, p: int) -> list[int]:
    """Coefficients in y (low to high) of ``f(x0, y)``."""
    dy = biv_y_degree(f)
    out = [0] * (dy + 1)
    for (i, j), c in f.items():
        out[j] = (out[j] + c * pow(x0, i, p)) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def sylvester_matrix(a: list[int], b: list[int]) -> list[list[int]]:
    """Sylvester matrix of two univariate polynomials (coefficients low to high)."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    ah, bh = a[::-1], b[::-1]
    for k in range(n):
        rows.append([0] * k + ah + [0] * (size - m - 1 - k))
    for k in range(m):
        rows.append([0] * k + bh + [0] * (size - n - 1 - k))
    return rows


def sylvester_resultant(f: dict, g: dict, p: int) -> list[int]:
    """``Res_y(f, g)`` as a polynomial in ``x`` (coefficients low to high).

    Both inputs must have a nonzero constant as leading coefficient in ``y``
    (arranged by a generic coordinate change); otherwise raises
    :class:`DegenerateLeadingCoefficient`.  Computed by evaluating the
    Sylvester determinant at ``deg f * deg g + 1`` points and interpolating.
    """
    from .arith import interpolate

    for h in (f, g):
        dy = biv_y_degree(h)
        if dy < 1:
            raise DegenerateLeadingCoefficient("need positive degree in y")
        lead = {i: c for (i, j), c in h.items() if j == dy and c}
        if set(lead) != {0}:
            raise DegenerateLeadingCoefficient("leading y-coefficient is not a nonzero constant")
    bound = biv_total_degree(f) * biv_total_degree(g)
    if bound + 1 > p:
        raise PreconditionError("field too small to interpolate the resultant")
    xs = list(range(bound + 1))
    ys = [det(sylvester_matrix(biv_at_x(f, x0, p), biv_at_x(g, x0, p)), p) for x0 in xs]
    return interpolate(xs, ys, p)


def random_invertible(size: int, rng, p: int) -> list[list[int]]:
    from .linalg import rank

    while True:
        g = [[rng.randrange(p) for _ in range(size)] for _ in range(size)]
        if rank(g, p) == size:
            return g


def apply_matrix(g, point, p: int) -> tuple:
    return tuple(sum(a * c for a, c in zip(row, point)) % p for row in g)


def matrix_inverse(g, p: int) -> list[list[int]]:
    from .linalg import rref

    n = len(g)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(g)]
    A, pivots = rref(aug, p, 2 * n, pivot_cols=n)
    if len(pivots) != n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in A]


def is_dual(v) -> bool:
    return isinstance(v, Dual)
