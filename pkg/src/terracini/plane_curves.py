"""Plane curves: exact singular loci, nodes, nodal samplers, and the Severi map.

A plane curve is a ternary :class:`~terracini.polyring.HomogPoly`.  Singular
points are found over F_p after a random projective change of coordinates,
which puts every relevant point in the affine chart ``z = 1`` and makes all
leading ``y``-coefficients nonzero constants.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .arith import (
    derive_seed,
    inverse,
    poly_deriv,
    poly_divmod,
    poly_eval,
    poly_gcd,
    residue,
    roots_in_field,
)
from .errors import (
    DegenerateLeadingCoefficient,
    DegenerateParams,
    DependentNodes,
    ExtraSingularity,
    GenericityFailure,
    NoRationalRoot,
    NotSingular,
    PositiveDimensionalSingularLocus,
    PreconditionError,
    WrongNetDimension,
)
from .fatpoints import PointConfiguration, double_point_matrix, evaluation_matrix
from .linalg import _kernel_from_rref, dual_kernel_basis, kernel_basis, rank, rref
from .polyring import (
    HomogPoly,
    apply_matrix,
    biv_at_x,
    chart_index,
    dehomogenize,
    evaluate,
    gradient,
    gradient_rows,
    normalize_point,
    partial,
    random_invertible,
    substitute_linear,
    sylvester_resultant,
)


@dataclass(frozen=True)
class SingularLocusReport:
    points: tuple
    node_flags: tuple
    reduced: bool
    # every singular point over the algebraic closure is among ``points``
    complete: bool = True

    def to_json(self) -> dict:
        return {
            "points": [[str(c) for c in pt] for pt in self.points],
            "node_flags": list(self.node_flags),
            "reduced": self.reduced,
            "complete": self.complete,
        }


def _sqfree_degree(f, p) -> int:
    if len(f) <= 1:
        return 0
    g = poly_gcd(f, poly_deriv(f, p), p)
    return len(f) - len(g)


def _univariate_common_roots(polys, p):
    """Rational common roots of univariate polynomials; also whether all roots are rational."""
    g: list[int] = []
    for f in polys:
        g = poly_gcd(g, f, p)
    if not g:
        raise PositiveDimensionalSingularLocus("all polynomials vanish identically")
    if len(g) == 1:
        return [], True
    roots = roots_in_field(g, p)
    return sorted(roots), len(roots) == _sqfree_degree(g, p)


def _restrict_line_at_infinity(G: HomogPoly):
    """Coefficients in t of G(t, 1, 0)."""
    out = [0] * (G.d + 1)
    for m, c in G.terms().items():
        if m[2] == 0:
            out[m[0]] = (out[m[0]] + c) % G.p
    while out and out[-1] == 0:
        out.pop()
    return out


def singular_locus(F: HomogPoly, rng=None, require_finite: bool = False) -> SingularLocusReport:
    """Rational singular points of the plane curve ``F = 0``.

    ``reduced`` is False when ``F`` has a multiple component (then the singular
    locus is a curve and ``points`` is empty).  ``complete`` is True when no
    singular point is defined only over an extension of F_p.
    """
    if F.n != 2 or F.d < 2:
        raise PreconditionError("need a plane curve of degree >= 2")
    p = F.p
    if rng is None:
        rng = random.Random(derive_seed(0, "singular_locus", F.coeffs, p))
    grads = gradient(F)
    nonreduced_votes = 0
    for _ in range(8):
        g = random_invertible(3, rng, p)
        G = substitute_linear(F, g)
        Gg = gradient(G)
        f = dehomogenize(G)
        fx, fy, fz = (dehomogenize(h) for h in Gg)
        try:
            if not sylvester_resultant(f, fx, p):
                nonreduced_votes += 1
                if nonreduced_votes == 3:
                    if require_finite:
                        raise PositiveDimensionalSingularLocus("curve has a multiple component")
                    return SingularLocusReport((), (), reduced=False, complete=False)
                continue
            r1 = sylvester_resultant(fx, fy, p)
            r2 = sylvester_resultant(fx, fz, p)
        except DegenerateLeadingCoefficient:
            continue
        if not r1 or not r2:
            continue
        gx = poly_gcd(r1, r2, p)
        found = []
        complete = True
        if len(gx) > 1:
            xroots = roots_in_field(gx, p)
            complete = len(xroots) == _sqfree_degree(gx, p)
            for x0 in sorted(xroots):
                ys, ok = _univariate_common_roots([biv_at_x(h, x0, p) for h in (fx, fy, fz)], p)
                complete = complete and ok
                found.extend((x0, y0, 1) for y0 in ys)
        # the line z = 0 of the working chart
        if all(evaluate(h, (1, 0, 0)) == 0 for h in Gg):
            found.append((1, 0, 0))
        ts, ok = _univariate_common_roots([_restrict_line_at_infinity(h) for h in Gg], p)
        complete = complete and ok
        found.extend((t, 1, 0) for t in ts)
        points = []
        for q in found:
            P = normalize_point(apply_matrix(g, q, p), p)
            assert all(evaluate(h, P) == 0 for h in grads), "singular point failed verification"
            points.append(P)
        points = tuple(sorted(set(points)))
        flags = tuple(_hessian_det(F, P) != 0 for P in points)
        return SingularLocusReport(points, flags, reduced=True, complete=complete)
    raise GenericityFailure("no generic coordinate change found for the singular locus")


def _hessian(F: HomogPoly, P):
    c = chart_index(P)
    a, b = (k for k in range(3) if k != c)
    Fa, Fb = partial(F, a), partial(F, b)
    return [
        [evaluate(partial(Fa, a), P), evaluate(partial(Fa, b), P)],
        [evaluate(partial(Fb, a), P), evaluate(partial(Fb, b), P)],
    ], (a, b)


def _hessian_det(F: HomogPoly, P) -> int:
    if F.d < 2:
        return 0
    P = normalize_point(P, F.p)
    (h00, h01), (h10, h11) = _hessian(F, P)[0]
    return (h00 * h11 - h01 * h10) % F.p


def is_node(F: HomogPoly, P) -> bool:
    """True iff ``P`` is an ordinary double point (nonsingular affine Hessian)."""
    P = normalize_point(P, F.p)
    if any(evaluate(h, P) != 0 for h in gradient(F)):
        raise NotSingular(f"{P} is not a singular point")
    return _hessian_det(F, P) != 0


def _nodal_threshold(d: int) -> float:
    return (d + 2) * (d + 1) / 6


def general_nodal_member(A: PointConfiguration, d: int, rng, tries: int = 8) -> HomogPoly:
    """A random member of |I_2A(d)| whose singular locus is exactly ``A``, all nodes."""
    if A.n != 2:
        raise PreconditionError("plane configurations only")
    if not A.x < _nodal_threshold(d):
        raise PreconditionError(f"need x < (d+2)(d+1)/6 = {_nodal_threshold(d):g}")
    p = A.p
    N = comb(d + 2, 2)
    K = kernel_basis(double_point_matrix(A, d), p, N)
    if not K:
        raise PreconditionError("no curve of this degree is singular at A")
    target = set(A.points)
    seeds = []
    # a one-dimensional system has a single member up to scaling
    for attempt in range(tries if len(K) > 1 else 1):
        s = rng.randrange(1 << 64)
        seeds.append(s)
        r = random.Random(s)
        coeffs = [0] * N
        for v in K:
            c = r.randrange(p)
            coeffs = [(a + c * b) % p for a, b in zip(coeffs, v)]
        F = HomogPoly(2, d, tuple(coeffs), p)
        if F.is_zero():
            continue
        rep = singular_locus(F, random.Random(derive_seed(s, "sing")))
        if rep.reduced and rep.complete and set(rep.points) == target and all(rep.node_flags):
            return F
    raise GenericityFailure("no nodal member with singular locus exactly A", seeds)


# ------------------------------------------------------------ Severi sampler


def _minor3(G, cols, p):
    (a, b, c) = cols
    m = [[G[r][a], G[r][b], G[r][c]] for r in range(3)]
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    ) % p


def rank_drop_point(A_points, d: int, slope, intercept, p: int, expected_h0: int | None = None):
    """A point ``q`` on the line ``y = slope*x + intercept`` (chart ``z = 1``) at which
    some member of |I_2A(d)| is singular beyond the generic expectation.

    With ``W = H^0(I_2A(d))`` of dimension ``w >= 3``, ``q`` is a rational
    simple root of the gcd of the 3x3 minors of the gradient matrix
    ``[grad F_i(q)]``.  Inputs may be dual numbers: the root is lifted by one
    exact Newton step on a minor with a simple root there.
    Returns ``(q, basis)`` where ``basis`` spans ``W`` over the input ring.
    """
    from .arith import interpolate

    N = comb(d + 2, 2)
    rows = []
    for pt in A_points:
        rows.extend(gradient_rows(pt, d, p))
    W = dual_kernel_basis(rows, p, N)
    w = len(W)
    if w < 3 or (expected_h0 is not None and w != expected_h0):
        raise WrongNetDimension(f"h0(I_2A'(d)) = {w}")
    polys = [HomogPoly(2, d, tuple(v), p) for v in W]
    grads = [gradient(F) for F in polys]
    grads0 = [[h.residue() for h in gr] for gr in grads]
    s0, c0 = residue(slope), residue(intercept)
    deg = 3 * (d - 1)
    ts = list(range(deg + 1))
    values = {cols: [] for cols in combinations(range(w), 3)}
    for t in ts:
        pt = (t, (s0 * t + c0) % p, 1)
        G0 = [[evaluate(grads0[i][j], pt) for i in range(w)] for j in range(3)]
        for cols in values:
            values[cols].append(_minor3(G0, cols, p))
    minors = {cols: interpolate(ts, vals, p) for cols, vals in values.items()}
    g: list[int] = []
    for f in minors.values():
        g = poly_gcd(g, f, p)
    if not g:
        raise DegenerateParams("gradient matrix has rank <= 2 along the whole line")
    if len(g) == 1:
        raise NoRationalRoot("line misses the rank-drop locus")
    polys0 = [F.residue() for F in polys]

    def nodal_there(t0):
        # a member singular at q0 must have a node there; this rejects points
        # on a curve C with C^2 in the system, where the Hessian has rank one
        q0 = (t0, (s0 * t0 + c0) % p, 1)
        G0 = [[evaluate(grads0[i][j], q0) for i in range(w)] for j in range(3)]
        coeffs = [0] * N
        for v in kernel_basis(G0, p, w):
            for i, c in enumerate(v):
                coeffs = [(a + c * b) % p for a, b in zip(coeffs, polys0[i].coeffs)]
        F0 = HomogPoly(2, d, tuple(coeffs), p)
        return not F0.is_zero() and _hessian_det(F0, q0) != 0

    choice = None
    for t0 in sorted(roots_in_field(g, p)):
        if not nodal_there(t0):
            continue
        for cols, f in minors.items():
            if f and poly_eval(f, t0, p) == 0:
                der = poly_eval(poly_deriv(f, p), t0, p)
                if der:
                    choice = (t0, cols, der)
                    break
        if choice:
            break
    if choice is None:
        raise NoRationalRoot("no rational simple nodal root on this line")
    t0, cols, der = choice
    pt = (t0, (slope * t0 + intercept) % p, 1)
    Gr = [[evaluate(grads[i][j], pt) for i in range(w)] for j in range(3)]
    t = (t0 - _minor3(Gr, cols, p) * inverse(der, p)) % p
    q = (t, (slope * t + intercept) % p, 1)
    return q, polys


def severi_points(params, d: int, x: int, p: int, expected_h0: int | None = None):
    """Ring-generic construction: ``x - 1`` chart points from ``params`` plus a
    rank-drop point on the line given by the last two parameters."""
    A = [(params[2 * i], params[2 * i + 1], 1) for i in range(x - 1)]
    slope, intercept = params[2 * (x - 1)], params[2 * (x - 1) + 1]
    q, _ = rank_drop_point(A, d, slope, intercept, p, expected_h0)
    return A + [q]


def severi_x(d: int) -> int:
    if d < 7 or d % 3 == 0:
        raise PreconditionError("need d >= 7 with d not divisible by 3")
    return (d + 2) * (d + 1) // 6


def curve_through_nodes(S: PointConfiguration, d: int) -> HomogPoly:
    """The unique (up to scalar) degree-``d`` curve singular at ``S``."""
    K = kernel_basis(double_point_matrix(S.residue(), d), S.p, comb(d + 2, 2))
    if len(K) != 1:
        raise ExtraSingularity(f"h0(I_2S(d)) = {len(K)}, expected 1")
    return HomogPoly(2, d, tuple(K[0]), S.p)


def verify_nodal(F: HomogPoly, S: PointConfiguration, rng=None) -> SingularLocusReport:
    rep = singular_locus(F, rng)
    if not (rep.reduced and rep.complete and set(rep.points) == set(S.points) and all(rep.node_flags)):
        raise ExtraSingularity("singular locus is not exactly the prescribed nodes")
    return rep


def net_discriminant_sample(d: int, ctx, tries: int = 8):
    """A degree-``d`` curve with exactly ``x = (d+2)(d+1)/6`` nodes, all rational.

    ``x - 1`` random nodes leave a net of curves; the last node is a rational
    point of the net's discriminant (the locus where some member is singular)
    on a random line.  Returns ``(F, S)``.
    """
    x = severi_x(d)
    p = ctx.p
    seeds = []
    for attempt in range(tries):
        s = derive_seed(ctx.seed, "net_discriminant", d, attempt)
        seeds.append(s)
        r = random.Random(s)
        params = [r.randrange(p) for _ in range(2 * x)]
        try:
            pts = severi_points(params, d, x, p, expected_h0=3)
            S = PointConfiguration(2, tuple(pts), p)
            F = curve_through_nodes(S, d)
            verify_nodal(F, S, random.Random(derive_seed(s, "sing")))
            return F, S
        except (DegenerateParams, ValueError):
            continue
    raise GenericityFailure(f"net discriminant sampler failed for d={d}", seeds)


def severi_differential_rank(F: HomogPoly, S: PointConfiguration) -> int:
    """Rank of the first-order motion of the nodes ``S`` of ``F`` under deformations
    in H^0(I_S(d)) modulo ``F``: node ``p`` moves with velocity ``-H^{-1} grad G(p)``."""
    p, d = F.p, F.d
    S = S.residue()
    for P in S.points:
        if not is_node(F, P):
            raise PreconditionError(f"{P} is not a node")
    E = evaluation_matrix(S, d)
    N = comb(d + 2, 2)
    if rank(E, p, N) != S.x:
        raise DependentNodes("nodes do not impose independent conditions in degree d")
    R, pivots = rref(E, p, N)
    K = _kernel_from_rref(R, pivots, N, p)
    free = [c for c in range(N) if c not in set(pivots)]
    # F is a combination of K with its free-column coefficients; drop a vector it uses
    drop = next(k for k, col in enumerate(free) if F.coeffs[col] % p)
    basis = [v for k, v in enumerate(K) if k != drop]
    rows = []
    for P in S.points:
        (h00, h01), (h10, h11) = _hessian(F, P)[0]
        a, b = _hessian(F, P)[1]
        dt = (h00 * h11 - h01 * h10) % p
        di = pow(dt, -1, p)
        inv = [[h11 * di % p, -h01 * di % p], [-h10 * di % p, h00 * di % p]]
        gr = gradient_rows(P, d, p)
        ga = [sum(u * c for u, c in zip(gr[a], v)) % p for v in basis]
        gb = [sum(u * c for u, c in zip(gr[b], v)) % p for v in basis]
        rows.append([-(inv[0][0] * u + inv[0][1] * w) % p for u, w in zip(ga, gb)])
        rows.append([-(inv[1][0] * u + inv[1][1] * w) % p for u, w in zip(ga, gb)])
    return rank(rows, p, len(basis))
