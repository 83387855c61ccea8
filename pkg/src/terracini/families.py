"""Parametrized constructions of point configurations in Terracini loci.

Every family is a pure map ``params -> points`` that works over F_p and over
the dual numbers alike, so the same builder gives concrete samples and exact
first-order derivatives.  Points come out in a "general first" order: free
points lead and constrained points follow, which is what the prefix spread
estimator in :mod:`terracini.dim_est` relies on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .arith import Dual, derive_seed, inverse, poly_deriv, poly_eval, residue, roots_in_field
from .errors import (
    CorankNotOne,
    DegenerateParams,
    GenericityFailure,
    NoRationalRoot,
    NoRoot,
    PointsNotDistinct,
    PreconditionError,
    Unliftable,
)
from .fatpoints import PointConfiguration, h0_simple, is_terracini, nonempty_threshold
from .linalg import kernel_lift
from .plane_curves import curve_through_nodes, severi_points, severi_x, verify_nodal
from .polyring import HomogPoly, evaluate, gradient, monomial_values

# everything a builder may raise on an unlucky parameter vector
RESAMPLE = (DegenerateParams, PointsNotDistinct, CorankNotOne, ZeroDivisionError, NoRoot, Unliftable)


@dataclass(frozen=True)
class FamilySpec:
    """A named construction with its parameter count and expected invariants.

    ``general_first_order`` lists output positions from most to least general;
    builders already emit points in that order, so it is the identity.
    """

    name: str
    n: int
    d: int
    x: int
    param_count: int
    expected_dim: int | None
    expected_spread: int | None
    builder: Callable = field(repr=False, compare=False)
    verifier: Callable | None = field(default=None, repr=False, compare=False)
    terracini: bool = True
    # trailing parameters (a line or slope) redrawn when it misses a rational point
    reroll: int = 0

    @property
    def general_first_order(self) -> tuple:
        return tuple(range(self.x))

    @property
    def label(self) -> str:
        return f"{self.name}({self.n},{self.d},{self.x})"


@dataclass(frozen=True)
class FamilySample:
    spec: FamilySpec
    params: tuple
    points: PointConfiguration
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        extra = {
            "family": self.spec.name,
            "d": self.spec.d,
            "params": [str(residue(c)) for c in self.params],
        }
        extra.update(self.witness)
        return self.points.to_json(witness=extra)


# ------------------------------------------------------------------ helpers


def _chart(coords) -> tuple:
    return tuple(coords) + (1,)


def _combine(p, *terms) -> tuple:
    """Sum of ``c * v`` over ``(c, v)`` pairs of scalars and vectors."""
    out = None
    for c, v in terms:
        w = [c * a % p for a in v]
        out = w if out is None else [(a + b) % p for a, b in zip(out, w)]
    return tuple(out)


def curve_through(points, d: int, p: int) -> HomogPoly:
    """The unique degree-``d`` curve through ``points`` (corank one), over any ring."""
    n = len(points[0]) - 1
    rows = [monomial_values(pt, d, p) for pt in points]
    coeffs = kernel_lift(rows, p, comb(n + d, n))
    return HomogPoly(n, d, tuple(coeffs), p)


def point_on_curve(G: HomogPoly, base, direction, p: int) -> tuple:
    """Second intersection of the line ``base + t*direction`` with ``G = 0``.

    ``base`` must lie on ``G``.  The smallest nonzero simple root of the
    restricted univariate is taken over F_p and lifted by one Newton step.
    """
    from .arith import interpolate

    G0 = G.residue()
    b0 = [residue(c) for c in base]
    w0 = [residue(c) for c in direction]
    ts = list(range(G.d + 1))
    vals = [evaluate(G0, [(a + t * c) % p for a, c in zip(b0, w0)]) for t in ts]
    f0 = interpolate(ts, vals, p)
    if not f0:
        raise DegenerateParams("line is a component of the curve")
    roots = {t: m for t, m in roots_in_field(f0, p).items() if t != 0 and m == 1}
    if not roots:
        raise NoRationalRoot("no further rational simple intersection")
    t0 = min(roots)
    der = poly_eval(poly_deriv(f0, p), t0, p)
    val = evaluate(G, [(a + t0 * c) % p for a, c in zip(base, direction)])
    t = (t0 - val * inverse(der, p)) % p
    return tuple((a + t * c) % p for a, c in zip(base, direction))


# ----------------------------------------------------------------- builders


def _collinear_builder(n: int, d: int, x: int):
    k = (d + 1) // 2
    nfree = x - k - 1

    def build(params, p):
        it = iter(params)
        free = [_chart([next(it) for _ in range(n)]) for _ in range(nfree)]
        P1 = _chart([next(it) for _ in range(n)])
        P2 = _chart([next(it) for _ in range(n)])
        line = [_combine(p, (1, P1), (next(it), P2)) for _ in range(k - 1)]
        return free + [P1, P2] + line, {}

    return build


def _conic_points(params, p, extra_slopes):
    """Five chart points, their conic, and one further conic point per slope."""
    pts = [_chart(params[2 * i:2 * i + 2]) for i in range(5)]
    Q = curve_through(pts, 2, p)
    more = [point_on_curve(Q, pts[j % 5], (1, m, 0), p) for j, m in enumerate(extra_slopes)]
    return pts, more, Q


def _conic6(params, p):
    pts, more, Q = _conic_points(params[:10], p, params[10:11])
    return pts + more, {"conic": Q.residue().to_json()}


def _conic6_plus1(params, p):
    free = _chart(params[:2])
    pts, more, Q = _conic_points(params[2:12], p, params[12:13])
    return [free] + pts + more, {"conic": Q.residue().to_json()}


def _conic5_plus2(params, p):
    pts, more, Q = _conic_points(params[:10], p, params[10:12])
    return pts + more, {"conic": Q.residue().to_json()}


def _cubic_lines(params, p):
    P1, P2, P3 = (_chart(params[2 * i:2 * i + 2]) for i in range(3))
    s1, s2, u1, u2 = params[6:10]
    L1, L2 = _combine(p, (1, P1), (s1, P2)), _combine(p, (1, P1), (s2, P2))
    N1, N2 = _combine(p, (1, P1), (u1, P3)), _combine(p, (1, P1), (u2, P3))
    return [P2, L1, P3, N1, P1, L2, N2], {}


def _plus_one_builder(k: int, deg: int):
    """``k`` general points, then one more point on the unique degree-``deg``
    curve through them, on the line of the given slope through the first point."""

    def build(params, p):
        pts = [_chart(params[2 * i:2 * i + 2]) for i in range(k)]
        C = curve_through(pts, deg, p)
        q = point_on_curve(C, pts[0], (1, params[2 * k], 0), p)
        return pts + [q], {"curve": C.residue().to_json()}

    return build


def _severi_builder(d: int, x: int, h0: int):
    def build(params, p):
        return severi_points(params, d, x, p, expected_h0=h0), {}

    return build


def _severi_verifier(spec, points: PointConfiguration, witness: dict, rng) -> dict:
    F = curve_through_nodes(points, spec.d)
    verify_nodal(F, points, rng)
    return {"curve": F.to_json()}


def _quadric_p5(params, p):
    n = 5
    Q = HomogPoly(n, 2, tuple(params[:21]), p)
    u = _chart(params[21:26])
    v = tuple(params[26:31]) + (0,)
    grad = gradient(Q)
    a = evaluate(Q, v)
    b = sum(evaluate(g, u) * c for g, c in zip(grad, v)) % p
    c = evaluate(Q, u)
    disc = (b * b - 4 * a * c) % p
    try:
        r = disc.sqrt() if isinstance(disc, Dual) else _sqrt(disc, p)
    except NoRoot as exc:
        raise NoRationalRoot("base line misses the quadric over F_p") from exc
    s = (r - b) * inverse(2 * a, p) % p
    base = _combine(p, (1, u), (s, v))
    gb = [evaluate(g, base) for g in grad]
    out = []
    for i in range(21):
        w = _chart(params[31 + 5 * i:36 + 5 * i])
        t = -sum(gi * wi for gi, wi in zip(gb, w)) * inverse(evaluate(Q, w), p) % p
        out.append(_combine(p, (1, base), (t, w)))
    return out, {"quadric": Q.residue().to_json(), "base_point": [str(residue(c)) for c in base]}


def _sqrt(a, p):
    from .arith import sqrt_mod

    return sqrt_mod(a, p)


def _quadric_verifier(spec, points, witness, rng) -> dict:
    Q = HomogPoly.from_json(witness["quadric"])
    gram = [[0] * 6 for _ in range(6)]
    half = pow(2, -1, Q.p)
    for m, c in Q.terms().items():
        idx = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = idx
        if i == j:
            gram[i][i] = c
        else:
            gram[i][j] = gram[j][i] = c * half % Q.p
    from .linalg import det

    if det(gram, Q.p) == 0:
        raise DegenerateParams("quadric is singular")
    return {}


def _coplanar_p3(params, p):
    free = _chart(params[0:3])
    P1, P2, P3 = (_chart(params[3 + 3 * i:6 + 3 * i]) for i in range(3))
    s, u = params[12:14]
    Q = _combine(p, (1, P1), (s, P2), (u, P3))
    return [free, P1, P2, P3, Q], {}


def _generic_builder(n: int, x: int):
    def build(params, p):
        return [_chart(params[n * i:n * i + n]) for i in range(x)], {}

    return build


# ------------------------------------------------------------------ catalog


def collinear(n: int, d: int, x: int) -> FamilySpec:
    """``ceil(d/2) + 1`` collinear points plus free points."""
    k = (d + 1) // 2
    if n < 2 or d < 2 or x < k + 1:
        raise PreconditionError(f"collinear family needs n >= 2 and x >= {k + 1}")
    dim = k + n - 1 + n * (x - k)
    return FamilySpec(
        "collinear", n, d, x, param_count=dim, expected_dim=dim, expected_spread=x - k + 1,
        builder=_collinear_builder(n, d, x),
        terracini=d >= 3 and (n, d) != (2, 3) and nonempty_threshold(n, d) <= x and (n + 1) * x <= comb(n + d, n),
    )


def severi(d: int) -> FamilySpec:
    """Node sets of degree-``d`` curves with ``(d+2)(d+1)/6`` nodes."""
    x = severi_x(d)
    return FamilySpec(
        "severi", 2, d, x, param_count=2 * x, expected_dim=2 * x - 1, expected_spread=None,
        builder=_severi_builder(d, x, 3), verifier=_severi_verifier, reroll=2,
    )


def generic(n: int, d: int, x: int) -> FamilySpec:
    return FamilySpec(
        "generic", n, d, x, param_count=n * x, expected_dim=n * x, expected_spread=x,
        builder=_generic_builder(n, x), terracini=False,
    )


def _fixed_specs() -> dict[str, FamilySpec]:
    z = collinear(2, 5, 7)
    return {
        "conic6": FamilySpec("conic6", 2, 5, 6, 11, 11, None, _conic6, reroll=1),
        "conic6_plus1": FamilySpec("conic6_plus1", 2, 5, 7, 13, 13, None, _conic6_plus1, reroll=1),
        "four_collinear_Z": FamilySpec("four_collinear_Z", 2, 5, 7, z.param_count, 12, None, z.builder),
        "conic5_plus2_Y": FamilySpec("conic5_plus2_Y", 2, 5, 7, 12, 12, None, _conic5_plus2, reroll=2),
        "cubic_lines_U": FamilySpec("cubic_lines_U", 2, 5, 7, 10, 10, None, _cubic_lines),
        "cubic9_plus1": FamilySpec("cubic9_plus1", 2, 6, 10, 19, 19, 9, _plus_one_builder(9, 3), reroll=1),
        "quartic14_plus1": FamilySpec("quartic14_plus1", 2, 8, 15, 29, 29, None, _plus_one_builder(14, 4), reroll=1),
        "nodal_sextic9": FamilySpec("nodal_sextic9", 2, 6, 9, 18, 17, None, _severi_builder(6, 9, 4), reroll=2),
        "quadric_p5": FamilySpec("quadric_p5", 5, 4, 21, 136, 104, None, _quadric_p5, _quadric_verifier),
        "coplanar_p3": FamilySpec("coplanar_p3", 3, 3, 5, 14, 14, None, _coplanar_p3),
    }


FAMILY_NAMES = (
    "collinear", "conic6", "conic6_plus1", "four_collinear_Z", "conic5_plus2_Y", "cubic_lines_U",
    "cubic9_plus1", "quartic14_plus1", "severi", "nodal_sextic9", "quadric_p5", "coplanar_p3", "generic",
)


def get_family(name: str, n: int | None = None, d: int | None = None, x: int | None = None) -> FamilySpec:
    """Look up a family by its stable name; parametrized families need ``n``/``d``/``x``."""
    if name == "collinear":
        return collinear(n or 2, d if d is not None else 4, x if x is not None else 4)
    if name == "severi":
        return severi(d if d is not None else 7)
    if name == "generic":
        if None in (n, d, x):
            raise PreconditionError("generic family needs n, d and x")
        return generic(n, d, x)
    fixed = _fixed_specs()
    if name not in fixed:
        raise KeyError(f"unknown family {name!r}; choose from {', '.join(FAMILY_NAMES)}")
    return fixed[name]


def catalog() -> list[FamilySpec]:
    fixed = _fixed_specs()
    return (
        [collinear(2, 4, 4)]
        + [fixed[k] for k in ("conic6", "conic6_plus1", "four_collinear_Z", "conic5_plus2_Y", "cubic_lines_U",
                              "cubic9_plus1", "quartic14_plus1")]
        + [severi(d) for d in (7, 8, 10, 11)]
        + [fixed[k] for k in ("nodal_sextic9", "quadric_p5", "coplanar_p3")]
        + [generic(2, 5, 7)]
    )


# ------------------------------------------------------------------ sampling


def evaluate_family(spec: FamilySpec, params, p: int) -> tuple[PointConfiguration, dict]:
    """Run the builder once; ``params`` may contain dual numbers."""
    if len(params) != spec.param_count:
        raise PreconditionError(f"{spec.name} takes {spec.param_count} parameters, got {len(params)}")
    pts, witness = spec.builder(list(params), p)
    return PointConfiguration(spec.n, tuple(pts), p), witness


def lift_params(params, j: int, p: int) -> list:
    """Parameters over the dual numbers with ``eps`` attached to parameter ``j`` only."""
    return [Dual(c, int(i == j), p) for i, c in enumerate(params)]


def sample(spec: FamilySpec, p: int, seed: int = 0, params=None, tries: int = 8) -> FamilySample:
    """A verified sample of ``spec`` over F_p.

    With explicit ``params`` the builder runs once; otherwise parameters are
    drawn from seeded streams, retrying up to ``tries`` times.
    """
    if params is not None:
        return _finish(spec, tuple(params), p, random.Random(derive_seed(seed, "verify")))
    seeds = []
    last = None
    for attempt in range(tries):
        s = derive_seed(seed, spec.label, p, attempt)
        seeds.append(s)
        rng = random.Random(s)
        prm = [rng.randrange(p) for _ in range(spec.param_count)]
        for _ in range(tries if spec.reroll else 1):
            try:
                return _finish(spec, tuple(prm), p, random.Random(derive_seed(s, "verify")))
            except NoRationalRoot as exc:
                last = exc
                if spec.reroll:
                    prm[-spec.reroll:] = [rng.randrange(p) for _ in range(spec.reroll)]
            except RESAMPLE as exc:
                last = exc
                break
    raise GenericityFailure(f"sampling {spec.label} failed at p={p}: {last}", seeds)


def _finish(spec, params, p, rng) -> FamilySample:
    S, witness = evaluate_family(spec, params, p)
    if spec.verifier is not None:
        witness = dict(witness, **spec.verifier(spec, S, witness, rng))
    return FamilySample(spec, params, S, witness)


def distinguish_components_d8(p: int, seed: int = 0, count: int = 10) -> dict:
    """h^0(I_S(4)) on samples of the two families of 15 points with degree 8."""
    out = {}
    for spec in (get_family("quartic14_plus1"), severi(8)):
        rows = []
        for i in range(count):
            smp = sample(spec, p, derive_seed(seed, "d8", i))
            ok, rep = is_terracini(smp.points, 8)
            rows.append({"h0_quartics": h0_simple(smp.points, 4), "terracini": ok, "h0": rep.h0, "h1": rep.h1})
        out[spec.name] = rows
    return out
