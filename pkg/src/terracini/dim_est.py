"""Dimension and spread of families from exact Jacobian ranks over F_p[eps].

The Jacobian has one row per affine chart coordinate of each point and one
column per parameter; column ``j`` is the eps-part of the points obtained by
running the builder with ``eps`` attached to parameter ``j``.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field

from .arith import derive_seed, eps_part, residue
from .errors import ChartDegeneracy, InternalInconsistency
from .families import (
    FamilySpec,
    RESAMPLE,
    collinear,
    evaluate_family,
    lift_params,
    sample,
)
from .fatpoints import (
    PointConfiguration,
    is_terracini,
    nonempty_threshold,
    prefix_cohomology,
    rho,
    sigma,
    span_rank,
    spans,
)
from .linalg import incremental_ranks
from .polyring import chart_index


@dataclass
class JacobianReport:
    family: str
    n: int
    d: int
    x: int
    param_count: int
    jacobian_rank: int
    prefix_ranks: list
    primes: list = field(default_factory=list)
    seeds: list = field(default_factory=list)
    # primes whose rank fell below the maximum (unlucky specializations)
    minority_primes: list = field(default_factory=list)
    # is_terracini verdict of the sample used at each prime
    terracini: list = field(default_factory=list)

    @property
    def spread(self) -> int:
        """Largest ``y`` whose prefix projection has full rank ``n*y``."""
        y = 0
        for i, r in enumerate(self.prefix_ranks, start=1):
            if r != self.n * i:
                break
            y = i
        return y

    def to_json(self) -> dict:
        out = asdict(self)
        out["spread"] = self.spread
        out["primes"] = [str(q) for q in self.primes]
        out["minority_primes"] = [str(q) for q in self.minority_primes]
        return out


def jacobian_matrix(spec: FamilySpec, params, p: int) -> list[list[int]]:
    """``(n*x) x param_count`` Jacobian of params -> affine chart coordinates."""
    base, _ = evaluate_family(spec, params, p)
    charts = [chart_index(pt) for pt in base.points]
    cols = []
    for j in range(spec.param_count):
        try:
            S, _ = evaluate_family(spec, lift_params(params, j, p), p)
        except RESAMPLE as exc:
            raise InternalInconsistency(f"dual evaluation failed at parameter {j}: {exc}") from exc
        col = []
        for pt, c, pt0 in zip(S.points, charts, base.points):
            if chart_index(pt) != c:
                raise ChartDegeneracy("chart changed under perturbation")
            if tuple(residue(a) for a in pt) != pt0:
                raise InternalInconsistency("dual sample disagrees with field sample")
            col.extend(eps_part(a) for i, a in enumerate(pt) if i != c)
        cols.append(col)
    return [list(r) for r in zip(*cols)]


def jacobian_at(spec: FamilySpec, p: int, seed: int, params=None):
    """``(rank, prefix_ranks, sample)`` at one sample over F_p."""
    smp = sample(spec, p, seed, params=params)
    J = jacobian_matrix(spec, smp.params, p)
    prefix = incremental_ranks(J, p, block=spec.n, ncols=spec.param_count)
    return prefix[-1], prefix, smp


def jacobian_rank(spec: FamilySpec, seed: int, primes) -> JacobianReport:
    """Exact Jacobian rank at one sample per prime; the maximum over primes is reported."""
    results = []
    for q in primes:
        s = derive_seed(seed, "jacobian", spec.label, q)
        r, prefix, smp = jacobian_at(spec, q, s)
        member = is_terracini(smp.points, spec.d)[0] if spec.x > spec.n else False
        results.append((q, s, r, prefix, member))
    best = max(results, key=lambda t: (t[2], t[3]))
    return JacobianReport(
        family=spec.name, n=spec.n, d=spec.d, x=spec.x,
        param_count=spec.param_count,
        jacobian_rank=best[2],
        prefix_ranks=list(best[3]),
        primes=[t[0] for t in results],
        seeds=[t[1] for t in results],
        minority_primes=[t[0] for t in results if t[2] < best[2]],
        terracini=[t[4] for t in results],
    )


def collinear_sweep(n: int, d: int, p: int, seed: int, xs=None) -> list[dict]:
    """Collinear-family rank, spread and membership for every ``x`` in ``xs``.

    One random completion is shared by all ``x``: two given points span the
    line, ``ceil(d/2) - 1`` further points are put on it, and the remaining
    given points are free.  Listing the line points first makes each prefix a
    family member, so one incremental elimination certifies membership for
    every ``x``; ranks and spreads come from per-``x`` Jacobians at the same
    parameters.
    """
    k = (d + 1) // 2
    xs = list(xs if xs is not None else range(nonempty_threshold(n, d), sigma(n, d) + 1))
    xmax = max(xs)
    rng = random.Random(derive_seed(seed, "collinear_sweep", n, d, p))
    for _ in range(8):
        A, B = (tuple(rng.randrange(p) for _ in range(n)) for _ in range(2))
        free = [tuple(rng.randrange(p) for _ in range(n)) for _ in range(xmax - k - 1)]
        scalars = [rng.randrange(p) for _ in range(k - 1)]
        line = [A, B]
        try:
            S, _ = evaluate_family(collinear(n, d, xmax), [c for pt in free + line for c in pt] + scalars, p)
        except RESAMPLE:
            continue
        break
    else:
        raise InternalInconsistency("could not draw distinct completion points")
    # reorder: line points first, then the free points
    ordered = PointConfiguration(n, S.points[xmax - k - 1:] + S.points[:xmax - k - 1], p)
    reports = prefix_cohomology(ordered, d)
    out = []
    for x in xs:
        m = x - k - 1
        params = [c for pt in free[:m] + line for c in pt] + scalars
        spec = collinear(n, d, x)
        r, prefix, smp = jacobian_at(spec, p, seed, params=params)
        given = {pt + (1,) for pt in free[:m] + line}
        rep = reports[x - 1]
        out.append({
            "x": x, "rank": r, "prefix_ranks": prefix,
            "spread": JacobianReport(spec.name, n, d, x, spec.param_count, r, prefix).spread,
            "completion": given <= set(smp.points.points) and set(smp.points.points) == set(ordered.points[:x]),
            "terracini": rep.is_terracini, "h0": rep.h0, "h1": rep.h1,
        })
    return out


def collinear_completion(n: int, d: int, x: int, p: int, seed: int) -> bool:
    """Extend ``x - ceil(d/2) + 1`` random points to a collinear-family member.

    The last two of the random points span the line and the remaining
    collinear points are random points of it.  Returns True when the result
    contains the given points, its last ``ceil(d/2) + 1`` points span a line,
    and the whole configuration spans P^n.  Terracini membership is a
    separate question (it needs ``(n+1)x <= C(n+d, n)``).
    """
    spec = collinear(n, d, x)
    k = (d + 1) // 2
    y = x - k + 1
    rng = random.Random(derive_seed(seed, "completion", n, d, x, p))
    for _ in range(8):
        given = [tuple(rng.randrange(p) for _ in range(n)) for _ in range(y)]
        params = [c for pt in given for c in pt] + [rng.randrange(p) for _ in range(k - 1)]
        try:
            S, _ = evaluate_family(spec, params, p)
        except RESAMPLE:
            continue
        target = {pt + (1,) for pt in given}
        line = PointConfiguration(n, S.points[x - k - 1:], p)
        return target <= set(S.points) and span_rank(line) == 2 and spans(S)
    raise InternalInconsistency("could not draw distinct completion points")


def spread_estimate(spec: FamilySpec, seed: int, primes, report: JacobianReport | None = None) -> int:
    """Certified lower bound for the spread from prefix ranks.

    For the collinear family the constructive completion must also succeed,
    otherwise ``-1`` is returned.
    """
    report = report or jacobian_rank(spec, seed, primes)
    y = report.spread
    if spec.name == "collinear":
        if not all(collinear_completion(spec.n, spec.d, spec.x, q, seed) for q in primes):
            return -1
    return y


def check_inequalities(report: JacobianReport, n: int, d: int, x: int) -> list[tuple[str, bool, str]]:
    """Dimension/spread bounds that any family in the Terracini locus obeys."""
    dim, eta = report.jacobian_rank, report.spread
    out = [
        ("n*eta <= dim", n * eta <= dim, f"{n * eta} <= {dim}"),
        ("dim <= (n-1)x + eta", dim <= (n - 1) * x + eta, f"{dim} <= {(n - 1) * x + eta}"),
    ]
    r = rho(n, d)
    for c in (1, 2):
        if x >= c * r:
            out.append((f"dim <= nx-{c} (x >= {c}*rho)", dim <= n * x - c, f"{dim} <= {n * x - c}"))
    if x >= r:
        out.append(("eta <= x-1 (x >= rho)", eta <= x - 1, f"{eta} <= {x - 1}"))
    if x >= r + 1:
        out.append(("dim <= nx-2 (x >= rho+1)", dim <= n * x - 2, f"{dim} <= {n * x - 2}"))
    return out
