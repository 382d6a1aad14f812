"""Flat asymptotes, projection closedness, and quasi-attainment classification.

A flat asymptote of a set F is an affine manifold M with ``F ∩ M`` empty but
``dist(F, M) = 0``.  For convex F the absence of flat asymptotes is
equivalent to the quasi-attainment property (every quadratic that is
quasi-convex and bounded below on F attains its infimum) and to closedness
of all orthogonal projections of F, so the three analyses live together
here.

Set descriptors
---------------
Sets enter as a small algebra of descriptor nodes: Motzkin sums and
inequality systems (exact analysis), quadratic sublevel sets over a
polyhedral base, the built-in epigraph of ``x^2 + exp(-x^2)``, and products,
affine images, intersections and unions of these.  Exactness degrades
gracefully: polyhedral data gets exact verdicts with certificates,
quadratic sublevel sets get exact line-section emptiness tests plus
certified one-sided bounds, and everything else may answer Unknown, which
is a first-class verdict throughout.

Known counterexample sets register their asymptote candidates and
non-attainment witnesses in module-level registries (the gallery does this
on import), so classification reproduces the published verdicts with the
evidence attached.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .affine import AffineManifold, AffineMap
from .cone_qp import minimize_over_hpolyhedron
from .errors import DimensionMismatchError, UnsupportedKindError
from .linalg import (
    ONE,
    Vec,
    ZERO,
    dot,
    kernel_basis,
    matvec,
    solve,
    vadd,
    vec,
    vscale,
    zeros,
)
from .motzkin import (
    Ball,
    Classification,
    FinitePointSet,
    MotzkinSet,
    PolytopeK,
    SecondOrderCone,
    classify_fw as classify_fw_motzkin,
    motzkin_to_vpoly,
)
from .numeric import exp_bounds, surd, surd_cmp, surd_float
from .polyhedra import HPolyhedron, dd_convert, lp_solve
from .quadratics import Quadratic, is_convex, is_psd

# ---------------------------------------------------------------------------
# descriptor nodes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadSublevel:
    """``{x in base : q(x) <= 0 for every constraint q}``."""

    base: "SetDescriptor"
    constraints: tuple[Quadratic, ...]
    sample_point: Vec | None = field(default=None, compare=False)

    def __post_init__(self):
        n = ambient_dim(self.base)
        for q in self.constraints:
            if q.dim != n:
                raise DimensionMismatchError("constraint dimension differs from base")
        if self.sample_point is not None and contains(self, self.sample_point) is False:
            raise DimensionMismatchError("sample point is not a member")


@dataclass(frozen=True)
class Epigraph1D:
    """Epigraph of a built-in scalar function; only ``parabola_exp`` exists,
    the epigraph of ``x^2 + exp(-x^2)`` in the plane."""

    function: str = "parabola_exp"

    def __post_init__(self):
        if self.function not in ("parabola_exp",):
            raise UnsupportedKindError(f"unknown epigraph function {self.function!r}")


@dataclass(frozen=True)
class ProductSet:
    factors: tuple["SetDescriptor", ...]


@dataclass(frozen=True)
class AffineImageSet:
    map: AffineMap
    inner: "SetDescriptor"


@dataclass(frozen=True)
class IntersectionSet:
    members: tuple["SetDescriptor", ...]


@dataclass(frozen=True)
class UnionSet:
    members: tuple["SetDescriptor", ...]


SetDescriptor = (
    MotzkinSet
    | HPolyhedron
    | QuadSublevel
    | Epigraph1D
    | ProductSet
    | AffineImageSet
    | IntersectionSet
    | UnionSet
)


def whole_space(n: int) -> HPolyhedron:
    return HPolyhedron((), (), n)


def ambient_dim(s: SetDescriptor) -> int:
    if isinstance(s, (MotzkinSet, HPolyhedron)):
        return s.dim
    if isinstance(s, QuadSublevel):
        return ambient_dim(s.base)
    if isinstance(s, Epigraph1D):
        return 2
    if isinstance(s, ProductSet):
        return sum(ambient_dim(f) for f in s.factors)
    if isinstance(s, AffineImageSet):
        return s.map.target_dim
    if isinstance(s, (IntersectionSet, UnionSet)):
        return ambient_dim(s.members[0])
    raise UnsupportedKindError(f"unknown descriptor {type(s).__name__}")


def contains(s: SetDescriptor, x: Vec) -> bool | None:
    """Exact membership where decidable; None when genuinely ambiguous
    (only the transcendental epigraph boundary can be)."""
    x = vec(x)
    if isinstance(s, HPolyhedron):
        return s.contains(x)
    if isinstance(s, MotzkinSet):
        return _motzkin_contains(s, x)
    if isinstance(s, QuadSublevel):
        base = contains(s.base, x)
        if base is not True:
            return base
        return all(q.evaluate(x) <= 0 for q in s.constraints)
    if isinstance(s, Epigraph1D):
        return _epigraph_contains(x)
    if isinstance(s, ProductSet):
        offset = 0
        results = []
        for f in s.factors:
            d = ambient_dim(f)
            results.append(contains(f, x[offset : offset + d]))
            offset += d
        if any(r is False for r in results):
            return False
        if any(r is None for r in results):
            return None
        return True
    if isinstance(s, IntersectionSet):
        results = [contains(m, x) for m in s.members]
        if any(r is False for r in results):
            return False
        return None if any(r is None for r in results) else True
    if isinstance(s, UnionSet):
        results = [contains(m, x) for m in s.members]
        if any(r is True for r in results):
            return True
        return None if any(r is None for r in results) else False
    if isinstance(s, AffineImageSet):
        return None  # membership in an image needs a preimage search
    raise UnsupportedKindError(f"unknown descriptor {type(s).__name__}")


def _motzkin_contains(s: MotzkinSet, x: Vec) -> bool | None:
    if isinstance(s.compact, Ball) or isinstance(s.cone, SecondOrderCone):
        return None if not _soc_point_check(s, x) else True
    if isinstance(s.compact, FinitePointSet):
        cone_h = s.cone.with_halfspaces()
        return any(
            all(dot(h, tuple(a - b for a, b in zip(x, y))) <= 0 for h in cone_h.halfspaces)
            for y in s.compact.points
        )
    h = dd_convert(motzkin_to_vpoly(s))
    return h.contains(x)


def _soc_point_check(s: MotzkinSet, x: Vec) -> bool:
    # sound only one way; exact membership of sums with balls or second-order
    # cones is not available, so callers treat non-True as None
    if isinstance(s.compact, (PolytopeK, FinitePointSet)):
        pts = s.compact.vertices if isinstance(s.compact, PolytopeK) else s.compact.points
        return any(s.cone.contains(tuple(a - b for a, b in zip(x, y))) for y in pts)
    return False


def _epigraph_contains(x: Vec) -> bool | None:
    if len(x) != 2:
        raise DimensionMismatchError("the epigraph lives in the plane")
    t, y = x
    # f(t) = t^2 + exp(-t^2); certify with rational bounds, widening on demand
    for terms in (16, 48, 120):
        lo, hi = exp_bounds(-t * t, terms)
        if y >= t * t + hi:
            return True
        if y < t * t + lo:
            return False
    return None


# ---------------------------------------------------------------------------
# distance verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PositiveDistance:
    lower_bound_sq: Fraction
    exact: bool = False
    note: str = ""

    kind = "positive"


@dataclass(frozen=True)
class ZeroEvidence:
    pairs: tuple[tuple[Vec, Vec, Fraction], ...]  # (point of F, point of M, dist^2)

    kind = "zero_evidence"


@dataclass(frozen=True)
class Intersects:
    point: Vec | None

    kind = "intersects"


@dataclass(frozen=True)
class DistanceUnknown:
    reason: str

    kind = "unknown"


DistanceVerdict = PositiveDistance | ZeroEvidence | Intersects | DistanceUnknown

#: evidence sequences must pass below these squared-distance thresholds
EVIDENCE_THRESHOLDS_SQ = (Fraction(1, 10**4), Fraction(1, 10**8), Fraction(1, 10**12))


def manifold_projection(m: AffineManifold, x: Vec) -> Vec:
    """Orthogonal projection of x onto the flat, exact.

    Solves the normal equations over the flat's direction basis; rational
    because the basis is rational.
    """
    if not m.basis:
        return m.point
    diff = tuple(a - b for a, b in zip(x, m.point))
    gram = tuple(tuple(dot(u, v) for v in m.basis) for u in m.basis)
    rhs = tuple(dot(u, diff) for u in m.basis)
    coeffs = solve(gram, rhs)
    out = m.point
    for c, v in zip(coeffs, m.basis):
        out = vadd(out, vscale(c, v))
    return out


def distance_to_manifold(
    f: SetDescriptor,
    m: AffineManifold,
    evidence_points: tuple[Vec, ...] | None = None,
) -> DistanceVerdict:
    """Trichotomy of dist(F, M): exact for polyhedral data, and otherwise an
    intersection point, a certified positive bound from a separating slab,
    a zero-evidence sequence, or Unknown."""
    if ambient_dim(f) != m.dim:
        raise DimensionMismatchError("set and manifold dimensions differ")
    if isinstance(f, HPolyhedron):
        return _distance_exact_hpoly(f, m)
    if isinstance(f, MotzkinSet) and f.is_polyhedral_cone and not isinstance(f.compact, Ball):
        if isinstance(f.compact, FinitePointSet):
            verdicts = []
            for y in f.compact.points:
                member = MotzkinSet(PolytopeK.build([y]), f.cone)
                verdicts.append(_distance_exact_hpoly(dd_convert(motzkin_to_vpoly(member)), m))
            for v in verdicts:
                if v.kind == "intersects":
                    return v
            positives = [v for v in verdicts if v.kind == "positive"]
            if len(positives) < len(verdicts):
                return DistanceUnknown("a member cone resisted the distance program")
            return min(positives, key=lambda v: v.lower_bound_sq)
        return _distance_exact_hpoly(dd_convert(motzkin_to_vpoly(f)), m)

    inter = intersects_manifold(f, m)
    if inter is True:
        return Intersects(_find_manifold_member(f, m))
    slab = _separating_slab(f, m)
    if slab is not None:
        return slab
    points = evidence_points
    if points is None:
        points = _EVIDENCE.get((f, m))
    if points is not None and inter is False:
        pairs = []
        for x in points:
            if contains(f, x) is not True:
                raise DimensionMismatchError("evidence point is not a member of the set")
            y = manifold_projection(m, x)
            d2 = sum((a - b) * (a - b) for a, b in zip(x, y))
            pairs.append((tuple(x), tuple(y), d2))
        dists = [p[2] for p in pairs]
        if all(a > b for a, b in zip(dists, dists[1:])) and all(
            any(d < thr for d in dists) for thr in EVIDENCE_THRESHOLDS_SQ
        ):
            return ZeroEvidence(tuple(pairs))
    if inter is None:
        return DistanceUnknown("intersection with the manifold is undecided")
    return DistanceUnknown("no separating slab and no zero-distance evidence")


def _distance_exact_hpoly(f: HPolyhedron, m: AffineManifold) -> DistanceVerdict:
    """Exact squared distance via the QP min |x - y|^2, x in F, y in M."""
    n = f.dim
    k = len(m.basis)
    nv = n + k
    a_rows = tuple(row + zeros(k) for row in f.a)
    h = HPolyhedron(a_rows, f.b, nv) if a_rows else whole_space(nv)
    # |x - point - B u|^2 as a quadratic in (x, u)
    bmat = m.basis
    amat = [[ZERO] * nv for _ in range(nv)]
    bvecq = [ZERO] * nv
    cq = dot(m.point, m.point)
    for i in range(n):
        amat[i][i] += 2
        bvecq[i] += -2 * m.point[i]
    for r in range(k):
        for s in range(k):
            g = dot(bmat[r], bmat[s])
            amat[n + r][n + s] += 2 * g
        for i in range(n):
            amat[i][n + r] += -2 * bmat[r][i]
            amat[n + r][i] += -2 * bmat[r][i]
        bvecq[n + r] += 2 * dot(bmat[r], m.point)
    q = Quadratic(tuple(tuple(row) for row in amat), tuple(bvecq), cq)
    solved = minimize_over_hpolyhedron(q, h)
    if solved is None:
        return DistanceUnknown("distance program returned no candidates")
    value, xu = solved
    x = xu[:n]
    if value == 0:
        return Intersects(x)
    return PositiveDistance(value, exact=True, note="attained squared distance")


def _find_manifold_member(f, m) -> Vec | None:
    if m.flat_dim == 0:
        return m.point
    if m.flat_dim == 1 and isinstance(f, QuadSublevel):
        return _line_section_point(f, m.point, m.basis[0])
    return None


def intersects_manifold(f: SetDescriptor, m: AffineManifold) -> bool | None:
    """Exact emptiness/nonemptiness of F ∩ M where decidable."""
    if isinstance(f, HPolyhedron):
        rows = list(f.a)
        rhs = list(f.b)
        for row, b in zip(m.a, m.b):
            rows.append(row)
            rhs.append(b)
            rows.append(vscale(-ONE, row))
            rhs.append(-b)
        res = lp_solve(tuple(rows), tuple(rhs), zeros(f.dim))
        return res.status == "optimal"
    if isinstance(f, MotzkinSet) and f.is_polyhedral_cone and not isinstance(f.compact, Ball):
        if isinstance(f.compact, FinitePointSet):
            return any(
                intersects_manifold(
                    dd_convert(motzkin_to_vpoly(MotzkinSet(PolytopeK.build([y]), f.cone))), m
                )
                for y in f.compact.points
            )
        return intersects_manifold(dd_convert(motzkin_to_vpoly(f)), m)
    if isinstance(f, QuadSublevel):
        if m.flat_dim == 0:
            return contains(f, m.point)
        if m.flat_dim == 1:
            return _line_section_feasible(f, m.point, m.basis[0])
        return None
    if isinstance(f, Epigraph1D):
        return _epigraph_line_intersects(m)
    if isinstance(f, ProductSet):
        return None
    return None


# ---------------------------------------------------------------------------
# exact line sections of quadratic sublevel sets
# ---------------------------------------------------------------------------

_NINF = ("ninf",)
_PINF = ("pinf",)


def _ep_cmp(x, y) -> int:
    if x == y:
        return 0
    if x is _NINF or y is _PINF:
        return -1
    if x is _PINF or y is _NINF:
        return 1
    return surd_cmp(x, y)


def _interval_intersect(a, b):
    lo = a[0] if _ep_cmp(a[0], b[0]) >= 0 else b[0]
    hi = a[1] if _ep_cmp(a[1], b[1]) <= 0 else b[1]
    if _ep_cmp(lo, hi) > 0:
        return None
    return (lo, hi)


def _quadratic_on_line(q: Quadratic, point: Vec, direction: Vec):
    ad = matvec(q.a, direction)
    alpha = dot(direction, ad) / 2
    beta = dot(point, ad) + dot(q.b, direction)
    gamma = q.evaluate(point)
    return alpha, beta, gamma


def _solution_intervals(alpha, beta, gamma):
    """Closed solution set of ``alpha t^2 + beta t + gamma <= 0`` as a union
    of at most two intervals with surd endpoints."""
    if alpha == 0:
        if beta == 0:
            return [(_NINF, _PINF)] if gamma <= 0 else []
        t0 = surd(-gamma / beta)
        return [(_NINF, t0)] if beta > 0 else [(t0, _PINF)]
    disc = beta * beta - 4 * alpha * gamma
    center = -beta / (2 * alpha)
    spread = ONE / (2 * alpha)
    if alpha > 0:
        if disc < 0:
            return []
        lo = surd(center, -abs(spread), disc)
        hi = surd(center, abs(spread), disc)
        return [(lo, hi)]
    if disc <= 0:
        return [(_NINF, _PINF)]
    lo = surd(center, -abs(spread), disc)
    hi = surd(center, abs(spread), disc)
    return [(_NINF, lo), (hi, _PINF)]


def _line_section_intervals(f: QuadSublevel, point: Vec, direction: Vec):
    base = f.base
    if not isinstance(base, HPolyhedron):
        return None
    systems = []
    for row, rhs in zip(base.a, base.b):
        a = ZERO
        b = dot(row, direction)
        g = dot(row, point) - rhs
        systems.append(_solution_intervals(a, b, g))
    for q in f.constraints:
        systems.append(_solution_intervals(*_quadratic_on_line(q, point, direction)))
    current = [(_NINF, _PINF)]
    for sys_intervals in systems:
        nxt = []
        for cur in current:
            for piece in sys_intervals:
                inter = _interval_intersect(cur, piece)
                if inter is not None:
                    nxt.append(inter)
        if not nxt:
            return []
        current = nxt
    return current


def _line_section_feasible(f: QuadSublevel, point: Vec, direction: Vec) -> bool | None:
    intervals = _line_section_intervals(f, point, direction)
    if intervals is None:
        return None
    return bool(intervals)


def _line_section_point(f: QuadSublevel, point: Vec, direction: Vec) -> Vec | None:
    """A rational point of F on the line, when one is easy to pin down."""
    intervals = _line_section_intervals(f, point, direction)
    if not intervals:
        return None
    candidates: list[Fraction] = []
    for lo, hi in intervals:
        if lo is not _NINF and lo[1] == 0:
            candidates.append(lo[0])
        if hi is not _PINF and hi[1] == 0:
            candidates.append(hi[0])
        approx = []
        if lo is _NINF and hi is _PINF:
            approx = [ZERO]
        elif lo is _NINF:
            approx = [Fraction(int(surd_float(hi)) - 1)]
        elif hi is _PINF:
            approx = [Fraction(int(surd_float(lo)) + 1)]
        else:
            mid = (surd_float(lo) + surd_float(hi)) / 2
            approx = [Fraction(mid).limit_denominator(10**6)]
        candidates.extend(approx)
    for t in candidates:
        x = vadd(point, vscale(t, direction))
        if contains(f, x) is True:
            return x
    return None


def _epigraph_line_intersects(m: AffineManifold) -> bool | None:
    """Does a line meet the epigraph of x^2 + exp(-x^2)?  Decided via the
    bound ``exp(-s) >= 1 - s`` (so f >= 1 everywhere, f >= x^2 always)."""
    if m.dim != 2:
        raise DimensionMismatchError("the epigraph lives in the plane")
    if m.flat_dim == 0:
        return _epigraph_contains(m.point)
    d = m.basis[0]
    if d[0] == 0:
        return True  # vertical line: (x0, y) enters the epigraph for large y
    # y = slope * x + icept along the line
    slope = d[1] / d[0]
    icept = m.point[1] - slope * m.point[0]
    # membership on the line needs g(x) + exp(-x^2) <= 0, g = x^2 - slope x - icept;
    # exp(-x^2) > 0 everywhere and exp(-x^2) >= 1 - x^2, so either bound can refute
    quad_min = -icept - slope * slope / 4  # min of g over the whole line
    if quad_min > 0:
        return False
    lin_bound = 1 - abs(slope) - icept  # minorant of g + exp on |x| <= 1
    if lin_bound > 0 and _quad_min_outside_unit(slope, icept) >= 0:
        return False
    # certified hit: evaluate with upper bounds at a few rationals
    for t in range(-12, 13):
        x = Fraction(t, 2)
        _, hi = exp_bounds(-x * x, 32)
        if x * x - slope * x - icept + hi <= 0:
            return True
    return None


def _quad_min_outside_unit(slope, icept) -> Fraction:
    g = lambda x: x * x - slope * x - icept
    vertex = slope / 2
    vals = [g(ONE), g(-ONE)]
    if abs(vertex) >= 1:
        vals.append(g(vertex))
    return min(vals)


# ---------------------------------------------------------------------------
# separating slabs via certified one-sided bounds of linear functionals
# ---------------------------------------------------------------------------


def linear_lower_bound(f: SetDescriptor, w: Vec) -> Fraction | None:
    """A certified lower bound of ``inf {w.x : x in F}``, or None.

    Polyhedral data is exact; quadratic sublevel sets combine the base
    relaxation with a weak-duality sweep ``inf_x w.x + sum(lam q(x))`` over a
    small grid of nonnegative multipliers (any feasible value is a bound);
    the epigraph uses its two certified minorants.
    """
    if isinstance(f, HPolyhedron):
        res = lp_solve(f.a, f.b, w)
        return res.value if res.status == "optimal" else None
    if isinstance(f, MotzkinSet) and f.is_polyhedral_cone and not isinstance(f.compact, Ball):
        h = dd_convert(motzkin_to_vpoly(f))
        res = lp_solve(h.a, h.b, w)
        return res.value if res.status == "optimal" else None
    if isinstance(f, QuadSublevel):
        best = None
        if isinstance(f.base, HPolyhedron):
            res = lp_solve(f.base.a, f.base.b, w)
            if res.status == "optimal":
                best = res.value
        if len(f.constraints) <= 3:
            lam_grid = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4)]
            for lams in itertools.product(lam_grid, repeat=len(f.constraints)):
                if all(l == 0 for l in lams):
                    continue
                val = _lagrangian_value(w, f.constraints, lams)
                if val is not None and (best is None or val > best):
                    best = val
        return best
    if isinstance(f, Epigraph1D):
        alpha, beta = w
        if beta > 0:
            # w.(x, y) >= alpha x + beta x^2 and >= alpha x + beta (exp > 0, f >= 1)
            bound1 = -alpha * alpha / (4 * beta)
            return max(bound1, _epigraph_linear_refined(alpha, beta))
        if beta == 0 and alpha == 0:
            return ZERO
        return None
    return None


def _epigraph_linear_refined(alpha, beta) -> Fraction:
    # on |x| <= 1: f(x) >= 1, so w.(x,y) >= alpha x + beta >= -|alpha| + beta;
    # on |x| >= 1: f(x) >= x^2, handled by the caller's quadratic bound
    return -abs(alpha) + beta if beta > 0 else -abs(alpha)


def _lagrangian_value(w, constraints, lams) -> Fraction | None:
    """``inf_x w.x + sum(lam_i q_i(x))`` when finite: a weak-duality bound.

    The combined quadratic must be PSD with a consistent stationarity
    system; its value at a stationary point x0 simplifies to
    ``(w + sum lam b).x0 / 2 + sum lam c``.
    """
    n = len(w)
    amat = [[ZERO] * n for _ in range(n)]
    bvec = list(w)
    const = ZERO
    for lam, q in zip(lams, constraints):
        for i in range(n):
            for j in range(n):
                amat[i][j] += lam * q.a[i][j]
            bvec[i] += lam * q.b[i]
        const += lam * q.c
    amat_t = tuple(tuple(row) for row in amat)
    if not is_psd(amat_t):
        return None
    x0 = solve(amat_t, tuple(-v for v in bvec))
    if x0 is None:
        return None  # linear term escapes along the kernel: value -inf
    return dot(tuple(bvec), x0) / 2 + const


def _separating_slab(f: SetDescriptor, m: AffineManifold) -> PositiveDistance | None:
    """Search the manifold's normals for a functional separating F from M."""
    for row, rhs in zip(m.a, m.b):
        norm_sq = dot(row, row)
        if norm_sq == 0:
            continue
        lo = linear_lower_bound(f, row)
        if lo is not None and lo > rhs:
            gap = lo - rhs
            return PositiveDistance(gap * gap / norm_sq, note="separating slab")
        hi = linear_lower_bound(f, vscale(-ONE, row))
        if hi is not None and -hi < rhs:
            gap = rhs + hi
            return PositiveDistance(gap * gap / norm_sq, note="separating slab")
    return None


# ---------------------------------------------------------------------------
# f-asymptotes
# ---------------------------------------------------------------------------


def is_f_asymptote(
    f: SetDescriptor,
    m: AffineManifold,
    evidence_points: tuple[Vec, ...] | None = None,
) -> bool | None:
    """True when F misses M but approaches it arbitrarily closely.

    The emptiness leg must be certified (exactly); the zero-distance leg is
    exact for polyhedral data and evidence-based otherwise.  None means one
    leg is undecided.
    """
    dist = distance_to_manifold(f, m, evidence_points)
    if dist.kind == "intersects":
        return False
    if dist.kind == "positive":
        return False
    inter = intersects_manifold(f, m)
    if inter is not False:
        return None
    if dist.kind == "zero_evidence":
        return True
    return None


# ---------------------------------------------------------------------------
# projection closedness
# ---------------------------------------------------------------------------


def projection_closed(f: SetDescriptor, coords) -> tuple[bool | None, str]:
    """Is the image of F under the coordinate projection closed?

    Inequality systems and polyhedral Motzkin sums always project to closed
    sets.  Second-order recession cones are decided by the exact spectral
    test on the dropped coordinates (sound for any kernel that meets the
    cone only at 0, contains an interior ray, or has dimension one).
    Registered set facts answer for the built-in counterexample sets;
    otherwise the verdict is None.
    """
    n = ambient_dim(f)
    coords = sorted(set(coords))
    if not coords or coords[0] < 1 or coords[-1] > n:
        raise DimensionMismatchError("coords must be a nonempty subset of {1..n}")
    if isinstance(f, HPolyhedron):
        return True, "projections of inequality systems are again such systems"
    if isinstance(f, MotzkinSet):
        if f.is_polyhedral_cone:
            return True, (
                "the projection is the projected compact part plus a projected "
                "polyhedral cone, which is closed"
            )
        verdict = _soc_projection_closed(f.cone, coords)
        if verdict is None:
            return None, "kernel meets the cone boundary in dimension above one"
        why = (
            "projection of the compact part is compact; closedness is decided "
            "by the second-order cone kernel test"
        )
        return verdict, why
    _ensure_builtin_registrations()
    fact = _PROJECTION_FACTS.get((f, tuple(coords)))
    if fact is not None:
        return fact.verdict, fact.note
    if isinstance(f, QuadSublevel) and isinstance(f.base, HPolyhedron):
        base_v = dd_convert(f.base)
        if not base_v.is_empty and not base_v.rays and not base_v.lineality:
            return True, "the set is compact (bounded base), so every image is closed"
    return None, "no closed-form analysis applies to this set kind"


def _soc_projection_closed(cone: SecondOrderCone, coords) -> bool | None:
    dropped = [j for j in range(cone.dim) if (j + 1) not in coords]
    k = len(dropped)
    if k == 0:
        return True
    a = cone.axis
    gamma = cone.gamma
    norm_a = dot(a, a)
    mk = tuple(
        tuple(a[dropped[r]] * a[dropped[s]] - (gamma * norm_a if r == s else ZERO) for s in range(k))
        for r in range(k)
    )
    neg_mk = tuple(tuple(-x for x in row) for row in mk)
    if not is_psd(neg_mk):
        return True  # kernel contains an interior ray: the image is everything
    boundary = kernel_basis(mk, ncols=k)
    if not boundary:
        return True  # kernel meets the cone only at the origin
    if k == 1:
        return False  # projecting along a boundary ray loses closedness
    return None


def image_closed_1d(f: SetDescriptor, functional: Vec) -> tuple[bool | None, str]:
    """Closedness of ``{w.x : x in F}`` for a linear functional w.

    Built on the same machinery as the asymptote test: the image fails to be
    closed exactly when some level set ``{w.x = beta}`` is a flat asymptote
    of F.  Registered facts decide the counterexample sets; polyhedral data
    are always closed.
    """
    if isinstance(f, HPolyhedron) or (
        isinstance(f, MotzkinSet) and f.is_polyhedral_cone
    ):
        return True, "linear images of polyhedral sets are closed"
    _ensure_builtin_registrations()
    fact = _IMAGE_FACTS.get((f, vec(functional)))
    if fact is not None:
        return fact.verdict, fact.note
    return None, "no closed-form analysis applies to this functional"


# ---------------------------------------------------------------------------
# registries for the counterexample sets (populated by the gallery module)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StoredFact:
    verdict: bool
    note: str


@dataclass(frozen=True)
class NonAttainmentWitness:
    """A quadratic bounded below on the set whose infimum is not attained,
    with a member curve driving the values toward the infimum."""

    objective: Quadratic
    infimum: Fraction
    curve_points: tuple[Vec, ...]
    note: str


_EVIDENCE: dict[tuple, tuple[Vec, ...]] = {}
_ASYMPTOTE_CANDIDATES: dict[SetDescriptor, tuple[AffineManifold, ...]] = {}
_PROJECTION_FACTS: dict[tuple, StoredFact] = {}
_IMAGE_FACTS: dict[tuple, StoredFact] = {}
_FW_WITNESSES: dict[SetDescriptor, NonAttainmentWitness] = {}
_QFW_FACTS: dict[SetDescriptor, tuple[str, str]] = {}
_registrations_loaded = False


def register_asymptote_evidence(f, m, points):
    _EVIDENCE[(f, m)] = tuple(tuple(vec(p)) for p in points)
    _ASYMPTOTE_CANDIDATES.setdefault(f, ())
    _ASYMPTOTE_CANDIDATES[f] = _ASYMPTOTE_CANDIDATES[f] + (m,)


def register_projection_fact(f, coords, verdict, note):
    _PROJECTION_FACTS[(f, tuple(sorted(coords)))] = StoredFact(verdict, note)


def register_image_fact(f, functional, verdict, note):
    _IMAGE_FACTS[(f, vec(functional))] = StoredFact(verdict, note)


def register_fw_witness(f, witness: NonAttainmentWitness):
    _FW_WITNESSES[f] = witness


def register_qfw_fact(f, label, note):
    _QFW_FACTS[f] = (label, note)


def _ensure_builtin_registrations():
    global _registrations_loaded
    if _registrations_loaded:
        return
    _registrations_loaded = True
    from . import gallery  # noqa: F401  (import populates the registries)


def known_asymptotes(f: SetDescriptor):
    _ensure_builtin_registrations()
    return _ASYMPTOTE_CANDIDATES.get(f, ())


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def classify_qfw(f: SetDescriptor) -> Classification:
    """Quasi-attainment classification of a convex set descriptor.

    Rules: polyhedral sets and Motzkin sums with polyhedral recession cones
    qualify; a second-order recession cone disqualifies (Mirkil); nonempty
    intersections with convex quadratic sublevels, finite products, and
    affine images preserve the property; a verified flat asymptote
    disqualifies.  Unknown is returned when no rule applies.
    """
    _ensure_builtin_registrations()
    stored = _QFW_FACTS.get(f)
    if stored is not None:
        return Classification(stored[0], stored[1])
    if isinstance(f, HPolyhedron):
        return Classification(
            "qFW", "closed convex polyhedra attain all bounded-below quadratics"
        )
    if isinstance(f, MotzkinSet):
        if isinstance(f.compact, FinitePointSet) and len(f.compact.points) > 1:
            return Classification(
                "Unknown", "a finite compact part may make the sum nonconvex"
            )
        if f.is_polyhedral_cone:
            return Classification(
                "qFW",
                "polyhedral recession cone: the sum attains bounded-below "
                "quadratics (Kummer), and convex attainment sets are qFW",
            )
        return Classification(
            "NotQFW",
            "second-order recession cone: some planar projection is not "
            "closed (Mirkil), so a flat asymptote exists",
        )
    if isinstance(f, QuadSublevel):
        asym = _find_registered_asymptote(f)
        if asym is not None:
            return Classification(
                "NotQFW",
                "a flat asymptote was verified, so quasi-convex attainment fails",
            )
        base_cls = classify_qfw(f.base)
        if base_cls.label == "qFW" and all(is_convex(q) for q in f.constraints):
            if _nonempty_witness(f) is not None:
                return Classification(
                    "qFW",
                    "nonempty intersection of a quasi-attainment set with "
                    "convex quadratic sublevel sets stays quasi-attainment",
                )
            return Classification("Unknown", "nonemptiness not established")
        return Classification("Unknown", "no structural rule applies")
    if isinstance(f, Epigraph1D):
        return Classification(
            "qFW",
            "convex epigraph with no flat asymptotes (the boundary grows "
            "like x^2, faster than every line)",
        )
    if isinstance(f, ProductSet):
        labels = [classify_qfw(fac) for fac in f.factors]
        if all(c.label == "qFW" for c in labels):
            return Classification(
                "qFW", "finite products of quasi-attainment sets are quasi-attainment"
            )
        if any(c.label == "NotQFW" for c in labels):
            return Classification(
                "NotQFW",
                "a coordinate projection of the product is a factor that "
                "fails quasi-attainment",
            )
        return Classification("Unknown", "a factor resisted classification")
    if isinstance(f, IntersectionSet):
        labels = [classify_qfw(m) for m in f.members]
        if all(c.label == "qFW" for c in labels):
            return Classification(
                "Unknown",
                "members are quasi-attainment but nonemptiness of the "
                "intersection was not established",
            )
        return Classification("Unknown", "a member resisted classification")
    if isinstance(f, AffineImageSet):
        inner = classify_qfw(f.inner)
        if inner.label == "qFW":
            return Classification(
                "qFW", "affine images of quasi-attainment sets are quasi-attainment"
            )
        return Classification("Unknown", "inner set resisted classification")
    if isinstance(f, UnionSet):
        return Classification("Unknown", "unions of convex sets need not be convex")
    raise UnsupportedKindError(f"unknown descriptor {type(f).__name__}")


def _find_registered_asymptote(f) -> AffineManifold | None:
    for m in _ASYMPTOTE_CANDIDATES.get(f, ()):
        if is_f_asymptote(f, m) is True:
            return m
    return None


def _nonempty_witness(f: QuadSublevel) -> Vec | None:
    if f.sample_point is not None:
        return f.sample_point
    n = ambient_dim(f)
    for cand in (zeros(n),):
        if contains(f, cand) is True:
            return cand
    return None


def classify_fw_set(f: SetDescriptor) -> Classification:
    """Attainment classification of a set descriptor.

    Sound rules only: polyhedra and single convex quadratic sublevel sets
    over a polyhedral base attain (the latter is the Luo-Zhang theorem);
    Motzkin sums are decided by their recession cone; a registered,
    verified non-attainment witness or flat asymptote refutes; finite
    unions and affine images preserve the property.
    """
    _ensure_builtin_registrations()
    if isinstance(f, HPolyhedron):
        return Classification(
            "FW", "the classical attainment theorem for quadratics on polyhedra"
        )
    if isinstance(f, MotzkinSet):
        return classify_fw_motzkin(f)
    witness = _FW_WITNESSES.get(f)
    if witness is not None and _witness_validates(f, witness):
        return Classification(
            "NotFW",
            f"verified witness: {witness.note}",
        )
    if isinstance(f, QuadSublevel):
        if (
            isinstance(f.base, HPolyhedron)
            and len(f.constraints) == 1
            and is_convex(f.constraints[0])
            and _nonempty_witness(f) is not None
        ):
            return Classification(
                "FW",
                "a polyhedron with one convex quadratic constraint attains "
                "bounded-below quadratics (Luo-Zhang)",
            )
        asym = _find_registered_asymptote(f)
        if asym is not None:
            return Classification(
                "NotFW",
                "a flat asymptote exists, so the squared distance to it is "
                "bounded below but unattained",
            )
        return Classification("Unknown", "no structural rule applies")
    if isinstance(f, Epigraph1D):
        return Classification("Unknown", "no structural rule applies")
    if isinstance(f, UnionSet):
        labels = [classify_fw_set(m) for m in f.members]
        if all(c.label == "FW" for c in labels):
            return Classification("FW", "finite unions of attainment sets attain")
        return Classification(
            "Unknown", "the union rule needs every member to attain"
        )
    if isinstance(f, AffineImageSet):
        inner = classify_fw_set(f.inner)
        if inner.label == "FW":
            return Classification("FW", "affine images of attainment sets attain")
        return Classification("Unknown", "inner set resisted classification")
    if isinstance(f, ProductSet):
        labels = [classify_fw_set(fac) for fac in f.factors]
        if any(c.label == "NotFW" for c in labels):
            return Classification(
                "NotFW", "a coordinate projection onto a factor fails attainment"
            )
        flat = [fac for fac in f.factors if _is_whole_space(fac)]
        if all(c.label == "FW" for c in labels) and len(flat) >= len(f.factors) - 1:
            return Classification(
                "FW", "product of an attainment set with full coordinate spaces"
            )
        return Classification(
            "Unknown", "products of attainment sets do not attain in general"
        )
    if isinstance(f, IntersectionSet):
        return Classification(
            "Unknown", "intersections of attainment sets do not attain in general"
        )
    raise UnsupportedKindError(f"unknown descriptor {type(f).__name__}")


def _is_whole_space(f) -> bool:
    return isinstance(f, HPolyhedron) and len(f.a) == 0


def _witness_validates(f, witness: NonAttainmentWitness) -> bool:
    """Check the witness evidence: curve points are members, values strictly
    decrease toward the claimed infimum, and stay above it."""
    vals = []
    for x in witness.curve_points:
        if contains(f, x) is not True:
            return False
        vals.append(witness.objective.evaluate(x))
    if not vals:
        return False
    if any(v <= witness.infimum for v in vals):
        return False
    if any(a <= b for a, b in zip(vals, vals[1:])):
        return False
    return vals[-1] - witness.infimum < Fraction(1, 1000)
