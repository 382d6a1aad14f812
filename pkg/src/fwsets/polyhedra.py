"""Exact polyhedral calculus: representations, conversion, projection, polarity.

Conventions
-----------
* ``HPolyhedron(A, b)`` is ``{x : A x <= b}``.
* ``VPolyhedron`` is ``conv(vertices) + cone(rays) + span(lineality)``;
  an empty vertex list encodes the empty set.
* ``PolyCone`` is generated by finitely many rays (lines appear as opposite
  ray pairs); its optional H-form is ``{x : h . x <= 0}`` for each stored
  halfspace normal ``h``.

All arithmetic is rational.  Conversion between the two polyhedron forms is
the double description method run on a pointed homogenized cone; lineality is
split off exactly beforehand, so the classical combinatorial adjacency test
applies.  Size caps (ambient dimension <= 10, at most 64 rows or generators)
keep the desk-scale blowup predictable; exceeding them raises SizeCapError.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatchError, EmptySetError, SizeCapError
from .linalg import (
    Mat,
    ONE,
    Vec,
    ZERO,
    basis_of_span,
    complement_basis,
    dot,
    is_zero,
    kernel_basis,
    mat,
    primitive,
    rank,
    solve,
    unit,
    vadd,
    vec,
    vscale,
    zeros,
)

# user-facing polyhedra live in dimension <= 10; internal cones may need a
# homogenizing coordinate (n+1) or a parameter space of up to 12 generators
MAX_INPUT_DIM = 10
MAX_CONE_DIM = 13


def _row_cap() -> int:
    raw = os.environ.get("FWSETS_SIZE_CAP")
    if raw is None:
        return 64
    try:
        return max(1, int(raw))
    except ValueError:
        return 64


def _check_caps(dim: int, count: int, what: str) -> None:
    if dim > MAX_CONE_DIM:
        raise SizeCapError(f"cone dimension {dim} exceeds cap {MAX_CONE_DIM}")
    cap = _row_cap()
    if count > cap:
        raise SizeCapError(f"{what} count {count} exceeds cap {cap}")


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HPolyhedron:
    """Inequality system ``{x in R^dim : A x <= b}``."""

    a: Mat
    b: Vec
    dim: int

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise DimensionMismatchError("row count of A differs from length of b")
        for row in self.a:
            if len(row) != self.dim:
                raise DimensionMismatchError("row width differs from ambient dimension")
        if self.dim < 1:
            raise DimensionMismatchError("ambient dimension must be at least 1")

    @staticmethod
    def from_rows(rows, rhs, dim=None) -> "HPolyhedron":
        m = mat(rows)
        if dim is None:
            if not m:
                raise DimensionMismatchError("dimension required for an empty system")
            dim = len(m[0])
        return HPolyhedron(m, vec(rhs), dim)

    def contains(self, x: Vec) -> bool:
        if len(x) != self.dim:
            raise DimensionMismatchError("point dimension mismatch")
        return all(dot(row, x) <= rhs for row, rhs in zip(self.a, self.b))


@dataclass(frozen=True)
class VPolyhedron:
    """Generator form; empty ``vertices`` means the empty set.

    ``empty_certificate`` carries a Farkas witness when this value was
    produced by converting an infeasible inequality system.
    """

    vertices: tuple[Vec, ...]
    rays: tuple[Vec, ...]
    lineality: tuple[Vec, ...]
    dim: int
    empty_certificate: Vec | None = field(default=None, compare=False)

    def __post_init__(self):
        for group in (self.vertices, self.rays, self.lineality):
            for g in group:
                if len(g) != self.dim:
                    raise DimensionMismatchError("generator dimension mismatch")
        for r in self.rays:
            if is_zero(r):
                raise DimensionMismatchError("zero vector is not a valid ray")

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @staticmethod
    def from_points(points, dim=None) -> "VPolyhedron":
        pts = tuple(vec(p) for p in points)
        if dim is None:
            if not pts:
                raise DimensionMismatchError("dimension required for an empty point set")
            dim = len(pts[0])
        return VPolyhedron(pts, (), (), dim)


@dataclass(frozen=True)
class PolyCone:
    """Polyhedral convex cone spanned by ``generators`` (V-form).

    ``halfspaces``, when present, is an H-form of the same cone:
    ``{x : h . x <= 0 for every h}``.  Consistency of the two forms is
    checked by :meth:`checked`.
    """

    generators: tuple[Vec, ...]
    dim: int
    halfspaces: tuple[Vec, ...] | None = None

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.dim:
                raise DimensionMismatchError("generator dimension mismatch")
            if is_zero(g):
                raise DimensionMismatchError("zero vector is not a valid generator")
        if self.halfspaces is not None:
            for h in self.halfspaces:
                if len(h) != self.dim:
                    raise DimensionMismatchError("halfspace dimension mismatch")

    @staticmethod
    def from_generators(gens, dim=None) -> "PolyCone":
        gs = tuple(primitive(vec(g)) for g in gens)
        gs = tuple(dict.fromkeys(g for g in gs if not is_zero(g)))
        if dim is None:
            if not gs:
                raise DimensionMismatchError("dimension required for the zero cone")
            dim = len(gs[0])
        return PolyCone(gs, dim)

    @staticmethod
    def from_halfspaces(rows, dim) -> "PolyCone":
        hs = tuple(primitive(vec(r)) for r in rows)
        hs = tuple(dict.fromkeys(h for h in hs if not is_zero(h)))
        rays, lin = cone_h_to_v(hs, dim)
        gens = rays + tuple(lin) + tuple(vscale(-ONE, v) for v in lin)
        gens = tuple(dict.fromkeys(primitive(g) for g in gens))
        return PolyCone(gens, dim, halfspaces=hs)

    def with_halfspaces(self) -> "PolyCone":
        if self.halfspaces is not None:
            return self
        return PolyCone(self.generators, self.dim, halfspaces=cone_v_to_h(self.generators, self.dim))

    def contains(self, x: Vec) -> bool:
        if len(x) != self.dim:
            raise DimensionMismatchError("point dimension mismatch")
        if self.halfspaces is not None:
            return all(dot(h, x) <= 0 for h in self.halfspaces)
        if is_zero(x):
            return True
        if not self.generators:
            return False
        return _in_generated_cone(self.generators, x)

    def checked(self) -> "PolyCone":
        """Verify mutual membership of the two stored forms; return self."""
        if self.halfspaces is None:
            return self
        for g in self.generators:
            if any(dot(h, g) > 0 for h in self.halfspaces):
                raise DimensionMismatchError("generator violates a stored halfspace")
        rays, lin = cone_h_to_v(self.halfspaces, self.dim)
        for r in rays + tuple(lin) + tuple(vscale(-ONE, v) for v in lin):
            if not is_zero(r) and not _in_generated_cone(self.generators, r):
                raise DimensionMismatchError("halfspace form is larger than the generator form")
        return self

    def is_trivial(self) -> bool:
        return not self.generators


# ---------------------------------------------------------------------------
# double description on a pointed cone
# ---------------------------------------------------------------------------


def _pointed_dd(rows: list[Vec], d: int) -> list[Vec]:
    """Extreme rays of ``{x in R^d : r . x <= 0 for r in rows}``.

    Requires the row matrix to have full column rank d (pointed cone).
    Classical incremental double description: seed with a simplicial cone
    from d independent rows, then insert the remaining rows one at a time,
    pairing adjacent rays across the new hyperplane.
    """
    if d == 0:
        return []
    # greedy selection of d independent rows for the seed
    seed: list[int] = []
    chosen: list[Vec] = []
    for i, row in enumerate(rows):
        if rank(tuple(chosen + [row])) > len(chosen):
            chosen.append(row)
            seed.append(i)
        if len(seed) == d:
            break
    if len(seed) < d:
        raise DimensionMismatchError("cone is not pointed: rows do not have full rank")

    # rays of the simplicial seed cone: columns of -M^{-1}
    m = tuple(rows[i] for i in seed)
    rays: list[Vec] = []
    zero_sets: list[set[int]] = []
    for j in range(d):
        col = _solve_unique(m, tuple(-ONE if k == j else ZERO for k in range(d)))
        rays.append(primitive(col))
        zero_sets.append({seed[k] for k in range(d) if k != j})

    processed = set(seed)
    for t, row in enumerate(rows):
        if t in processed:
            continue
        vals = [dot(row, r) for r in rays]
        if all(v <= 0 for v in vals):
            for i, v in enumerate(vals):
                if v == 0:
                    zero_sets[i].add(t)
            processed.add(t)
            continue
        keep_idx = [i for i, v in enumerate(vals) if v <= 0]
        pos_idx = [i for i, v in enumerate(vals) if v > 0]
        neg_idx = [i for i, v in enumerate(vals) if v < 0]
        new_rays: list[Vec] = []
        new_zsets: list[set[int]] = []
        for i in keep_idx:
            zs = set(zero_sets[i])
            if vals[i] == 0:
                zs.add(t)
            new_rays.append(rays[i])
            new_zsets.append(zs)
        for p in pos_idx:
            for q in neg_idx:
                common = zero_sets[p] & zero_sets[q]
                adjacent = True
                for k in range(len(rays)):
                    if k != p and k != q and common <= zero_sets[k]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = primitive(
                    vadd(vscale(vals[p], rays[q]), vscale(-vals[q], rays[p]))
                )
                if is_zero(combo):
                    continue
                new_rays.append(combo)
                new_zsets.append(common | {t})
        rays, zero_sets = [], []
        seen: dict[Vec, int] = {}
        for r, zs in zip(new_rays, new_zsets):
            if r in seen:
                zero_sets[seen[r]] |= zs
            else:
                seen[r] = len(rays)
                rays.append(r)
                zero_sets.append(zs)
        processed.add(t)
    return rays


def _solve_unique(m: Mat, b: Vec) -> Vec:
    x = solve(m, b)
    if x is None:
        raise DimensionMismatchError("singular system in dd seed")
    return x


def cone_h_to_v(rows, d: int) -> tuple[tuple[Vec, ...], list[Vec]]:
    """Generators of ``{x : r . x <= 0}``: (extreme rays, lineality basis)."""
    rows = [vec(r) for r in rows if not is_zero(vec(r))]
    _check_caps(d, len(rows), "row")
    lin = kernel_basis(tuple(rows), ncols=d) if rows else [unit(d, i) for i in range(d)]
    comp = complement_basis(lin, d)
    k = len(comp)
    if k == 0:
        return (), lin
    reduced = []
    for r in rows:
        rr = tuple(dot(r, c) for c in comp)
        if not is_zero(rr):
            reduced.append(rr)
    rays_s = _pointed_dd(reduced, k)
    rays = []
    for s in rays_s:
        x = zeros(d)
        for coeff, c in zip(s, comp):
            x = vadd(x, vscale(coeff, c))
        rays.append(primitive(x))
    return tuple(dict.fromkeys(rays)), lin


def cone_v_to_h(generators, d: int) -> tuple[Vec, ...]:
    """Halfspace normals of the cone spanned by ``generators``.

    Bipolar construction: the negative polar ``{c : g . c <= 0}`` is an
    H-cone whose generators are exactly the halfspace normals of the input
    (lineality of the polar contributes an opposite pair).
    """
    gens = [primitive(vec(g)) for g in generators]
    gens = [g for g in gens if not is_zero(g)]
    _check_caps(d, len(gens), "generator")
    rays, lin = cone_h_to_v(gens, d)
    rows = list(rays)
    for v in lin:
        rows.append(primitive(v))
        rows.append(primitive(vscale(-ONE, v)))
    return tuple(dict.fromkeys(rows))


def _in_generated_cone(generators, x: Vec) -> bool:
    """Exact membership of x in cone(generators) via LP feasibility."""
    p = len(generators)
    n = len(x)
    rows = []
    rhs = []
    for sign in (ONE, -ONE):
        for i in range(n):
            rows.append(tuple(sign * g[i] for g in generators))
            rhs.append(sign * x[i])
    for j in range(p):
        rows.append(tuple(-ONE if k == j else ZERO for k in range(p)))
        rhs.append(ZERO)
    res = lp_solve(mat(rows), vec(rhs), zeros(p))
    return res.status == "optimal"


# ---------------------------------------------------------------------------
# conversions between H and V polyhedron forms
# ---------------------------------------------------------------------------


def dd_convert(p):
    """Convert between the two polyhedron representations, exactly."""
    if isinstance(p, (HPolyhedron, VPolyhedron)) and p.dim > MAX_INPUT_DIM:
        raise SizeCapError(f"ambient dimension {p.dim} exceeds cap {MAX_INPUT_DIM}")
    if isinstance(p, HPolyhedron):
        return _h_to_v(p)
    if isinstance(p, VPolyhedron):
        return _v_to_h(p)
    raise TypeError("dd_convert expects HPolyhedron or VPolyhedron")


def _h_to_v(p: HPolyhedron) -> VPolyhedron:
    n = p.dim
    _check_caps(n + 1, len(p.a) + 1, "row")
    hom_rows = [row + (-rhs,) for row, rhs in zip(p.a, p.b)]
    hom_rows.append(zeros(n) + (-ONE,))
    rays, lin = cone_h_to_v(hom_rows, n + 1)
    vertices = []
    vrays = []
    for r in rays:
        t = r[n]
        if t > 0:
            vertices.append(tuple(x / t for x in r[:n]))
        else:
            vrays.append(primitive(r[:n]))
    lineality = tuple(primitive(v[:n]) for v in lin)
    if not vertices:
        cert = farkas_certificate(p)
        return VPolyhedron((), (), (), n, empty_certificate=cert)
    return VPolyhedron(
        tuple(dict.fromkeys(vertices)),
        tuple(dict.fromkeys(vrays)),
        lineality,
        n,
    )


def _v_to_h(p: VPolyhedron) -> HPolyhedron:
    n = p.dim
    if p.is_empty:
        return HPolyhedron((zeros(n),), (-ONE,), n)
    gens = [v + (ONE,) for v in p.vertices]
    gens += [r + (ZERO,) for r in p.rays]
    for l in p.lineality:
        gens.append(l + (ZERO,))
        gens.append(vscale(-ONE, l) + (ZERO,))
    rows = cone_v_to_h(gens, n + 1)
    a_rows = []
    rhs = []
    for row in rows:
        coeffs, beta = row[:n], row[n]
        if is_zero(coeffs):
            # row constrains only the homogenizing coordinate
            continue
        a_rows.append(coeffs)
        rhs.append(-beta)
    return HPolyhedron(tuple(a_rows), tuple(rhs), n)


# ---------------------------------------------------------------------------
# Fourier-Motzkin projection
# ---------------------------------------------------------------------------


def project_fm(p: HPolyhedron, coords) -> HPolyhedron:
    """Exact image of ``p`` under the projection onto ``coords`` (1-based).

    Eliminates the complementary variables one at a time; each elimination
    combines every positive row with every negative row, which is sound and
    complete for projections of inequality systems.
    """
    coords = sorted(set(coords))
    if not coords or coords[0] < 1 or coords[-1] > p.dim:
        raise DimensionMismatchError("coords must be a nonempty subset of {1..n}")
    keep = [c - 1 for c in coords]
    drop = [j for j in range(p.dim) if j not in keep]
    rows = [row + (rhs,) for row, rhs in zip(p.a, p.b)]
    width = p.dim
    for j in sorted(drop, reverse=True):
        rows = _eliminate(rows, j, width)
        width -= 1
        # after eliminating column j the remaining original columns shift left
    a_rows = []
    rhs = []
    for row in rows:
        coeffs, beta = row[:-1], row[-1]
        if is_zero(coeffs):
            if beta >= 0:
                continue
            a_rows.append(zeros(len(keep)))
            rhs.append(beta)
            continue
        a_rows.append(coeffs)
        rhs.append(beta)
    return HPolyhedron(tuple(a_rows), tuple(rhs), len(keep))


def _eliminate(rows: list[tuple], j: int, width: int) -> list[tuple]:
    pos, neg, zero = [], [], []
    for row in rows:
        c = row[j]
        if c > 0:
            pos.append(row)
        elif c < 0:
            neg.append(row)
        else:
            zero.append(row)
    out = [row[:j] + row[j + 1 : width] + (row[width],) for row in zero]
    for rp in pos:
        for rn in neg:
            combo = tuple(
                rp[k] * (-rn[j]) + rn[k] * rp[j] for k in range(width + 1) if k != j
            )
            out.append(combo)
    cap = 64 * _row_cap()
    if len(out) > cap:
        raise SizeCapError(f"projection blew past {cap} intermediate rows")
    return _prune(out)


def _prune(rows: list[tuple]) -> list[tuple]:
    best: dict[Vec, Fraction] = {}
    order: list[Vec] = []
    for row in rows:
        coeffs, beta = row[:-1], row[-1]
        if is_zero(coeffs):
            if beta >= 0:
                continue
            key = zeros(len(coeffs))
            if key not in best or beta < best[key]:
                if key not in best:
                    order.append(key)
                best[key] = beta
            continue
        prim = primitive(coeffs)
        scale = next((c / pc for c, pc in zip(coeffs, prim) if pc != 0))
        scaled_beta = beta / scale
        if prim not in best or scaled_beta < best[prim]:
            if prim not in best:
                order.append(prim)
            best[prim] = scaled_beta
    return [key + (best[key],) for key in order]


# ---------------------------------------------------------------------------
# cone and polyhedron operations
# ---------------------------------------------------------------------------


def polar_cone(d: PolyCone) -> PolyCone:
    """Positive polar ``{c : c . x >= 0 for every x in the cone}``."""
    # {c : -g . c <= 0}  ==  {c : g . c >= 0}
    rows = tuple(vscale(-ONE, g) for g in d.generators)
    return PolyCone.from_halfspaces(rows, d.dim)


def intersect(p: HPolyhedron, q: HPolyhedron) -> HPolyhedron:
    if p.dim != q.dim:
        raise DimensionMismatchError("intersection of different ambient dimensions")
    return HPolyhedron(p.a + q.a, p.b + q.b, p.dim)


def minkowski_sum(p: VPolyhedron, q: VPolyhedron) -> VPolyhedron:
    if p.dim != q.dim:
        raise DimensionMismatchError("sum of different ambient dimensions")
    if p.is_empty or q.is_empty:
        return VPolyhedron((), (), (), p.dim)
    vertices = tuple(
        dict.fromkeys(vadd(v, w) for v in p.vertices for w in q.vertices)
    )
    rays = tuple(dict.fromkeys(tuple(primitive(r) for r in p.rays + q.rays)))
    lin = tuple(basis_of_span(p.lineality + q.lineality, p.dim))
    return VPolyhedron(vertices, rays, lin, p.dim)


def recession_cone(p: HPolyhedron) -> PolyCone:
    """``{d : A d <= 0}`` with generators computed by double description."""
    return PolyCone.from_halfspaces(p.a, p.dim)


def vpoly_contains(p: VPolyhedron, x: Vec) -> bool:
    """Exact membership in a V-polyhedron via LP feasibility."""
    if p.is_empty:
        return False
    nv, nr, nl = len(p.vertices), len(p.rays), len(p.lineality)
    cols = list(p.vertices) + list(p.rays) + list(p.lineality)
    nvars = nv + nr + nl
    rows = []
    rhs = []
    for sign in (ONE, -ONE):
        for i in range(p.dim):
            rows.append(tuple(sign * c[i] for c in cols))
            rhs.append(sign * x[i])
    conv_row = tuple(ONE if k < nv else ZERO for k in range(nvars))
    rows.append(conv_row)
    rhs.append(ONE)
    rows.append(vscale(-ONE, conv_row))
    rhs.append(-ONE)
    for k in range(nv + nr):
        rows.append(tuple(-ONE if j == k else ZERO for j in range(nvars)))
        rhs.append(ZERO)
    res = lp_solve(mat(rows), vec(rhs), zeros(nvars))
    return res.status == "optimal"


# ---------------------------------------------------------------------------
# exact linear programming (two-phase simplex, Bland's rule)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LPResult:
    """Outcome of ``min c.x  s.t.  A x <= b`` in exact rationals.

    status: "optimal" (x, value set), "unbounded" (x feasible, ray improves),
    or "infeasible" (farkas is a certificate: farkas >= 0, farkas A = 0,
    farkas . b < 0).
    """

    status: str
    x: Vec | None = None
    value: Fraction | None = None
    ray: Vec | None = None
    farkas: Vec | None = None


def lp_solve(a: Mat, b: Vec, c: Vec) -> LPResult:
    m = len(a)
    n = len(c)
    if m == 0:
        if is_zero(c):
            return LPResult("optimal", zeros(n), ZERO)
        ray = tuple(-ci for ci in c)
        return LPResult("unbounded", zeros(n), None, ray)
    if n == 0:
        bad = next((i for i in range(m) if b[i] < 0), None)
        if bad is None:
            return LPResult("optimal", (), ZERO)
        lam = tuple(ONE if i == bad else ZERO for i in range(m))
        return LPResult("infeasible", farkas=lam)

    # standard form: columns are u (n), w (n), s (m); x = u - w
    sigma = [ONE if b[i] >= 0 else -ONE for i in range(m)]
    ncols = 2 * n + m
    tab = []
    for i in range(m):
        row = [sigma[i] * a[i][j] for j in range(n)]
        row += [-sigma[i] * a[i][j] for j in range(n)]
        row += [sigma[i] if k == i else ZERO for k in range(m)]
        row.append(sigma[i] * b[i])
        tab.append(row)
    basis = list(range(ncols, ncols + m))  # artificial indices

    # phase 1 objective row: reduced costs of min sum(artificials)
    art_cost = [ZERO] * (ncols + m) + [ZERO]
    for j in range(ncols):
        art_cost[j] = -sum(tab[i][j] for i in range(m))
    for i in range(m):
        art_cost[ncols + i] = ZERO
    art_cost[-1] = -sum(tab[i][-1] for i in range(m))
    # extend tableau with artificial columns
    for i in range(m):
        tab[i] = tab[i][:-1] + [ONE if k == i else ZERO for k in range(m)] + [tab[i][-1]]

    _simplex(tab, art_cost, basis, ncols + m)
    phase1 = -art_cost[-1]
    if phase1 > 0:
        # optimal dual of phase 1, read off the artificial reduced costs:
        # y_i = 1 - redcost(a_i); then lambda = -sigma*y is the Farkas witness
        y = [ONE - art_cost[ncols + i] for i in range(m)]
        lam = tuple(-sigma[i] * y[i] for i in range(m))
        return LPResult("infeasible", farkas=lam)

    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= ncols:
            pivot_col = next(
                (j for j in range(ncols) if tab[i][j] != 0), None
            )
            if pivot_col is None:
                continue  # redundant row; artificial stays basic at zero
            _pivot(tab, None, i, pivot_col, basis)

    # phase 2
    cost = [ZERO] * (ncols + m) + [ZERO]
    full_c = list(c) + [-ci for ci in c] + [ZERO] * m
    for j in range(ncols):
        cost[j] = full_c[j]
    for i in range(m):
        if basis[i] < ncols:
            cb = full_c[basis[i]]
            if cb != 0:
                for j in range(ncols + m + 1):
                    cost[j] -= cb * tab[i][j]
    for i in range(m):
        cost[ncols + i] = ONE  # block artificial columns from re-entering
    status, ray_col = _simplex(tab, cost, basis, ncols, allowed=ncols)

    x = _extract_x(tab, basis, n, ncols, m)
    if status == "unbounded":
        direction = [ZERO] * ncols
        direction[ray_col] = ONE
        for i in range(m):
            if basis[i] < ncols:
                direction[basis[i]] = -tab[i][ray_col]
        ray = tuple(direction[j] - direction[n + j] for j in range(n))
        return LPResult("unbounded", x, None, ray)
    value = dot(c, x)
    return LPResult("optimal", x, value)


def _extract_x(tab, basis, n, ncols, m) -> Vec:
    z = [ZERO] * ncols
    for i in range(m):
        if basis[i] < ncols:
            z[basis[i]] = tab[i][-1]
    return tuple(z[j] - z[n + j] for j in range(n))


def _simplex(tab, cost, basis, width, allowed=None):
    """Bland-rule simplex on an explicit tableau; mutates in place."""
    m = len(tab)
    limit = allowed if allowed is not None else width
    while True:
        enter = next((j for j in range(limit) if cost[j] < 0), None)
        if enter is None:
            return "optimal", None
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return "unbounded", enter
        _pivot(tab, cost, leave, enter, basis)


def _pivot(tab, cost, row, col, basis):
    pv = tab[row][col]
    tab[row] = [x / pv for x in tab[row]]
    for i in range(len(tab)):
        if i != row and tab[i][col] != 0:
            f = tab[i][col]
            tab[i] = [x - f * y for x, y in zip(tab[i], tab[row])]
    if cost is not None and cost[col] != 0:
        f = cost[col]
        for j in range(len(cost)):
            cost[j] -= f * tab[row][j]
    basis[row] = col


def feasible_point(p: HPolyhedron) -> Vec | None:
    res = lp_solve(p.a, p.b, zeros(p.dim))
    return res.x if res.status == "optimal" else None


def farkas_certificate(p: HPolyhedron) -> Vec | None:
    """Farkas witness of infeasibility, or None when the system is feasible."""
    res = lp_solve(p.a, p.b, zeros(p.dim))
    if res.status != "infeasible":
        return None
    return res.farkas


def require_nonempty(p: HPolyhedron, what: str = "polyhedron") -> None:
    cert = farkas_certificate(p)
    if cert is not None:
        raise EmptySetError(f"{what} is empty", certificate=cert)
