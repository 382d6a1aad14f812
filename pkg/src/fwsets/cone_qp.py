"""Quadratics on polyhedral cones: boundedness, value function, exact minima.

For a cone ``D = {Z u : u >= 0}`` (columns of Z are the generators) and a
symmetric G, the value function is

    f(c) = inf_{x in D} c.x + 1/2 x.G x .

Its domain is cut out by the zero set of the form on the cone:
``dom(f) = {c : c.x >= 0 for every x in D with x.G x = 0}``.  Writing
``H = Z^T G Z``, the zero set in parameter space decomposes into the
polyhedral pieces

    P_I = {u >= 0 : H u >= 0, u_i = 0 (i in I), (H u)_j = 0 (j not in I)}

over index subsets I, each of which double description turns into finitely
many generators; dom(f) is then the intersection of the halfspaces
``c . (Z u) >= 0`` over all piece generators.  Everything here is exact.

Minimization itself enumerates active sets of ``u >= 0`` in parameter space
and solves the stationarity system of each face in rational arithmetic; the
minimum over the collected stationary values is the exact infimum whenever
the problem is bounded below (which the domain test decides first).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import FwsetsError, NotInDomainError, SizeCapError
from .linalg import (
    Mat,
    ONE,
    Vec,
    ZERO,
    dot,
    is_zero,
    kernel_basis,
    matvec,
    primitive,
    rank,
    rref,
    solve,
    unit,
    vadd,
    vec,
    vscale,
    zeros,
)
from .polyhedra import HPolyhedron, PolyCone, cone_h_to_v, lp_solve
from .quadratics import Quadratic

MAX_GENERATORS = 12


@dataclass(frozen=True)
class ZeroSetPiece:
    """One polyhedral piece of ``{u >= 0 : u.H u = 0}`` in parameter space."""

    index_set: frozenset[int]
    cone: PolyCone
    generators: tuple[Vec, ...]


@dataclass(frozen=True)
class DomF:
    """The domain of the cone value function, as a polyhedral cone of
    admissible linear terms; ``None`` cone means the domain is empty
    (the form is negative somewhere on D, witnessed by ``negative_ray``)."""

    cone: PolyCone | None
    pieces: tuple[ZeroSetPiece, ...]
    dim: int
    negative_ray: Vec | None = None

    @property
    def is_empty(self) -> bool:
        return self.cone is None

    def contains(self, c: Vec) -> bool:
        if self.cone is None:
            return False
        return all(dot(h, c) <= 0 for h in (self.cone.halfspaces or ()))


@dataclass(frozen=True)
class BoundednessResult:
    bounded: bool
    certificate: Vec | None = None
    kind: str | None = None  # "negative_curvature" | "negative_slope"


@dataclass(frozen=True)
class ConeMinVerdict:
    """Outcome of minimizing a quadratic over a polyhedral cone.

    kind "attained": ``point`` lies in the cone exactly, ``value`` is the
    exact minimum, ``multipliers`` are the KKT multipliers of the active
    ``u_i >= 0`` bounds at the parameter-space witness.

    kind "unbounded": values strictly decrease along ``direction`` from the
    origin (already scaled so they decrease from t = 1 on).
    """

    kind: str
    value: Fraction | None = None
    point: Vec | None = None
    parameter_point: Vec | None = None
    active_set: tuple[int, ...] | None = None
    multipliers: tuple[Fraction, ...] | None = None
    direction: Vec | None = None
    curvature: str | None = None


def _form_min_on_simplex(h: Mat) -> tuple[Fraction, Vec]:
    """Exact ``min {u.H u : u >= 0, sum u = 1}`` with a witness.

    Enumerates support sets; on each face the stationarity system
    ``2 H_FF u_F = nu e, e.u_F = 1`` pins the value at nu/2 (constant on the
    whole solution set, by symmetry of H), so collecting the values of all
    faces with a nonnegative solution yields the global minimum.
    """
    p = len(h)
    best: tuple[Fraction, Vec] | None = None
    for size in range(1, p + 1):
        for f_idx in itertools.combinations(range(p), size):
            k = len(f_idx)
            rows = []
            for a in f_idx:
                rows.append(tuple(2 * h[a][b] for b in f_idx) + (-ONE,))
            rows.append(tuple(ONE for _ in f_idx) + (ZERO,))
            rhs = zeros(k) + (ONE,)
            sol = solve(tuple(rows), rhs)
            if sol is None:
                continue
            u_f, nu = sol[:k], sol[k]
            value = nu / 2
            if best is not None and value >= best[0]:
                continue
            kern = kernel_basis(tuple(rows), ncols=k + 1)
            if not kern:
                if any(x < 0 for x in u_f):
                    continue
                candidate = u_f
            else:
                # search the solution set for a nonnegative representative
                kcols = tuple(tuple(kv[i] for kv in kern) for i in range(k))
                lp_rows = tuple(tuple(-c for c in row) for row in kcols)
                lp_rhs = tuple(u_f[i] for i in range(k))
                res = lp_solve(lp_rows, lp_rhs, zeros(len(kern)))
                if res.status != "optimal":
                    continue
                candidate = tuple(
                    u_f[i] + sum(kv[i] * s for kv, s in zip(kern, res.x))
                    for i in range(k)
                )
            full = [ZERO] * p
            for pos, a in enumerate(f_idx):
                full[a] = candidate[pos]
            best = (value, tuple(full))
    if best is None:
        raise FwsetsError("simplex enumeration found no stationary face")
    return best


def _generator_matrix(d: PolyCone) -> Mat:
    """Z with the cone's generators as columns (n x p)."""
    if not d.generators:
        return tuple(() for _ in range(d.dim))
    return tuple(zip(*d.generators))


def _conjugate_form(g: Mat, d: PolyCone) -> Mat:
    """H = Z^T G Z in parameter space."""
    gens = d.generators
    gz = [matvec(g, gen) for gen in gens]
    return tuple(tuple(dot(gi, gzj) for gzj in gz) for gi in gens)


def nonneg_form_on_cone(g: Mat, d: PolyCone) -> tuple[bool, Vec | None]:
    """Decide ``x.G x >= 0`` on the cone; on failure return a witness ray."""
    if not d.generators:
        return True, None
    for gen in d.generators:
        if dot(gen, matvec(g, gen)) < 0:
            return False, gen
    h = _conjugate_form(g, d)
    value, u = _form_min_on_simplex(h)
    if value < 0:
        z = _generator_matrix(d)
        return False, primitive(matvec(z, u))
    return True, None


def zero_set_pieces(g: Mat, d: PolyCone) -> list[ZeroSetPiece]:
    """The pieces P_I covering ``{u >= 0 : u.(Z^T G Z).u = 0}``.

    Precondition: the form is nonnegative on the cone (run
    :func:`nonneg_form_on_cone` first).  Duplicate pieces are dropped.
    """
    p = len(d.generators)
    if p > MAX_GENERATORS:
        raise SizeCapError(f"{p} generators exceed the cap {MAX_GENERATORS}")
    if p == 0:
        return []
    h = _conjugate_form(g, d)
    pieces: list[ZeroSetPiece] = []
    seen: set[frozenset] = set()
    for size in range(p + 1):
        for idx in itertools.combinations(range(p), size):
            i_set = frozenset(idx)
            rows: list[Vec] = []
            for j in range(p):
                rows.append(vscale(-ONE, unit(p, j)))          # u_j >= 0
                rows.append(tuple(-h[j][k] for k in range(p)))  # (H u)_j >= 0
            for i in idx:
                rows.append(unit(p, i))                        # u_i <= 0
            for j in range(p):
                if j not in i_set:
                    rows.append(tuple(h[j][k] for k in range(p)))  # (H u)_j <= 0
            rays, lin = cone_h_to_v(rows, p)
            if lin:
                raise FwsetsError("zero-set piece unexpectedly contains a line")
            if not rays:
                continue
            key = frozenset(rays)
            if key in seen:
                continue
            seen.add(key)
            pieces.append(ZeroSetPiece(i_set, PolyCone(rays, p), rays))
    return pieces


def dom_f(g: Mat, d: PolyCone) -> DomF:
    """The polyhedral domain of ``f(c) = inf_{x in D} c.x + 1/2 x.G x``."""
    n = d.dim
    ok, ray = nonneg_form_on_cone(g, d)
    if not ok:
        return DomF(None, (), n, negative_ray=ray)
    pieces = tuple(zero_set_pieces(g, d))
    z = _generator_matrix(d)
    rows: list[Vec] = []
    for piece in pieces:
        for u in piece.generators:
            x = matvec(z, u)
            if not is_zero(x):
                rows.append(primitive(vscale(-ONE, x)))
    rows = list(dict.fromkeys(rows))
    cone = PolyCone.from_halfspaces(tuple(rows), n)
    return DomF(cone, pieces, n)


def is_bounded_below_on_cone(
    c: Vec, g: Mat, d: PolyCone, dom: DomF | None = None
) -> BoundednessResult:
    """Decide whether ``c.x + 1/2 x.G x`` is bounded below on the cone.

    The certificate on failure is exact: either a ray with negative form
    value, or a ray in the zero set of the form with ``c . ray < 0`` (values
    decrease linearly along it).
    """
    if dom is None:
        ok, ray = nonneg_form_on_cone(g, d)
        if not ok:
            return BoundednessResult(False, ray, "negative_curvature")
        pieces = zero_set_pieces(g, d)
    elif dom.is_empty:
        return BoundednessResult(False, dom.negative_ray, "negative_curvature")
    else:
        pieces = dom.pieces
    z = _generator_matrix(d)
    for piece in pieces:
        for u in piece.generators:
            x = matvec(z, u)
            if dot(c, x) < 0:
                return BoundednessResult(False, primitive(x), "negative_slope")
    return BoundednessResult(True)


class ConeProgram:
    """Reusable minimizer of ``c.x + 1/2 x.G x`` over a fixed cone.

    Caches the generator matrix, the conjugate form, the domain pieces and
    the per-active-set factorization so a family of linear terms (as in the
    two-level Motzkin reduction) can be minimized without rework.
    """

    def __init__(self, g: Mat, d: PolyCone):
        self.g = g
        self.d = d
        p = len(d.generators)
        if p > MAX_GENERATORS:
            raise SizeCapError(f"{p} generators exceed the cap {MAX_GENERATORS}")
        self.p = p
        self.z = _generator_matrix(d)
        self.h = _conjugate_form(g, d)
        self._dom: DomF | None = None
        self._face_cache: dict[tuple[int, ...], tuple[str, object]] = {}

    @property
    def dom(self) -> DomF:
        if self._dom is None:
            self._dom = dom_f(self.g, self.d)
        return self._dom

    def boundedness(self, c: Vec) -> BoundednessResult:
        return is_bounded_below_on_cone(c, self.g, self.d, dom=self.dom)

    def _face_solver(self, free: tuple[int, ...]):
        cached = self._face_cache.get(free)
        if cached is not None:
            return cached
        k = len(free)
        h_ff = tuple(tuple(self.h[a][b] for b in free) for a in free)
        aug = tuple(h_ff[i] + unit(k, i) for i in range(k))
        red, pivots = rref(aug)
        if len(pivots) == k and all(pc < k for pc in pivots):
            inv = tuple(tuple(red[i][k:]) for i in range(k))
            entry = ("inv", inv)
        else:
            entry = ("general", h_ff)
        self._face_cache[free] = entry
        return entry

    def minimize(self, c: Vec, constant: Fraction = ZERO) -> ConeMinVerdict:
        bound = self.boundedness(c)
        if not bound.bounded:
            direction = self._scaled_descent(c, bound)
            return ConeMinVerdict(
                "unbounded", direction=direction, curvature=bound.kind
            )
        if self.p == 0:
            return ConeMinVerdict(
                "attained",
                value=constant,
                point=zeros(self.d.dim),
                parameter_point=(),
                active_set=(),
                multipliers=(),
            )
        r = tuple(dot(gen, c) for gen in self.d.generators)  # Z^T c
        best: tuple[Fraction, tuple[int, ...], Vec] | None = None
        for size in range(self.p + 1):
            for active in itertools.combinations(range(self.p), size):
                free = tuple(j for j in range(self.p) if j not in active)
                u = self._solve_face(free, r)
                if u is None:
                    continue
                value = self._objective(u, r, constant)
                key = (value, active)
                if best is None or key < (best[0], best[1]):
                    best = (value, active, u)
        if best is None:
            raise FwsetsError("bounded program produced no stationary candidates")
        value, active, u = best
        grad = vadd(matvec(self.h, u), r)
        multipliers = tuple(grad[i] for i in active)
        if any(m < 0 for m in multipliers):
            raise FwsetsError("minimizer failed KKT multiplier verification")
        if any(grad[j] != 0 for j in range(self.p) if j not in active and u[j] != 0):
            raise FwsetsError("minimizer failed stationarity verification")
        point = matvec(self.z, u)
        return ConeMinVerdict(
            "attained",
            value=value,
            point=point,
            parameter_point=u,
            active_set=active,
            multipliers=multipliers,
        )

    def _objective(self, u: Vec, r: Vec, constant: Fraction) -> Fraction:
        return dot(u, matvec(self.h, u)) / 2 + dot(r, u) + constant

    def _solve_face(self, free: tuple[int, ...], r: Vec) -> Vec | None:
        if not free:
            return zeros(self.p)
        k = len(free)
        rhs = tuple(-r[a] for a in free)
        kind, payload = self._face_solver(free)
        if kind == "inv":
            u_f = matvec(payload, rhs)
            if any(x < 0 for x in u_f):
                return None
        else:
            h_ff = payload
            u0 = solve(h_ff, rhs)
            if u0 is None:
                return None
            kern = kernel_basis(h_ff, ncols=k)
            if not kern:
                u_f = u0
                if any(x < 0 for x in u_f):
                    return None
            else:
                lp_rows = tuple(
                    tuple(-kv[i] for kv in kern) for i in range(k)
                )
                res = lp_solve(lp_rows, tuple(u0), zeros(len(kern)))
                if res.status != "optimal":
                    return None
                u_f = tuple(
                    u0[i] + sum(kv[i] * s for kv, s in zip(kern, res.x))
                    for i in range(k)
                )
        full = [ZERO] * self.p
        for pos, j in enumerate(free):
            full[j] = u_f[pos]
        return tuple(full)

    def _scaled_descent(self, c: Vec, bound: BoundednessResult) -> Vec:
        d = bound.certificate
        if bound.kind == "negative_slope":
            return d
        curvature = dot(d, matvec(self.g, d))
        slope = dot(c, d)
        # scale so the values strictly decrease from t = 1 onward
        kappa = max(ONE, (abs(slope) + 1) / (-curvature))
        return vscale(kappa, d)


def minimize_on_polyhedral_cone(q: Quadratic, d: PolyCone) -> ConeMinVerdict:
    """Exact minimization of a quadratic over a polyhedral cone.

    Returns an attained verdict with a KKT-verified witness whenever the
    quadratic is bounded below (the classical attainment fact for quadratics
    on polyhedra guarantees one exists), and a decreasing ray otherwise.
    """
    if q.dim != d.dim:
        raise FwsetsError("quadratic and cone dimensions differ")
    return ConeProgram(q.a, d).minimize(q.b, q.c)


def value_function_eval(c: Vec, g: Mat, d: PolyCone) -> Fraction:
    """``f(c)``, the exact infimum; raises NotInDomainError outside dom(f)."""
    verdict = ConeProgram(g, d).minimize(vec(c))
    if verdict.kind != "attained":
        raise NotInDomainError(
            "linear term lies outside dom(f)", certificate=verdict.direction
        )
    return verdict.value


# ---------------------------------------------------------------------------
# exact QP over an inequality system (used for compact Motzkin parts and
# for squared-distance programs)
# ---------------------------------------------------------------------------

MAX_FACE_SUBSETS = 200_000


def minimize_over_hpolyhedron(q: Quadratic, p: HPolyhedron) -> tuple[Fraction, Vec] | None:
    """Exact min of q over ``{A x <= b}`` assuming the infimum is attained.

    Enumerates row subsets of size at most n; on each consistent face the
    stationarity system pins a constant value, and a feasible representative
    (unique solve, or an LP pick inside the solution set) becomes a
    candidate.  The attained minimum is always among the candidates.
    Returns None when no face carries a feasible stationary point, which
    can only happen for programs that are unbounded below.
    """
    n = p.dim
    m = len(p.a)
    total = sum(comb(m, rr) for rr in range(min(m, n) + 1))
    if total > MAX_FACE_SUBSETS:
        raise SizeCapError(
            f"face enumeration needs {total} subsets, exceeding {MAX_FACE_SUBSETS}"
        )
    best: tuple[Fraction, tuple[int, ...], Vec] | None = None
    for size in range(min(m, n) + 1):
        for subset in itertools.combinations(range(m), size):
            cand = _face_candidate(q, p, subset)
            if cand is None:
                continue
            value, x = cand
            key = (value, subset)
            if best is None or key < (best[0], best[1]):
                best = (value, subset, x)
    if best is None:
        return None
    return best[0], best[2]


def _face_candidate(q: Quadratic, p: HPolyhedron, subset) -> tuple[Fraction, Vec] | None:
    n = p.dim
    a_j = tuple(p.a[i] for i in subset)
    b_j = tuple(p.b[i] for i in subset)
    if subset:
        if rank(a_j) < len(subset):
            return None
        x0 = solve(a_j, b_j)
        if x0 is None:
            return None
        nbasis = kernel_basis(a_j, ncols=n)
    else:
        x0 = zeros(n)
        nbasis = [unit(n, i) for i in range(n)]
    if not nbasis:
        x = x0
        return (q.evaluate(x), x) if p.contains(x) else None
    ncols = tuple(zip(*nbasis))  # n x k, columns are basis vectors
    k = len(nbasis)
    grad0 = q.gradient(x0)
    m_red = tuple(
        tuple(dot(nbasis[i], matvec(q.a, nbasis[j])) for j in range(k))
        for i in range(k)
    )
    rhs = tuple(-dot(nbasis[i], grad0) for i in range(k))
    t0 = solve(m_red, rhs)
    if t0 is None:
        return None
    kern = kernel_basis(m_red, ncols=k)
    base = vadd(x0, tuple(dot(row, t0) for row in ncols))
    if not kern:
        return (q.evaluate(base), base) if p.contains(base) else None
    # feasibility LP inside the stationary solution set
    dirs = [tuple(dot(row, kv) for row in ncols) for kv in kern]
    lp_rows = tuple(
        tuple(dot(p.a[i], dv) for dv in dirs) for i in range(len(p.a))
    )
    lp_rhs = tuple(p.b[i] - dot(p.a[i], base) for i in range(len(p.a)))
    res = lp_solve(lp_rows, lp_rhs, zeros(len(dirs)))
    if res.status != "optimal":
        return None
    x = base
    for dv, s in zip(dirs, res.x):
        x = vadd(x, vscale(s, dv))
    return q.evaluate(x), x
