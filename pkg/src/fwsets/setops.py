"""Class-invariance operations on Motzkin sums.

The class of compact-plus-polyhedral-cone sets is closed under affine
images, sums with subspaces, finite products, subspace intersections, finite
intersections, and affine preimages, with each closure constructive:

* ``(K + D) ∩ L = K0 + (D ∩ L)`` for a subspace L, where K0 comes from the
  vertex part of the double-description conversion and the cone part is
  verified against D ∩ L by mutual generator membership;
* the binary intersection is the diagonal trick: form the product in doubled
  dimension, intersect with the diagonal subspace, and project back;
* the affine preimage composes the restricted inverse on the orthogonal
  complement of the kernel with a sum along the kernel.

The order cancellation law (``A + K ⊆ B + K`` with compact K forces
``A ⊆ B``) is exposed as a checker over V-polyhedra so the property can be
exercised directly.
"""

from __future__ import annotations

from .affine import AffineManifold, AffineMap, subspace
from .asymptotes import SetDescriptor, UnionSet, ambient_dim
from .errors import (
    DimensionMismatchError,
    EmptySetError,
    FwsetsError,
    UnsupportedKindError,
)
from .linalg import (
    ONE,
    Vec,
    basis_of_span,
    dot,
    identity,
    is_zero,
    kernel_basis,
    solve,
    unit,
    vec,
    vscale,
    vsub,
    zeros,
)
from .motzkin import (
    AttainmentVerdict,
    Ball,
    FinitePointSet,
    MotzkinSet,
    PolytopeK,
    Unknown,
    decompose,
    minimize_on_motzkin,
    motzkin_to_vpoly,
)
from .polyhedra import (
    HPolyhedron,
    PolyCone,
    VPolyhedron,
    dd_convert,
    minkowski_sum,
)
from .quadratics import Quadratic


def _require_polyhedral(f: MotzkinSet, op: str) -> None:
    if not f.is_polyhedral_cone:
        raise UnsupportedKindError(f"{op} requires a polyhedral recession cone")


def _compact_points(k) -> tuple[Vec, ...]:
    if isinstance(k, PolytopeK):
        return k.vertices
    if isinstance(k, FinitePointSet):
        return k.points
    raise UnsupportedKindError("ball compact parts are not supported here")


def affine_image(f: MotzkinSet, t: AffineMap) -> MotzkinSet:
    """``T(K) + T_linear(D)``, computed generator-wise, exactly.

    Balls survive only isometric linear parts (anything else would make an
    ellipsoid, which is not a representable compact kind).
    """
    _require_polyhedral(f, "affine_image")
    if t.source_dim != f.dim:
        raise DimensionMismatchError("map source dimension differs from the set's")
    gens = []
    for g in f.cone.generators:
        img = t.apply_linear(g)
        if not is_zero(img):
            gens.append(img)
    cone = PolyCone.from_generators(gens, t.target_dim) if gens else PolyCone((), t.target_dim)
    if isinstance(f.compact, Ball):
        m = t.matrix
        mt_m = tuple(
            tuple(sum(m[r][i] * m[r][j] for r in range(len(m))) for j in range(t.source_dim))
            for i in range(t.source_dim)
        )
        if mt_m != identity(t.source_dim):
            raise UnsupportedKindError(
                "a ball maps to an ellipsoid under a non-isometric map"
            )
        return MotzkinSet(Ball(t.apply(f.compact.center), f.compact.radius), cone)
    pts = tuple(t.apply(p) for p in _compact_points(f.compact))
    if isinstance(f.compact, PolytopeK):
        return MotzkinSet(PolytopeK(tuple(dict.fromkeys(pts)), t.target_dim), cone)
    return MotzkinSet(FinitePointSet(tuple(dict.fromkeys(pts)), t.target_dim), cone)


def sum_with_subspace(f: MotzkinSet, basis) -> MotzkinSet:
    """``K + (D + L)``: the subspace folds into the cone as opposite pairs."""
    _require_polyhedral(f, "sum_with_subspace")
    gens = list(f.cone.generators)
    for v in basis:
        v = vec(v)
        if len(v) != f.dim:
            raise DimensionMismatchError("subspace vector dimension mismatch")
        if is_zero(v):
            continue
        gens.append(v)
        gens.append(vscale(-ONE, v))
    cone = PolyCone.from_generators(gens, f.dim) if gens else PolyCone((), f.dim)
    return MotzkinSet(f.compact, cone)


def product(f1: MotzkinSet, f2: MotzkinSet) -> MotzkinSet:
    """Block combination ``(K1 x K2) + (D1 x D2)``."""
    _require_polyhedral(f1, "product")
    _require_polyhedral(f2, "product")
    n1, n2 = f1.dim, f2.dim
    gens = [g + zeros(n2) for g in f1.cone.generators]
    gens += [zeros(n1) + g for g in f2.cone.generators]
    cone = PolyCone.from_generators(gens, n1 + n2) if gens else PolyCone((), n1 + n2)
    k1, k2 = f1.compact, f2.compact
    if isinstance(k1, PolytopeK) and isinstance(k2, PolytopeK):
        pts = tuple(a + b for a in k1.vertices for b in k2.vertices)
        return MotzkinSet(PolytopeK(pts, n1 + n2), cone)
    if isinstance(k1, FinitePointSet) and isinstance(k2, FinitePointSet):
        pts = tuple(a + b for a in k1.points for b in k2.points)
        return MotzkinSet(FinitePointSet(pts, n1 + n2), cone)
    raise UnsupportedKindError(
        "products need matching polytope or finite compact parts"
    )


def _subspace_equalities(l: AffineManifold) -> tuple[tuple[Vec, ...], tuple]:
    if not l.contains(zeros(l.dim)):
        raise UnsupportedKindError("expected a linear subspace through the origin")
    rows = []
    rhs = []
    for row in l.a:
        rows.append(row)
        rhs.append(0 * ONE)
        rows.append(vscale(-ONE, row))
        rhs.append(0 * ONE)
    return tuple(rows), tuple(rhs)


def cone_intersect_subspace(d: PolyCone, l: AffineManifold) -> PolyCone:
    """Generators of ``D ∩ L`` from the stacked halfspace system."""
    dh = d.with_halfspaces()
    rows = list(dh.halfspaces)
    for row in l.a:
        rows.append(row)
        rows.append(vscale(-ONE, row))
    return PolyCone.from_halfspaces(tuple(rows), d.dim)


def intersect_subspace_motzkin(f: MotzkinSet, l: AffineManifold) -> MotzkinSet:
    """``(K + D) ∩ L`` recomposed as ``K0 + (D ∩ L)``.

    The stacked system is converted by double description; its vertex part
    becomes K0 and its cone part is checked, by mutual generator membership,
    to equal D ∩ L exactly.  Raises EmptySetError with a Farkas certificate
    when the intersection is empty.
    """
    _require_polyhedral(f, "intersect_subspace_motzkin")
    if not isinstance(f.compact, PolytopeK):
        raise UnsupportedKindError("the compact part must be a polytope")
    if l.dim != f.dim:
        raise DimensionMismatchError("subspace dimension differs from the set's")
    h = dd_convert(motzkin_to_vpoly(f))
    eq_rows, eq_rhs = _subspace_equalities(l)
    stacked = HPolyhedron(h.a + eq_rows, h.b + eq_rhs, f.dim)
    v = dd_convert(stacked)
    if v.is_empty:
        raise EmptySetError(
            "the set does not meet the subspace", certificate=v.empty_certificate
        )
    gens = list(v.rays)
    for line in v.lineality:
        gens.append(line)
        gens.append(vscale(-ONE, line))
    result_cone = PolyCone.from_generators(gens, f.dim) if gens else PolyCone((), f.dim)
    expected = cone_intersect_subspace(f.cone, l)
    _verify_same_cone(result_cone, expected)
    return MotzkinSet(PolytopeK(v.vertices, f.dim), expected)


def _verify_same_cone(a: PolyCone, b: PolyCone) -> None:
    bh = b.with_halfspaces()
    for g in a.generators:
        if not bh.contains(g):
            raise FwsetsError("recomposed cone escapes the intersected cone")
    ah = a.with_halfspaces()
    for g in b.generators:
        if not ah.contains(g):
            raise FwsetsError("intersected cone escapes the recomposed cone")


def intersect_fwm(f1: MotzkinSet, f2: MotzkinSet) -> MotzkinSet:
    """Binary intersection via product, diagonal subspace, and projection."""
    if f1.dim != f2.dim:
        raise DimensionMismatchError("intersecting sets of different dimensions")
    n = f1.dim
    prod = product(_as_polytope_compact(f1), _as_polytope_compact(f2))
    diag = subspace([unit(n, i) + unit(n, i) for i in range(n)], 2 * n)
    inter = intersect_subspace_motzkin(prod, diag)
    proj = AffineMap.build(
        [[ONE if j == i else 0 for j in range(2 * n)] for i in range(n)]
    )
    return affine_image(inter, proj)


def _as_polytope_compact(f: MotzkinSet) -> MotzkinSet:
    if isinstance(f.compact, PolytopeK):
        return f
    if isinstance(f.compact, FinitePointSet) and len(f.compact.points) == 1:
        return MotzkinSet(PolytopeK(f.compact.points, f.dim), f.cone)
    raise UnsupportedKindError("intersection needs convex (polytope) compact parts")


def affine_preimage(f: MotzkinSet, t: AffineMap) -> MotzkinSet:
    """``T^{-1}(K + D)`` via the range intersection and the kernel sum.

    Writing T = M x + t0, the preimage is the restricted inverse of
    ``(F - t0) ∩ range(M)`` on the orthogonal complement of ker(M), plus
    ker(M) itself.  Empty preimages raise EmptySetError.
    """
    _require_polyhedral(f, "affine_preimage")
    if t.target_dim != f.dim:
        raise DimensionMismatchError("map target dimension differs from the set's")
    if not isinstance(f.compact, PolytopeK):
        raise UnsupportedKindError("the compact part must be a polytope")
    n = t.source_dim
    m = t.target_dim
    shifted = MotzkinSet(
        PolytopeK(tuple(vsub(p, t.offset) for p in f.compact.vertices), m), f.cone
    )
    col_basis = basis_of_span(tuple(zip(*t.matrix)) if t.matrix else (), m)
    if len(col_basis) < m:
        range_space = AffineManifold.from_point_basis(zeros(m), tuple(col_basis))
        restricted = intersect_subspace_motzkin(shifted, range_space)
    else:
        restricted = shifted
    ker = kernel_basis(t.matrix, ncols=n)
    ker_rows = tuple(ker)
    solve_rows = t.matrix + ker_rows
    verts = tuple(
        _solve_in_complement(solve_rows, v, n, len(ker)) for v in restricted.compact.vertices
    )
    gens = tuple(
        _solve_in_complement(solve_rows, g, n, len(ker)) for g in restricted.cone.generators
    )
    gens = tuple(g for g in gens if not is_zero(g))
    pre = MotzkinSet(
        PolytopeK(verts, n),
        PolyCone.from_generators(gens, n) if gens else PolyCone((), n),
    )
    return sum_with_subspace(pre, ker)


def _solve_in_complement(solve_rows, target: Vec, n: int, ker_count: int) -> Vec:
    rhs = tuple(target) + zeros(ker_count)
    w = solve(solve_rows, rhs)
    if w is None:
        raise FwsetsError("range member has no preimage in the kernel complement")
    return w


def order_cancellation_check(
    a: VPolyhedron, b: VPolyhedron, k: VPolyhedron
) -> tuple[bool, bool]:
    """Evaluate both sides of the cancellation law on concrete data.

    Returns ``(A + K ⊆ B + K, A ⊆ B)``; the law asserts the first forces
    the second when K is compact (here: a polytope).
    """
    if k.rays or k.lineality:
        raise UnsupportedKindError("the cancellation summand must be a polytope")
    sum_a = minkowski_sum(a, k)
    sum_b = minkowski_sum(b, k)
    return _vpoly_subset(sum_a, sum_b), _vpoly_subset(a, b)


def _vpoly_subset(inner: VPolyhedron, outer: VPolyhedron) -> bool:
    h = dd_convert(outer)
    for v in inner.vertices:
        if not h.contains(v):
            return False
    for r in inner.rays:
        if any(dot(row, r) > 0 for row in h.a):
            return False
    for l in inner.lineality:
        if any(dot(row, l) != 0 for row in h.a):
            return False
    return True


def union_set(members) -> UnionSet:
    """Wrapper node: minimization and classification distribute over members."""
    members = tuple(members)
    if not members:
        raise DimensionMismatchError("a union needs at least one member")
    dims = {ambient_dim(m) for m in members}
    if len(dims) != 1:
        raise DimensionMismatchError("union members live in different dimensions")
    return UnionSet(members)


def minimize_on_descriptor(q: Quadratic, s: SetDescriptor) -> AttainmentVerdict:
    """Minimize over a descriptor: Motzkin sums and inequality systems are
    solved exactly, unions take the best member verdict, anything else is
    Unknown."""
    if isinstance(s, MotzkinSet):
        return minimize_on_motzkin(q, s)
    if isinstance(s, HPolyhedron):
        return minimize_on_motzkin(q, decompose(s))
    if isinstance(s, UnionSet):
        verdicts = [minimize_on_descriptor(q, m) for m in s.members]
        for v in verdicts:
            if v.kind == "unbounded":
                return v
        if any(v.kind == "unknown" for v in verdicts):
            return Unknown("a union member resisted minimization")
        best = min((v for v in verdicts if v.kind == "attained"), key=lambda v: v.value)
        return best
    return Unknown(f"no exact solver for {type(s).__name__} sets")
