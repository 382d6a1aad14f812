"""Quadratic functions over exact rationals.

A quadratic is ``q(x) = 1/2 x^T A x + b^T x + c`` with symmetric A.  Besides
evaluation, the module decides global convexity (A positive semidefinite, by
symmetric rational elimination), finds the directions along which q is
constant, and pulls q back through affine maps and onto affine manifolds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .affine import AffineManifold, AffineMap
from .errors import DimensionMismatchError
from .linalg import (
    Mat,
    Vec,
    dot,
    mat,
    matmul,
    matvec,
    kernel_basis,
    rank,
    rat,
    transpose,
    vadd,
    vec,
    zeros,
)


@dataclass(frozen=True)
class Quadratic:
    a: Mat
    b: Vec
    c: Fraction

    def __post_init__(self):
        n = len(self.b)
        if len(self.a) != n or any(len(row) != n for row in self.a):
            raise DimensionMismatchError("A must be n x n for an n-vector b")
        for i in range(n):
            for j in range(i + 1, n):
                if self.a[i][j] != self.a[j][i]:
                    raise DimensionMismatchError("A must be exactly symmetric")

    @staticmethod
    def build(a, b=None, c=0) -> "Quadratic":
        """Construct from any rational-ish data; asymmetric input is
        symmetrized as (A + A^T)/2 so the stored form is canonical."""
        a = mat(a)
        n = len(a)
        sym = tuple(
            tuple((a[i][j] + a[j][i]) / 2 for j in range(n)) for i in range(n)
        )
        if b is None:
            b = zeros(n)
        return Quadratic(sym, vec(b), rat(c))

    @property
    def dim(self) -> int:
        return len(self.b)

    def evaluate(self, x: Vec) -> Fraction:
        if len(x) != self.dim:
            raise DimensionMismatchError("point dimension mismatch")
        ax = matvec(self.a, x)
        return dot(x, ax) / 2 + dot(self.b, x) + self.c

    def gradient(self, x: Vec) -> Vec:
        return vadd(matvec(self.a, x), self.b)


def is_psd(a: Mat) -> bool:
    """Exact positive-semidefiniteness by symmetric elimination.

    Pivots on strictly positive diagonal entries; a negative diagonal entry
    refutes, and a trailing block with zero diagonal must vanish entirely.
    """
    n = len(a)
    s = [list(row) for row in a]
    active = list(range(n))
    while active:
        pivot = next((k for k in active if s[k][k] > 0), None)
        if pivot is None:
            for k in active:
                if s[k][k] < 0:
                    return False
            for k in active:
                for l in active:
                    if s[k][l] != 0:
                        return False
            return True
        active.remove(pivot)
        pv = s[pivot][pivot]
        for k in active:
            f = s[k][pivot] / pv
            if f == 0:
                continue
            for l in active:
                s[k][l] -= f * s[pivot][l]
            s[k][pivot] = Fraction(0)
    return True


def is_convex(q: Quadratic) -> bool:
    """True iff q is convex on all of R^n, i.e. A is positive semidefinite."""
    return is_psd(q.a)


def invariant_directions(q: Quadratic) -> list[Vec]:
    """Basis of ``{d : A d = 0 and b . d = 0}``.

    Along every returned direction, q(x + t d) = q(x) identically in x, t.
    """
    rows = q.a + (q.b,)
    return kernel_basis(rows, ncols=q.dim)


def compose_affine(q: Quadratic, t: AffineMap) -> Quadratic:
    """The pullback ``q o T`` as a quadratic on the source space."""
    if t.target_dim != q.dim:
        raise DimensionMismatchError("map target dimension differs from q's")
    m = t.matrix
    mt = transpose(m)
    a2 = matmul(mt, matmul(q.a, m))
    b2 = matvec(mt, vadd(matvec(q.a, t.offset), q.b))
    c2 = q.evaluate(t.offset)
    return Quadratic(a2, b2, c2)


def restrict_to_affine(q: Quadratic, m: AffineManifold) -> Quadratic:
    """q restricted to the manifold, in its ``point + basis u`` coordinates."""
    if m.dim != q.dim:
        raise DimensionMismatchError("manifold dimension differs from q's")
    basis = m.basis
    if basis and rank(basis) < len(basis):
        raise DimensionMismatchError("manifold basis is rank deficient")
    t = AffineMap(tuple(zip(*basis)) if basis else tuple(() for _ in range(q.dim)), m.point)
    return compose_affine(q, t)


def squared_distance_to_manifold(m: AffineManifold) -> Quadratic:
    """The quadratic ``x -> |A x - b|^2`` for the manifold ``{A x = b}``.

    It is convex, nonnegative, and vanishes exactly on the manifold.
    """
    n = m.dim
    a2 = [[Fraction(0)] * n for _ in range(n)]
    b2 = [Fraction(0)] * n
    c2 = Fraction(0)
    for row, rhs in zip(m.a, m.b):
        for i in range(n):
            for j in range(n):
                a2[i][j] += 2 * row[i] * row[j]
            b2[i] += -2 * rhs * row[i]
        c2 += rhs * rhs
    return Quadratic(tuple(tuple(r) for r in a2), tuple(b2), c2)
