"""Exact rational vectors and matrices.

Everything in the polyhedral layer is computed over ``fractions.Fraction``:
a rational is a pair (numerator, positive denominator) in lowest terms, which
``Fraction`` maintains by construction.  Vectors are tuples of Fractions and
matrices are tuples of row tuples; keeping them immutable lets every higher
layer share values freely.

No floating point enters this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatchError

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"``, and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        # Floats are accepted only at numeric boundaries (grids, CLI tolerance);
        # the conversion is exact.
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def vec(xs: Iterable) -> Vec:
    return tuple(rat(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out:
        width = len(out[0])
        for r in out:
            if len(r) != width:
                raise DimensionMismatchError("ragged matrix rows")
    return out


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def identity(n: int) -> Mat:
    return tuple(unit(n, i) for i in range(n))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatchError("dot of unequal lengths")
    return sum((x * y for x, y in zip(a, b)), ZERO)


def vadd(a: Vec, b: Vec) -> Vec:
    if len(a) != len(b):
        raise DimensionMismatchError("sum of unequal lengths")
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    if len(a) != len(b):
        raise DimensionMismatchError("difference of unequal lengths")
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: Fraction, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def is_zero(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def matvec(m: Mat, x: Vec) -> Vec:
    return tuple(dot(row, x) for row in m)


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Mat) -> Mat:
    if not m:
        return ()
    return tuple(zip(*m))


def primitive(v: Sequence[Fraction]) -> Vec:
    """Scale ``v`` by a positive rational so entries are coprime integers.

    The direction is preserved; used to canonicalize rays and halfspace
    normals so duplicates compare equal.
    """
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for k in ints:
        g = gcd(g, abs(k))
    if g == 0:
        return tuple(ZERO for _ in v)
    return tuple(Fraction(k, g) for k in ints)


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), pivots


def rank(m: Mat) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def kernel_basis(m: Mat, ncols: int | None = None) -> list[Vec]:
    """Basis of ``{x : m x = 0}``.  ``ncols`` is needed when ``m`` is empty."""
    if not m:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [unit(ncols, i) for i in range(ncols)]
    n = len(m[0])
    red, pivots = rref(m)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        v = [ZERO] * n
        v[j] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][j]
        basis.append(tuple(v))
    return basis


def solve(m: Mat, b: Vec) -> Vec | None:
    """One solution of ``m x = b``, or None when inconsistent.

    When the system is underdetermined the particular solution with zero
    free coordinates is returned; combine with :func:`kernel_basis` for the
    full solution set.
    """
    if not m:
        return zeros(0) if not b else None
    n = len(m[0])
    aug = tuple(row + (rhs,) for row, rhs in zip(m, b))
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return tuple(x)


def basis_of_span(vectors: Sequence[Vec], dim: int) -> list[Vec]:
    """An independent subset spanning the same subspace."""
    basis: list[Vec] = []
    current: Mat = ()
    for v in vectors:
        if is_zero(v):
            continue
        cand = current + (v,)
        if rank(cand) > len(basis):
            basis.append(v)
            current = cand
        if len(basis) == dim:
            break
    return basis


def complement_basis(subspace: Sequence[Vec], dim: int) -> list[Vec]:
    """Coordinate vectors completing ``subspace`` to a basis of R^dim."""
    if not subspace:
        return [unit(dim, i) for i in range(dim)]
    _, pivots = rref(tuple(subspace))
    return [unit(dim, j) for j in range(dim) if j not in pivots]
