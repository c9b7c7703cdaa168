"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`; matrices are tuples of row
tuples. A matrix that represents a linear map stores the image of the j-th
basis vector in its j-th column. Nothing here ever touches a float.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import DimensionError, ShapeError, SingularError

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?")


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not _RATIONAL_RE.fullmatch(s):
            raise ValueError(f"not a rational literal: {x!r}")
        value = Fraction(s)  # ZeroDivisionError on "/0"
        return value
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ShapeError("ragged matrix")
    return m


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((ZERO,) * m for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def shape(M: Matrix) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def is_square(M: Matrix) -> bool:
    r, c = shape(M)
    return r == c


def transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M)) if M else ()


def column(M: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in M)


def from_columns(cols: Sequence[Vector], nrows: int | None = None) -> Matrix:
    if not cols:
        return tuple(() for _ in range(nrows or 0))
    return tuple(zip(*cols))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Vector) -> Vector:
    c = to_fraction(c)
    return tuple(c * a for a in v)


def lincomb(coeffs: Iterable, vectors: Sequence[Vector], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def is_zero(x) -> bool:
    """True for a zero vector or zero matrix."""
    if not x:
        return True
    if isinstance(x[0], tuple):
        return all(not a for row in x for a in row)
    return all(not a for a in x)


def madd(A: Matrix, B: Matrix) -> Matrix:
    return tuple(vadd(a, b) for a, b in zip(A, B))


def msub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(vsub(a, b) for a, b in zip(A, B))


def mscale(c, A: Matrix) -> Matrix:
    return tuple(vscale(c, row) for row in A)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if shape(A)[1] != shape(B)[0]:
        raise DimensionError(f"cannot multiply {shape(A)} by {shape(B)}")
    Bt = transpose(B)
    if not Bt:
        return tuple(() for _ in A)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def matvec(A: Matrix, v: Vector) -> Vector:
    if shape(A)[1] != len(v):
        raise DimensionError(f"cannot apply {shape(A)} matrix to a {len(v)}-vector")
    return tuple(dot(row, v) for row in A)


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return msub(matmul(A, B), matmul(B, A))


def trace(M: Matrix) -> Fraction:
    return sum((M[i][i] for i in range(len(M))), ZERO)


def bilinear(G: Matrix, x: Vector, y: Vector) -> Fraction:
    """x^T G y."""
    return dot(x, matvec(G, y))


def is_symmetric(M: Matrix) -> bool:
    n, m = shape(M)
    return n == m and all(M[i][j] == M[j][i] for i in range(n) for j in range(i + 1, n))


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        k = len(b)
        for row in b:
            rows.append((ZERO,) * offset + tuple(row) + (ZERO,) * (n - offset - k))
        offset += k
    return tuple(rows)


# -- elimination -----------------------------------------------------------

def rref(M: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in M]
    nrows, ncols = shape(M)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def det(M: Matrix) -> Fraction:
    if not is_square(M):
        raise ShapeError("determinant of a non-square matrix")
    rows = [list(r) for r in M]
    n = len(rows)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        piv = rows[c][c]
        d *= piv
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] / piv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def nullspace(M: Matrix, ncols: int | None = None) -> list[Vector]:
    """Exact basis of {v : Mv = 0}, one vector per free column.

    ``ncols`` is only needed when M has no rows.
    """
    n = shape(M)[1] if M else (ncols or 0)
    if not M:
        return [unit(n, i) for i in range(n)]
    R, pivots = rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


class Factorization:
    """PLU factorization of a square nonsingular matrix, reusable across solves."""

    def __init__(self, M: Matrix):
        if not is_square(M):
            raise ShapeError("can only factor square matrices")
        n = len(M)
        a = [list(r) for r in M]
        perm = list(range(n))
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c]), None)
            if p is None:
                raise SingularError("matrix is singular")
            if p != c:
                a[c], a[p] = a[p], a[c]
                perm[c], perm[p] = perm[p], perm[c]
            piv = a[c][c]
            for i in range(c + 1, n):
                if a[i][c]:
                    f = a[i][c] / piv
                    a[i][c] = f
                    for j in range(c + 1, n):
                        a[i][j] -= f * a[c][j]
        self.n = n
        self._lu = a
        self._perm = perm

    def solve(self, b: Sequence) -> Vector:
        n = self.n
        if len(b) != n:
            raise DimensionError(f"right-hand side has length {len(b)}, expected {n}")
        lu = self._lu
        y = [to_fraction(b[p]) for p in self._perm]
        for i in range(n):
            s = y[i]
            for j in range(i):
                if lu[i][j]:
                    s -= lu[i][j] * y[j]
            y[i] = s
        x = [ZERO] * n
        for i in reversed(range(n)):
            s = y[i]
            for j in range(i + 1, n):
                if lu[i][j]:
                    s -= lu[i][j] * x[j]
            x[i] = s / lu[i][i]
        return tuple(x)


def solve_linear(M: Matrix, b: Sequence) -> Vector:
    """The exact solution of Mx = b; raises SingularError for singular M."""
    return Factorization(M).solve(b)


def inverse(M: Matrix) -> Matrix:
    f = Factorization(M)
    return from_columns([f.solve(unit(f.n, j)) for j in range(f.n)])


def row_space(vectors: Sequence[Vector], n: int) -> Matrix:
    """Canonical echelon basis of span(vectors); equal spans give equal results."""
    if not vectors:
        return ()
    R, pivots = rref(tuple(vectors))
    return R[: len(pivots)]


def span_equal(a: Sequence[Vector], b: Sequence[Vector], n: int) -> bool:
    return row_space(a, n) == row_space(b, n)


def in_span(basis: Sequence[Vector], v: Vector) -> bool:
    if is_zero(v):
        return True
    if not basis:
        return False
    return rank(tuple(basis) + (v,)) == rank(tuple(basis))


def coordinates(basis: Sequence[Vector], v: Vector) -> Vector | None:
    """Coefficients expressing v in a linearly independent ``basis``, or None."""
    k = len(basis)
    if k == 0:
        return () if is_zero(v) else None
    aug = tuple(tuple(b[i] for b in basis) + (v[i],) for i in range(len(v)))
    R, pivots = rref(aug)
    if k in pivots:
        return None
    coeffs = [ZERO] * k
    for row, p in zip(R, pivots):
        coeffs[p] = row[k]
    return tuple(coeffs)


# -- symmetric forms -------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """Counts of negative, positive and zero diagonal entries after congruence."""

    index: int
    plus: int
    zero: int = 0

    @property
    def dim(self) -> int:
        return self.index + self.plus + self.zero

    @property
    def nondegenerate(self) -> bool:
        return self.zero == 0

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.index, self.plus, self.zero)


def congruence_diagonalize(M: Matrix) -> tuple[Vector, Matrix]:
    """Return (d, S) with S^T M S = diag(d), using only rational operations.

    Pivoting: take a nonzero diagonal entry when one remains (swapping it into
    place); otherwise, if M_ii = 0 but M_ij != 0, replace e_i by e_i + e_j.
    """
    if not is_symmetric(M):
        raise ShapeError("congruence diagonalization needs a symmetric matrix")
    n = len(M)
    a = [list(r) for r in M]
    s = [list(r) for r in identity(n)]  # columns are the new basis vectors

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in s:
            row[i], row[j] = row[j], row[i]

    def add_to(i, j, f):
        # e_i <- e_i + f e_j
        for k in range(n):
            a[i][k] += f * a[j][k]
        for k in range(n):
            a[k][i] += f * a[k][j]
        for row in s:
            row[i] += f * row[j]

    for i in range(n):
        if not a[i][i]:
            j = next((j for j in range(i + 1, n) if a[j][j]), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((j for j in range(i + 1, n) if a[i][j]), None)
                if j is None:
                    continue
                add_to(i, j, ONE)
        piv = a[i][i]
        for j in range(i + 1, n):
            if a[j][i]:
                add_to(j, i, -a[j][i] / piv)
    d = tuple(a[i][i] for i in range(n))
    return d, tuple(tuple(r) for r in s)


def signature(M: Matrix) -> Signature:
    d, _ = congruence_diagonalize(M)
    return Signature(index=sum(1 for x in d if x < 0),
                     plus=sum(1 for x in d if x > 0),
                     zero=sum(1 for x in d if x == 0))


def is_positive_definite(M: Matrix) -> bool:
    sig = signature(M)
    return sig.index == 0 and sig.zero == 0
