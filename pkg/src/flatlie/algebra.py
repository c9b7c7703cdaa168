"""Lie algebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import linalg as la
from .errors import DimensionError, ValidationError
from .linalg import Matrix, Vector
from .report import Report, verdict

SparseVec = Mapping[int, Fraction]


def _clean(coeffs: Mapping, n: int, where: str) -> dict[int, Fraction]:
    out = {}
    for k, c in coeffs.items():
        if not isinstance(k, int) or not 0 <= k < n:
            raise ValidationError(f"{where}: index {k!r} out of range [0, {n})")
        c = la.to_fraction(c)
        if c:
            out[k] = c
    return dict(sorted(out.items()))


def _dense(sparse: Mapping[int, Fraction], n: int) -> Vector:
    v = [la.ZERO] * n
    for k, c in sparse.items():
        v[k] = c
    return tuple(v)


def _sparse(v: Vector) -> dict[int, Fraction]:
    return {k: c for k, c in enumerate(v) if c}


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """A real Lie algebra with basis e_0..e_{n-1} and rational structure constants.

    ``brackets`` maps (i, j) with i < j to the sparse coefficients of [e_i, e_j].
    Antisymmetry is structural; the Jacobi identity is *not* assumed, see
    :func:`check_jacobi`.
    """

    name: str
    dim: int
    basis_names: tuple[str, ...] = ()
    brackets: Mapping[tuple[int, int], Mapping[int, Fraction]] = field(default_factory=dict)

    def __post_init__(self):
        n = self.dim
        if not isinstance(n, int) or n < 0:
            raise ValidationError(f"dimension must be a nonnegative integer, got {n!r}")
        names = tuple(self.basis_names) or tuple(f"e{i + 1}" for i in range(n))
        if len(names) != n:
            raise ValidationError(f"expected {n} basis names, got {len(names)}")
        clean = {}
        for key, coeffs in self.brackets.items():
            i, j = key
            if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < n and 0 <= j < n):
                raise ValidationError(f"bracket key {key!r} out of range")
            if i >= j:
                raise ValidationError(f"bracket key {key!r}: i<j required")
            c = _clean(coeffs, n, f"bracket {key!r}")
            if c:
                clean[(i, j)] = c
        object.__setattr__(self, "basis_names", names)
        object.__setattr__(self, "brackets", dict(sorted(clean.items())))

    @classmethod
    def from_brackets(cls, name: str, dim: int, brackets: Mapping[tuple[int, int], Mapping],
                      basis_names: Sequence[str] = ()) -> LieAlgebra:
        """Build from brackets given in any index order, folding [e_j,e_i] = -[e_i,e_j]."""
        acc: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), coeffs in brackets.items():
            if i == j:
                if any(la.to_fraction(c) for c in coeffs.values()):
                    raise ValidationError(f"[e{i},e{i}] must vanish")
                continue
            sign = 1 if i < j else -1
            key = (min(i, j), max(i, j))
            slot = acc.setdefault(key, {})
            for k, c in coeffs.items():
                slot[k] = slot.get(k, la.ZERO) + sign * la.to_fraction(c)
        return cls(name, dim, tuple(basis_names), acc)

    @classmethod
    def from_table(cls, name: str, table: Sequence[Sequence[Vector]],
                   basis_names: Sequence[str] = ()) -> LieAlgebra:
        """Build from a dense table with table[i][j] = [e_i, e_j] (upper half is used)."""
        n = len(table)
        br = {(i, j): _sparse(la.vector(table[i][j]))
              for i in range(n) for j in range(i + 1, n)}
        return cls(name, n, tuple(basis_names), br)

    @classmethod
    def abelian(cls, n: int, name: str | None = None) -> LieAlgebra:
        return cls(name or f"abelian{n}", n)

    # -- evaluation --------------------------------------------------------

    @cached_property
    def table(self) -> tuple[tuple[Vector, ...], ...]:
        """Dense table with table[i][j] = [e_i, e_j]."""
        n = self.dim
        t = [[la.zero_vector(n)] * n for _ in range(n)]
        for (i, j), coeffs in self.brackets.items():
            v = _dense(coeffs, n)
            t[i][j] = v
            t[j][i] = la.vscale(-1, v)
        return tuple(tuple(row) for row in t)

    def basis(self, i: int) -> Vector:
        return la.unit(self.dim, i)

    def vec(self, values) -> Vector:
        v = la.vector(values)
        if len(v) != self.dim:
            raise DimensionError(f"{self.name}: expected a {self.dim}-vector, got length {len(v)}")
        return v

    def bracket(self, x, y) -> Vector:
        x, y = self.vec(x), self.vec(y)
        n = self.dim
        out = [la.ZERO] * n
        for (i, j), coeffs in self.brackets.items():
            c = x[i] * y[j] - x[j] * y[i]
            if c:
                for k, a in coeffs.items():
                    out[k] += c * a
        return tuple(out)

    def ad(self, x) -> Matrix:
        """Matrix of ad_x; column j is [x, e_j]."""
        x = self.vec(x)
        n = self.dim
        cols = [la.lincomb(x, [self.table[i][j] for i in range(n)], n) for j in range(n)]
        return la.from_columns(cols, n)

    @cached_property
    def ad_basis(self) -> tuple[Matrix, ...]:
        return tuple(self.ad(self.basis(i)) for i in range(self.dim))

    def is_abelian(self) -> bool:
        return not self.brackets

    def structure_equal(self, other: LieAlgebra) -> bool:
        return self.dim == other.dim and self.brackets == other.brackets

    def renamed(self, name: str, basis_names: Sequence[str] | None = None) -> LieAlgebra:
        return LieAlgebra(name, self.dim, tuple(basis_names or self.basis_names), self.brackets)

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim}, brackets={len(self.brackets)})"


def bracket(A: LieAlgebra, x, y) -> Vector:
    return A.bracket(x, y)


def ad_matrix(A: LieAlgebra, x) -> Matrix:
    return A.ad(x)


def check_jacobi(A: LieAlgebra) -> Report:
    """Cyclic sum over all basis triples i<j<k; witness is the first failing triple."""
    n = A.dim
    t = A.table
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                s = la.vadd(la.vadd(A.bracket(t[i][j], A.basis(k)),
                                    A.bracket(t[j][k], A.basis(i))),
                            A.bracket(t[k][i], A.basis(j)))
                if not la.is_zero(s):
                    return verdict("jacobi", {"indices": [i, j, k], "lhs": s,
                                              "rhs": la.zero_vector(n)})
    return verdict("jacobi", None)


def killing_form(A: LieAlgebra) -> Matrix:
    """K_ij = tr(ad_{e_i} ad_{e_j})."""
    ads = A.ad_basis
    n = A.dim
    K = [[la.ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            # tr(XY) = sum_{a,b} X_ab Y_ba, cheaper than the full product
            X, Y = ads[i], ads[j]
            v = sum((X[a][b] * Y[b][a] for a in range(n) for b in range(n)
                     if X[a][b] and Y[b][a]), la.ZERO)
            K[i][j] = K[j][i] = v
    return tuple(tuple(r) for r in K)


def check_killing_invariance(A: LieAlgebra) -> Report:
    K = killing_form(A)
    n = A.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = la.bilinear(K, A.table[i][j], A.basis(k))
                rhs = -la.bilinear(K, A.basis(j), A.table[i][k])
                if lhs != rhs:
                    return verdict("killing_invariance", {"indices": [i, j, k],
                                                          "lhs": lhs, "rhs": rhs})
    return verdict("killing_invariance", None)


def change_basis(A: LieAlgebra, S: Matrix, name: str | None = None) -> LieAlgebra:
    """The same algebra written in the basis f_a = sum_i S_ia e_i (columns of S)."""
    n = A.dim
    inv = la.Factorization(S)
    cols = [la.column(S, a) for a in range(n)]
    br = {}
    for a in range(n):
        for b in range(a + 1, n):
            v = inv.solve(A.bracket(cols[a], cols[b]))
            if not la.is_zero(v):
                br[(a, b)] = _sparse(v)
    return LieAlgebra(name or A.name, n, tuple(f"f{i + 1}" for i in range(n)), br)


def direct_sum(*algebras: LieAlgebra, name: str | None = None) -> LieAlgebra:
    br = {}
    names = []
    offset = 0
    for A in algebras:
        for (i, j), coeffs in A.brackets.items():
            br[(i + offset, j + offset)] = {k + offset: c for k, c in coeffs.items()}
        names.extend(A.basis_names)
        offset += A.dim
    if len(set(names)) != len(names):
        names = [f"e{i + 1}" for i in range(offset)]
    return LieAlgebra(name or "+".join(A.name for A in algebras), offset, tuple(names), br)


def is_ideal(A: LieAlgebra, basis: Sequence[Vector]) -> Report:
    """Whether span(basis) is an ideal; witness is the first (i, a) with [e_i, b_a] outside."""
    for a, v in enumerate(basis):
        for i in range(A.dim):
            w = A.bracket(A.basis(i), v)
            if not la.in_span(basis, w):
                return verdict("ideal", {"indices": [i, a], "lhs": w, "rhs": None})
    return verdict("ideal", None)


def is_subalgebra(A: LieAlgebra, basis: Sequence[Vector]) -> Report:
    for a, u in enumerate(basis):
        for b in range(a + 1, len(basis)):
            w = A.bracket(u, basis[b])
            if not la.in_span(basis, w):
                return verdict("subalgebra", {"indices": [a, b], "lhs": w, "rhs": None})
    return verdict("subalgebra", None)


def is_abelian_span(A: LieAlgebra, basis: Sequence[Vector], name: str = "abelian") -> Report:
    for a, u in enumerate(basis):
        for b in range(a + 1, len(basis)):
            w = A.bracket(u, basis[b])
            if not la.is_zero(w):
                return verdict(name, {"indices": [a, b], "lhs": w,
                                      "rhs": la.zero_vector(A.dim)})
    return verdict(name, None)

