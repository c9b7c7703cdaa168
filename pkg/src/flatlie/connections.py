"""Left-invariant connections as bilinear products on a Lie algebra.

A left-invariant connection is determined by its value on left-invariant
fields at the identity, x.y = (nabla_{x+} y+)(e), so all geometry here is
multilinear algebra on the structure constants.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import linalg as la
from .algebra import LieAlgebra, _dense, _sparse
from .errors import DimensionError, ValidationError
from .linalg import Matrix, Vector
from .report import WARN, Check, Report, combine, verdict


@dataclass(frozen=True, eq=False)
class Product:
    """Bilinear map with e_i . e_j = sum_k coeffs[i][j][k] e_k."""

    algebra: LieAlgebra
    coeffs: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        n = self.algebra.dim
        if len(self.coeffs) != n or any(len(row) != n for row in self.coeffs):
            raise DimensionError(f"product table must be {n}x{n}")
        table = tuple(tuple(self.algebra.vec(v) for v in row) for row in self.coeffs)
        object.__setattr__(self, "coeffs", table)

    @classmethod
    def from_sparse(cls, A: LieAlgebra, entries: Mapping[tuple[int, int], Mapping]) -> Product:
        n = A.dim
        t = [[la.zero_vector(n)] * n for _ in range(n)]
        for (i, j), coeffs in entries.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError(f"product key {(i, j)!r} out of range")
            for k in coeffs:
                if not 0 <= k < n:
                    raise ValidationError(f"product ({i},{j}) index {k!r} out of range")
            t[i][j] = la.vadd(t[i][j], _dense({k: la.to_fraction(c) for k, c in coeffs.items()}, n))
        return cls(A, tuple(tuple(r) for r in t))

    @classmethod
    def from_function(cls, A: LieAlgebra, f) -> Product:
        n = A.dim
        return cls(A, tuple(tuple(A.vec(f(A.basis(i), A.basis(j))) for j in range(n))
                            for i in range(n)))

    @classmethod
    def zero(cls, A: LieAlgebra) -> Product:
        return cls.from_sparse(A, {})

    def sparse(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        n = self.algebra.dim
        return {(i, j): _sparse(self.coeffs[i][j]) for i in range(n) for j in range(n)
                if not la.is_zero(self.coeffs[i][j])}

    def __call__(self, x, y) -> Vector:
        A = self.algebra
        x, y = A.vec(x), A.vec(y)
        n = A.dim
        out = [la.ZERO] * n
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.coeffs[i]
            for j, b in enumerate(y):
                if b:
                    ab = a * b
                    for k, c in enumerate(row[j]):
                        if c:
                            out[k] += ab * c
        return tuple(out)

    def left(self, x) -> Matrix:
        """Matrix of L_x : y -> x.y."""
        A = self.algebra
        return la.from_columns([self(x, A.basis(j)) for j in range(A.dim)], A.dim)

    def right(self, x) -> Matrix:
        """Matrix of R_x : y -> y.x."""
        A = self.algebra
        return la.from_columns([self(A.basis(j), x) for j in range(A.dim)], A.dim)

    @cached_property
    def left_basis(self) -> tuple[Matrix, ...]:
        return tuple(self.left(self.algebra.basis(i)) for i in range(self.algebra.dim))

    @cached_property
    def right_basis(self) -> tuple[Matrix, ...]:
        return tuple(self.right(self.algebra.basis(i)) for i in range(self.algebra.dim))

    def equals(self, other: Product) -> bool:
        return self.algebra.dim == other.algebra.dim and self.coeffs == other.coeffs

    def __repr__(self):
        return f"Product({self.algebra.name!r}, nonzero={len(self.sparse())})"


@dataclass(frozen=True)
class Tensor3:
    """Vector-valued bilinear tensor, t[i][j] = T(e_i, e_j)."""

    components: tuple[tuple[Vector, ...], ...]

    def at(self, i: int, j: int) -> Vector:
        return self.components[i][j]

    def is_zero(self) -> bool:
        return all(la.is_zero(v) for row in self.components for v in row)


@dataclass(frozen=True)
class Tensor4:
    """Curvature values, r[i][j][k] = R(e_i, e_j) e_k."""

    components: tuple[tuple[tuple[Vector, ...], ...], ...]

    def at(self, i: int, j: int, k: int) -> Vector:
        return self.components[i][j][k]

    def is_zero(self) -> bool:
        return all(la.is_zero(v) for a in self.components for b in a for v in b)


def left_mult(P: Product, x) -> Matrix:
    return P.left(x)


def right_mult(P: Product, x) -> Matrix:
    return P.right(x)


def bracket_product(A: LieAlgebra, scale=1) -> Product:
    """x.y = scale * [x, y]."""
    s = la.to_fraction(scale)
    n = A.dim
    return Product(A, tuple(tuple(la.vscale(s, A.table[i][j]) for j in range(n))
                            for i in range(n)))


def torsion(P: Product) -> Tensor3:
    A = P.algebra
    n = A.dim
    c = P.coeffs
    return Tensor3(tuple(tuple(la.vsub(la.vsub(c[i][j], c[j][i]), A.table[i][j])
                               for j in range(n)) for i in range(n)))


def curvature_operator(P: Product, i: int, j: int) -> Matrix:
    """Matrix of R(e_i, e_j) = [L_i, L_j] - L_{[e_i, e_j]}."""
    L = P.left_basis
    return la.msub(la.commutator(L[i], L[j]), P.left(P.algebra.table[i][j]))


def curvature_at(P: Product, i: int, j: int, k: int) -> Vector:
    A = P.algebra
    ek = A.basis(k)
    return la.vsub(la.vsub(P(A.basis(i), P(A.basis(j), ek)), P(A.basis(j), P(A.basis(i), ek))),
                   P(A.table[i][j], ek))


def curvature(P: Product) -> Tensor4:
    """Materialized curvature; fine for small dimensions, use curvature_at otherwise."""
    n = P.algebra.dim
    ops = {}
    for i in range(n):
        for j in range(n):
            ops[i, j] = curvature_operator(P, i, j)
    return Tensor4(tuple(tuple(tuple(la.column(ops[i, j], k) for k in range(n))
                               for j in range(n)) for i in range(n)))


def check_torsion_free(P: Product) -> Report:
    A = P.algebra
    n = A.dim
    c = P.coeffs
    for i in range(n):
        for j in range(i + 1, n):
            lhs = la.vsub(c[i][j], c[j][i])
            if lhs != A.table[i][j]:
                return verdict("torsion_free", {"indices": [i, j], "lhs": lhs,
                                                "rhs": A.table[i][j]})
    return verdict("torsion_free", None)


def check_curvature_free(P: Product) -> Report:
    """Witness: first (i, j, k) with i<j where R(e_i, e_j) e_k != 0.

    Evaluated triple by triple from the definition, never via L-matrices, so it
    stays independent of :func:`check_left_homomorphism`.
    """
    A = P.algebra
    n = A.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                r = curvature_at(P, i, j, k)
                if not la.is_zero(r):
                    ek = A.basis(k)
                    lhs = la.vsub(P(A.basis(i), P(A.basis(j), ek)),
                                  P(A.basis(j), P(A.basis(i), ek)))
                    return verdict("curvature_free", {"indices": [i, j, k], "lhs": lhs,
                                                      "rhs": P(A.table[i][j], ek)})
    return verdict("curvature_free", None)


def check_left_homomorphism(P: Product) -> Report:
    """L_{[e_i,e_j]} = L_{e_i} L_{e_j} - L_{e_j} L_{e_i} for all i<j, as matrices."""
    A = P.algebra
    n = A.dim
    L = P.left_basis
    for i in range(n):
        for j in range(i + 1, n):
            lhs = P.left(A.table[i][j])
            rhs = la.commutator(L[i], L[j])
            if lhs != rhs:
                return verdict("left_homomorphism", {"indices": [i, j], "lhs": lhs, "rhs": rhs})
    return verdict("left_homomorphism", None)


def check_bracket_compatible(P: Product) -> Report:
    """L_{e_i} - R_{e_i} = ad_{e_i} for every i, i.e. x.y - y.x = [x, y]."""
    A = P.algebra
    for i in range(A.dim):
        lhs = la.msub(P.left_basis[i], P.right_basis[i])
        if lhs != A.ad_basis[i]:
            return verdict("bracket_compatible", {"indices": [i], "lhs": lhs,
                                                  "rhs": A.ad_basis[i]})
    return verdict("bracket_compatible", None)


def is_flat_affine(P: Product) -> Report:
    return check_torsion_free(P) + check_curvature_free(P)


def _trace_report(name: str, mats: Sequence[Matrix]) -> Report:
    for i, M in enumerate(mats):
        t = la.trace(M)
        if t:
            return verdict(name, {"indices": [i], "lhs": t, "rhs": la.ZERO})
    return verdict(name, None)


def is_unimodular(A: LieAlgebra) -> Report:
    """tr(ad_{e_i}) = 0 for every basis vector."""
    return _trace_report("unimodular", A.ad_basis)


def is_complete(P: Product) -> Report:
    """Trace criterion tr(R_{e_i}) = 0 for geodesic completeness.

    The criterion is only meaningful for flat affine products; otherwise the
    traces are still evaluated and a warning is attached.
    """
    r = _trace_report("complete", P.right_basis)
    if not is_flat_affine(P):
        r = r + Report((Check("complete_hypothesis", WARN, None,
                              "criterion outside stated hypothesis: product is not flat affine"),))
    return r


def left_traces_vanish(P: Product) -> Report:
    return _trace_report("left_traceless", P.left_basis)


def transform_product(P: Product, S: Matrix, B: LieAlgebra) -> Product:
    """Rewrite P in the basis given by the columns of S; B is the rewritten algebra."""
    n = B.dim
    inv = la.Factorization(S)
    cols = [la.column(S, a) for a in range(n)]
    return Product(B, tuple(tuple(inv.solve(P(cols[a], cols[b])) for b in range(n))
                            for a in range(n)))


def flat_affine_report(P: Product) -> Report:
    """Both formulations side by side, used by tests of their equivalence."""
    return combine([is_flat_affine(P), check_bracket_compatible(P), check_left_homomorphism(P)])
