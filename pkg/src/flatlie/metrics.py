"""Scalar products on a Lie algebra and their Levi-Civita products."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg as la
from .algebra import LieAlgebra
from .connections import (Product, bracket_product, check_curvature_free,
                          check_torsion_free)
from .errors import DimensionError, ShapeError, SingularError, ValidationError
from .linalg import Matrix, Signature, Vector
from .report import Report, verdict

HALF = Fraction(1, 2)


@dataclass(frozen=True, eq=False)
class ScalarProduct:
    """Symmetric nondegenerate form, gram[i][j] = mu(e_i, e_j)."""

    algebra: LieAlgebra
    gram: Matrix

    def __post_init__(self):
        g = la.matrix(self.gram)
        n = self.algebra.dim
        if la.shape(g) != (n, n) and not (n == 0 and not g):
            raise DimensionError(f"Gram matrix must be {n}x{n}, got {la.shape(g)}")
        if not la.is_symmetric(g):
            raise ShapeError("Gram matrix is not symmetric")
        object.__setattr__(self, "gram", g)
        # factor eagerly so degenerate forms are rejected at construction
        object.__setattr__(self, "_factor", la.Factorization(g))

    def __call__(self, x, y) -> Fraction:
        return la.bilinear(self.gram, self.algebra.vec(x), self.algebra.vec(y))

    def solve(self, rhs) -> Vector:
        """The vector v with mu(v, e_k) = rhs_k for every k."""
        return self._factor.solve(rhs)

    @cached_property
    def signature(self) -> Signature:
        return la.signature(self.gram)

    def is_positive_definite(self) -> bool:
        s = self.signature
        return s.index == 0 and s.zero == 0

    def on(self, algebra: LieAlgebra) -> ScalarProduct:
        return ScalarProduct(algebra, self.gram)

    def __repr__(self):
        return f"ScalarProduct({self.algebra.name!r}, signature={self.signature.as_tuple()})"


def scalar_product(A: LieAlgebra, gram) -> ScalarProduct:
    return ScalarProduct(A, la.matrix(gram))


def check_compatible(product: Product, form: ScalarProduct) -> Report:
    """mu(L_x y, z) + mu(y, L_x z) = 0 on basis triples."""
    A = product.algebra
    n = A.dim
    G = form.gram
    for i in range(n):
        L = product.left_basis[i]
        # G L + L^T G = 0, entry (j, k) is exactly the identity at (e_i, e_j, e_k)
        GL = la.matmul(G, L)
        for j in range(n):
            for k in range(j, n):
                lhs = GL[k][j]   # mu(L_i e_j, e_k)
                rhs = -GL[j][k]  # -mu(e_j, L_i e_k)
                if lhs != rhs:
                    return verdict("metric_compatible", {"indices": [i, j, k],
                                                         "lhs": lhs, "rhs": rhs})
    return verdict("metric_compatible", None)


@dataclass(frozen=True, eq=False)
class MetricPair:
    """A scalar product together with its Levi-Civita product.

    Both defining identities are re-verified on construction.
    """

    product: Product
    form: ScalarProduct

    def __post_init__(self):
        if self.product.algebra.dim != self.form.algebra.dim:
            raise DimensionError("product and form live on different dimensions")
        r = check_torsion_free(self.product) + check_compatible(self.product, self.form)
        if not r:
            bad = r.first_failure
            raise ValidationError(f"not a Levi-Civita pair: {bad.name} fails at {bad.witness}")

    @property
    def algebra(self) -> LieAlgebra:
        return self.product.algebra


def koszul_rhs(A: LieAlgebra, form: ScalarProduct, i: int, j: int) -> Vector:
    """rhs_k = 1/2 (mu([e_i,e_j],e_k) - mu([e_j,e_k],e_i) + mu([e_k,e_i],e_j))."""
    t = A.table
    G = form.gram
    n = A.dim
    out = []
    for k in range(n):
        s = (la.dot(t[i][j], G[k]) - la.dot(t[j][k], G[i]) + la.dot(t[k][i], G[j]))
        out.append(HALF * s)
    return tuple(out)


def levi_civita(A: LieAlgebra, form: ScalarProduct) -> MetricPair:
    """Solve the Koszul system once per basis pair against one factorization of the Gram."""
    if form.algebra.dim != A.dim:
        raise DimensionError("form and algebra dimensions differ")
    n = A.dim
    table = tuple(tuple(form.solve(koszul_rhs(A, form, i, j)) for j in range(n))
                  for i in range(n))
    return MetricPair(Product(A, table), form.on(A) if form.algebra is not A else form)


def is_flat_metric(mp: MetricPair) -> Report:
    r = check_curvature_free(mp.product)
    c = r.checks[0]
    return verdict("flat_metric", c.witness)


def is_invariant(A: LieAlgebra, form: ScalarProduct) -> Report:
    """mu([x,y],z) + mu(y,[x,z]) = 0 on basis triples."""
    n = A.dim
    G = form.gram
    t = A.table
    for i in range(n):
        for j in range(n):
            for k in range(j, n):
                lhs = la.dot(t[i][j], G[k])
                rhs = -la.dot(t[i][k], G[j])
                if lhs != rhs:
                    return verdict("invariant", {"indices": [i, j, k], "lhs": lhs, "rhs": rhs})
    return verdict("invariant", None)


def biinvariant_levi_civita(A: LieAlgebra) -> Product:
    """x.y = 1/2 [x, y]."""
    return bracket_product(A, HALF)


def is_two_nilpotent(A: LieAlgebra) -> Report:
    n = A.dim
    t = A.table
    for i in range(n):
        for j in range(i + 1, n):
            if la.is_zero(t[i][j]):
                continue
            for k in range(n):
                w = A.bracket(t[i][j], A.basis(k))
                if not la.is_zero(w):
                    return verdict("two_nilpotent", {"indices": [i, j, k], "lhs": w,
                                                     "rhs": la.zero_vector(n)})
    return verdict("two_nilpotent", None)


def antisymmetric_wrt(form: ScalarProduct, m: Matrix) -> Report:
    """gram.M + M^T.gram = 0."""
    G = form.gram
    m = la.matrix(m)
    n = len(G)
    if la.shape(m) != (n, n) and not (n == 0 and not m):
        raise DimensionError(f"map must be {n}x{n}, got {la.shape(m)}")
    GM = la.matmul(G, m)
    for j in range(n):
        for k in range(j, n):
            if GM[j][k] != -GM[k][j]:
                return verdict("antisymmetric", {"indices": [j, k], "lhs": GM[k][j],
                                                 "rhs": -GM[j][k]})
    return verdict("antisymmetric", None)


def biinvariant_curvature_report(A: LieAlgebra) -> Report:
    """Curvature of x.y = 1/2[x,y] equals -1/4 [[x,y],z] on every basis triple."""
    from .connections import curvature_at

    P = biinvariant_levi_civita(A)
    n = A.dim
    q = Fraction(-1, 4)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = curvature_at(P, i, j, k)
                rhs = la.vscale(q, A.bracket(A.table[i][j], A.basis(k)))
                if lhs != rhs:
                    return verdict("biinvariant_curvature", {"indices": [i, j, k],
                                                             "lhs": lhs, "rhs": rhs})
    return verdict("biinvariant_curvature", None)
