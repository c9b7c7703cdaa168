"""Structure detection: Milnor splitting of flat Riemannian algebras, semisimplicity,
orthogonal complements of ideals."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .algebra import (LieAlgebra, is_abelian_span, is_ideal, is_subalgebra,
                      killing_form)
from .constructions import OrthogonalAlgebra
from .errors import DimensionError, PreconditionError, ValidationError
from .linalg import Matrix, Vector
from .metrics import (MetricPair, ScalarProduct, antisymmetric_wrt, is_flat_metric,
                      levi_civita)
from .report import Report, combine, failed, verdict


@dataclass(frozen=True)
class MilnorDecomposition:
    """g = b + u, b an abelian subalgebra, u an abelian ideal, b orthogonal to u.

    ``report`` holds one check per certified property; when the metric is not
    flat the report carries a failing ``flat_metric`` check and both bases are
    empty.
    """

    b_basis: tuple[Vector, ...]
    u_basis: tuple[Vector, ...]
    report: Report

    @property
    def ok(self) -> bool:
        return self.report.passed


def kernel_of_left(mp: MetricPair) -> list[Vector]:
    """Basis of {x : L_x = 0}, from the nullspace of the stacked vec(L_{e_i})."""
    L = mp.product.left_basis
    n = mp.algebra.dim
    # row (r, c) of the stacked system reads sum_i x_i L_i[r][c] = 0
    rows = tuple(tuple(L[i][r][c] for i in range(n)) for r in range(n) for c in range(n))
    return la.nullspace(rows, n)


def orthogonal_complement(gram: Matrix, basis: Sequence[Vector]) -> list[Vector]:
    n = len(gram)
    if not basis:
        return [la.unit(n, i) for i in range(n)]
    rows = tuple(la.matvec(gram, v) for v in basis)  # gram symmetric
    return la.nullspace(rows, n)


def certify_milnor(A: LieAlgebra, form: ScalarProduct, b: Sequence[Vector],
                   u: Sequence[Vector]) -> Report:
    n = A.dim
    reports = []
    w = None
    for i, x in enumerate(b):
        for j, y in enumerate(u):
            val = form(x, y)
            if val:
                w = {"indices": [i, j], "lhs": val, "rhs": la.ZERO}
                break
        if w:
            break
    reports.append(verdict("orthogonal", w))
    spans = la.rank(tuple(b) + tuple(u)) if (b or u) else 0
    reports.append(verdict("direct_sum", None if spans == n and len(b) + len(u) == n
                           else {"indices": [], "lhs": spans, "rhs": n}))
    reports.append(is_abelian_span(A, u, "u_abelian"))
    reports.append(is_ideal(A, u).renamed("u_"))
    reports.append(is_abelian_span(A, b, "b_abelian"))
    reports.append(is_subalgebra(A, b).renamed("b_"))
    w = None
    for i, x in enumerate(b):
        r = antisymmetric_wrt(form, A.ad(x))
        if not r:
            w = dict(r.first_failure.witness)
            w["indices"] = [i] + w["indices"]
            break
    reports.append(verdict("ad_b_antisymmetric", w))
    return combine(reports)


def milnor_decompose(A: LieAlgebra, form: ScalarProduct) -> MilnorDecomposition:
    """u = Ker(L) for the Levi-Civita product, b = u^perp, then certify."""
    if form.algebra.dim != A.dim:
        raise DimensionError("form and algebra dimensions differ")
    if not form.is_positive_definite():
        raise PreconditionError("Milnor decomposition needs a positive definite form")
    mp = levi_civita(A, form)
    flat = is_flat_metric(mp)
    if not flat:
        return MilnorDecomposition((), (), failed("flat_metric", flat.checks[0].witness,
                                                  "metric not flat"))
    u = kernel_of_left(mp)
    b = orthogonal_complement(form.gram, u)
    cert = certify_milnor(A, form, b, u)
    return MilnorDecomposition(tuple(b), tuple(u), flat + cert)


def milnor_assemble(b_dim: int, u_dim: int, action: Sequence[Matrix],
                    gram) -> tuple[LieAlgebra, MetricPair]:
    """b x u with [b_i, u_j] = action_i(u_j) and the given block-diagonal Gram."""
    if len(action) != b_dim:
        raise DimensionError(f"need {b_dim} action maps, got {len(action)}")
    action = [la.matrix(M) if M else la.zeros(u_dim) for M in action]
    for M in action:
        if la.shape(M) != (u_dim, u_dim) and u_dim:
            raise DimensionError(f"action maps must be {u_dim}x{u_dim}")
    G = la.matrix(gram)
    N = b_dim + u_dim
    if la.shape(G) != (N, N):
        raise DimensionError(f"Gram must be {N}x{N}")
    if any(G[i][b_dim + j] for i in range(b_dim) for j in range(u_dim)):
        raise ValidationError("Gram must be block diagonal with respect to b + u")
    if not la.is_positive_definite(G):
        raise ValidationError("Gram must be positive definite")
    Gu = tuple(row[b_dim:] for row in G[b_dim:])
    for i, M in enumerate(action):
        GM = la.matmul(Gu, M)
        if la.madd(GM, la.transpose(GM)) != la.zeros(u_dim):
            raise ValidationError(f"action[{i}] is not antisymmetric on u")
    for i in range(b_dim):
        for j in range(i + 1, b_dim):
            if la.commutator(action[i], action[j]) != la.zeros(u_dim):
                raise ValidationError(f"action[{i}] and action[{j}] do not commute")
    br = {}
    for i, M in enumerate(action):
        for j in range(u_dim):
            col = la.column(M, j)
            if not la.is_zero(col):
                br[(i, b_dim + j)] = {b_dim + k: c for k, c in enumerate(col) if c}
    names = tuple(f"b{i + 1}" for i in range(b_dim)) + tuple(f"u{j + 1}" for j in range(u_dim))
    A = LieAlgebra(f"b{b_dim}xu{u_dim}", N, names, br)
    mp = levi_civita(A, ScalarProduct(A, G))
    return A, mp


def is_semisimple(A: LieAlgebra) -> Report:
    """Nondegenerate Killing form."""
    K = killing_form(A)
    d = la.det(K) if A.dim else la.ONE
    if A.dim == 0 or d == 0:
        return failed("semisimple", {"indices": [], "lhs": d, "rhs": None},
                      "Killing form is degenerate")
    return verdict("semisimple", None)


def orthogonal_complement_ideal(O: OrthogonalAlgebra, ideal_basis: Sequence) -> tuple[list[Vector], Report]:
    """Orthogonal complement of an ideal in an orthogonal algebra, certified to be an ideal."""
    A = O.algebra
    basis = [A.vec(v) for v in ideal_basis]
    if not O.form.is_positive_definite():
        raise PreconditionError("orthogonal complement of an ideal needs an inner product")
    r = is_ideal(A, basis)
    if not r:
        raise ValidationError(f"input does not span an ideal: witness {r.first_failure.witness}")
    comp = orthogonal_complement(O.form.gram, basis)
    return comp, is_ideal(A, comp).renamed("complement_")
