"""Builders for orthogonal and flat pseudo-Riemannian Lie algebras.

Basis conventions: cotangent algebras use (g-basis, dual basis); the double
extension of (g, mu0) by h uses (h, g, h*). Dual vectors are coordinate
vectors in the dual basis, so the dual of a map with matrix M acts by -M^T.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .algebra import LieAlgebra, _sparse, check_jacobi, direct_sum
from .connections import Product, is_flat_affine
from .errors import DimensionError, PreconditionError, ValidationError
from .linalg import Matrix, Vector
from .metrics import (MetricPair, ScalarProduct, antisymmetric_wrt, is_flat_metric,
                      is_invariant, levi_civita)
from .report import Report, combine, verdict


@dataclass(frozen=True, eq=False)
class OrthogonalAlgebra:
    """A Lie algebra with an invariant scalar product (checked on construction)."""

    algebra: LieAlgebra
    form: ScalarProduct

    def __post_init__(self):
        if self.form.algebra.dim != self.algebra.dim:
            raise DimensionError("form and algebra dimensions differ")
        if self.form.algebra is not self.algebra:
            object.__setattr__(self, "form", self.form.on(self.algebra))
        r = is_invariant(self.algebra, self.form)
        if not r:
            raise ValidationError(f"form is not invariant: witness {r.first_failure.witness}")

    @property
    def dim(self) -> int:
        return self.algebra.dim


def dual_map(M: Matrix) -> Matrix:
    """Matrix of alpha -> -alpha o M on dual coordinates."""
    return la.mscale(-1, la.transpose(M))


def hyperbolic_gram(n: int) -> Matrix:
    """[[0, I], [I, 0]], the pairing alpha(y) + beta(x) on g + g*."""
    Z, I = la.zeros(n), la.identity(n)
    return tuple(a + b for a, b in zip(Z, I)) + tuple(a + b for a, b in zip(I, Z))


def semidirect_dual(A: LieAlgebra, reps: Sequence[Matrix], name: str,
                    dual_prefix: str = "") -> LieAlgebra:
    """g + g* with [(x,a),(y,b)] = ([x,y], rho*_x b - rho*_y a), rho_{e_i} = reps[i]."""
    n = A.dim
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), coeffs in A.brackets.items():
        br[(i, j)] = dict(coeffs)
    for i in range(n):
        D = dual_map(reps[i])
        for k in range(n):
            col = la.column(D, k)
            if not la.is_zero(col):
                br[(i, n + k)] = {n + l: c for l, c in enumerate(col) if c}
    names = tuple(A.basis_names) + tuple(f"{dual_prefix}{s}*" for s in A.basis_names)
    return LieAlgebra(name, 2 * n, names, br)


def cotangent_coadjoint(A: LieAlgebra) -> OrthogonalAlgebra:
    """g + g* with the coadjoint action and the hyperbolic invariant form."""
    if not check_jacobi(A):
        raise ValidationError(f"{A.name} fails the Jacobi identity")
    T = semidirect_dual(A, A.ad_basis, f"T*{A.name}")
    return OrthogonalAlgebra(T, ScalarProduct(T, hyperbolic_gram(A.dim)))


def classical_cotangent(A: LieAlgebra, P: Product) -> MetricPair:
    """g x_L g* for a flat affine product, with its flat hyperbolic metric.

    The product (x,a).(y,b) = (x.y, L*_x b) is built directly, then compared
    against the Koszul solution for the same form; a mismatch or a curved
    result raises, since neither can happen for a flat affine input.
    """
    if P.algebra.dim != A.dim:
        raise DimensionError("product and algebra dimensions differ")
    if not is_flat_affine(P):
        raise PreconditionError("classical cotangent needs a flat affine product")
    n = A.dim
    T = semidirect_dual(A, P.left_basis, f"T*{A.name}[L]")
    N = 2 * n
    table = [[la.zero_vector(N)] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            table[i][j] = P.coeffs[i][j] + la.zero_vector(n)
        D = dual_map(P.left_basis[i])
        for k in range(n):
            table[i][n + k] = la.zero_vector(n) + la.column(D, k)
    product = Product(T, tuple(tuple(r) for r in table))
    pair = MetricPair(product, ScalarProduct(T, hyperbolic_gram(n)))
    koszul = levi_civita(T, pair.form)
    if not koszul.product.equals(product):
        raise ValidationError("classical cotangent product disagrees with the Koszul solution")
    if not is_flat_metric(pair):
        raise ValidationError("classical cotangent metric is not flat")
    return pair


def check_intertwiner(A: LieAlgebra, P: Product, psi) -> Report:
    """psi invertible with ad*_x psi = psi L*_x on every basis vector."""
    psi = la.matrix(psi)
    n = A.dim
    if la.shape(psi) != (n, n):
        raise DimensionError(f"psi must be {n}x{n}")
    if not is_flat_affine(P):
        raise PreconditionError("intertwiner check needs a flat affine product")
    if la.det(psi) == 0:
        return verdict("intertwiner_invertible", {"indices": [], "lhs": la.ZERO, "rhs": None})
    for i in range(n):
        lhs = la.matmul(dual_map(A.ad_basis[i]), psi)
        rhs = la.matmul(psi, dual_map(P.left_basis[i]))
        if lhs != rhs:
            return verdict("intertwiner", {"indices": [i], "lhs": lhs, "rhs": rhs})
    return verdict("intertwiner", None)


# -- double orthogonal extension ----------------------------------------------

@dataclass(frozen=True, eq=False)
class SkewDerivationMap:
    """psi : h -> Der_a(g, mu0), given by the images of h's basis vectors."""

    source: LieAlgebra
    base: OrthogonalAlgebra
    maps: tuple[Matrix, ...]

    def __post_init__(self):
        n = self.base.dim
        maps = tuple(la.matrix(M) if M else la.zeros(n) for M in self.maps)
        if len(maps) != self.source.dim:
            raise DimensionError(f"need {self.source.dim} maps, got {len(maps)}")
        for M in maps:
            if la.shape(M) != (n, n) and n:
                raise DimensionError(f"each psi_z must be {n}x{n}")
        object.__setattr__(self, "maps", maps)

    def at(self, z) -> Matrix:
        """psi_z for an arbitrary z in h."""
        n = self.base.dim
        out = la.zeros(n)
        for c, M in zip(z, self.maps):
            if c:
                out = la.madd(out, la.mscale(c, M))
        return out

    def validate(self) -> Report:
        g = self.base.algebra
        n = g.dim
        reports = []
        w = None
        for a, M in enumerate(self.maps):
            for i in range(n):
                for j in range(i + 1, n):
                    lhs = la.matvec(M, g.table[i][j])
                    rhs = la.vadd(g.bracket(la.column(M, i), g.basis(j)),
                                  g.bracket(g.basis(i), la.column(M, j)))
                    if lhs != rhs:
                        w = {"indices": [a, i, j], "lhs": lhs, "rhs": rhs}
                        break
                if w:
                    break
            if w:
                break
        reports.append(verdict("derivation", w))
        w = None
        for a, M in enumerate(self.maps):
            r = antisymmetric_wrt(self.base.form, M)
            if not r:
                w = dict(r.first_failure.witness)
                w["indices"] = [a] + w["indices"]
                break
        reports.append(verdict("skew_symmetric", w))
        w = None
        h = self.source
        for a in range(h.dim):
            for b in range(a + 1, h.dim):
                lhs = self.at(h.table[a][b])
                rhs = la.commutator(self.maps[a], self.maps[b])
                if lhs != rhs:
                    w = {"indices": [a, b], "lhs": lhs, "rhs": rhs}
                    break
            if w:
                break
        reports.append(verdict("homomorphism", w))
        return combine(reports)


def cocycle(psi: SkewDerivationMap, x: Vector, y: Vector) -> Vector:
    """Phi(x, y) in h*, with Phi(x, y)(z) = mu0(psi_z x, y)."""
    mu = psi.base.form
    return tuple(mu(la.matvec(M, x), y) for M in psi.maps)


def coadjoint(h: LieAlgebra, z: Vector) -> Matrix:
    return dual_map(h.ad(z))


def central_extension(psi: SkewDerivationMap) -> LieAlgebra:
    """g x_Phi h* with [(x,a),(y,b)]_c = ([x,y], Phi(x,y))."""
    g = psi.base.algebra
    n, m = g.dim, psi.source.dim
    br = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = g.table[i][j] + cocycle(psi, g.basis(i), g.basis(j))
            if not la.is_zero(v):
                br[(i, j)] = _sparse(v)
    names = tuple(g.basis_names) + tuple(f"{s}*" for s in psi.source.basis_names)
    return LieAlgebra(f"{g.name}x_Phi", n + m, names, br)


def theta(psi: SkewDerivationMap, z: Vector) -> Matrix:
    """Theta_z(x, a) = (psi_z x, pi*_z a) on g x_Phi h*."""
    return la.block_diag(psi.at(z), coadjoint(psi.source, z))


def _extended_bracket(psi: SkewDerivationMap, u: Vector, v: Vector) -> Vector:
    h, g = psi.source, psi.base.algebra
    m, n = h.dim, g.dim
    z, x, a = u[:m], u[m:m + n], u[m + n:]
    zp, y, b = v[:m], v[m:m + n], v[m + n:]
    hz = h.bracket(z, zp)
    gx = la.vadd(la.vsub(la.matvec(psi.at(z), y), la.matvec(psi.at(zp), x)), g.bracket(x, y))
    dual = la.vadd(la.vsub(la.matvec(coadjoint(h, z), b), la.matvec(coadjoint(h, zp), a)),
                   cocycle(psi, x, y))
    return hz + gx + dual


def double_extension_gram(base: OrthogonalAlgebra, m: int) -> Matrix:
    """mu0(x,y) + a(z') + b(z) in the (h, g, h*) basis."""
    n = base.dim
    N = 2 * m + n
    G = [[la.ZERO] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            G[m + i][m + j] = base.form.gram[i][j]
    for a in range(m):
        G[a][m + n + a] = G[m + n + a][a] = la.ONE
    return tuple(tuple(r) for r in G)


def double_extension(base: OrthogonalAlgebra, h: LieAlgebra,
                     psi: SkewDerivationMap | Sequence[Matrix]) -> OrthogonalAlgebra:
    """h x_Theta (g x_Phi h*) with its extended invariant form."""
    if not isinstance(psi, SkewDerivationMap):
        psi = SkewDerivationMap(h, base, tuple(psi))
    if psi.source.dim != h.dim:
        raise DimensionError("psi source dimension does not match h")
    r = psi.validate()
    if not r:
        bad = r.first_failure
        raise ValidationError(f"psi is not a homomorphism into skew derivations: "
                              f"{bad.name} fails at {bad.witness}")
    if not check_jacobi(h):
        raise ValidationError(f"{h.name} fails the Jacobi identity")
    g = base.algebra
    m, n = h.dim, g.dim
    N = 2 * m + n
    basis = [la.unit(N, i) for i in range(N)]
    table = [[_extended_bracket(psi, basis[i], basis[j]) if i < j else None
              for j in range(N)] for i in range(N)]
    br = {(i, j): _sparse(table[i][j]) for i in range(N) for j in range(i + 1, N)
          if not la.is_zero(table[i][j])}
    names = (tuple(h.basis_names) + tuple(g.basis_names)
             + tuple(f"{s}*" for s in h.basis_names))
    if len(set(names)) != len(names):
        names = tuple(f"e{i + 1}" for i in range(N))
    ext = LieAlgebra(f"D({g.name},{h.name})", N, names, br)
    return OrthogonalAlgebra(ext, ScalarProduct(ext, double_extension_gram(base, m)))


def check_cocycle(psi: SkewDerivationMap) -> Report:
    """Phi is skew and Phi([x,y],w) + Phi([y,w],x) + Phi([w,x],y) = 0."""
    g = psi.base.algebra
    n = g.dim
    e = g.basis
    for i in range(n):
        for j in range(n):
            a, b = cocycle(psi, e(i), e(j)), cocycle(psi, e(j), e(i))
            if la.vadd(a, b) != la.zero_vector(len(a)):
                return verdict("cocycle", {"indices": [i, j], "lhs": a, "rhs": la.vscale(-1, b)})
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s = la.vadd(la.vadd(cocycle(psi, g.table[i][j], e(k)),
                                    cocycle(psi, g.table[j][k], e(i))),
                            cocycle(psi, g.table[k][i], e(j)))
                if not la.is_zero(s):
                    return verdict("cocycle", {"indices": [i, j, k], "lhs": s,
                                               "rhs": la.zero_vector(len(s))})
    return verdict("cocycle", None)


def check_theta_derivations(psi: SkewDerivationMap) -> Report:
    """Each Theta_z is a derivation of the central extension."""
    C = central_extension(psi)
    h = psi.source
    N = C.dim
    for a in range(h.dim):
        T = theta(psi, h.basis(a))
        for i in range(N):
            for j in range(i + 1, N):
                lhs = la.matvec(T, C.table[i][j])
                rhs = la.vadd(C.bracket(la.column(T, i), C.basis(j)),
                              C.bracket(C.basis(i), la.column(T, j)))
                if lhs != rhs:
                    return verdict("theta_derivation", {"indices": [a, i, j],
                                                        "lhs": lhs, "rhs": rhs})
    return verdict("theta_derivation", None)


def check_equivariance(psi: SkewDerivationMap) -> Report:
    """pi*_z Phi(x,y) = Phi(psi_z x, y) + Phi(x, psi_z y)."""
    g, h = psi.base.algebra, psi.source
    n = g.dim
    for a in range(h.dim):
        z = h.basis(a)
        P = psi.maps[a]
        D = coadjoint(h, z)
        for i in range(n):
            for j in range(n):
                x, y = g.basis(i), g.basis(j)
                lhs = la.matvec(D, cocycle(psi, x, y))
                rhs = la.vadd(cocycle(psi, la.matvec(P, x), y), cocycle(psi, x, la.matvec(P, y)))
                if lhs != rhs:
                    return verdict("equivariance", {"indices": [a, i, j], "lhs": lhs, "rhs": rhs})
    return verdict("equivariance", None)


def zero_orthogonal() -> OrthogonalAlgebra:
    A = LieAlgebra("0", 0)
    return OrthogonalAlgebra(A, ScalarProduct(A, ()))


def euclidean(n: int) -> OrthogonalAlgebra:
    A = LieAlgebra(f"R{n}", n)
    return OrthogonalAlgebra(A, ScalarProduct(A, la.identity(n)))


def rotation_derivation(lambdas: Sequence) -> tuple[Matrix, Matrix]:
    """(delta, mu0) on R^{2n}: delta e_j = l_j f_j, delta f_j = -l_j e_j, mu0 = diag(1/l)."""
    lam = [la.to_fraction(x) for x in lambdas]
    n = len(lam)
    D = [[la.ZERO] * (2 * n) for _ in range(2 * n)]
    for j, l in enumerate(lam):
        D[n + j][j] = l
        D[j][n + j] = -l
    gram = la.block_diag(*[((1 / l,),) for l in lam + lam])
    return tuple(tuple(r) for r in D), gram


def oscillator_by_double_extension(lambdas: Sequence) -> OrthogonalAlgebra:
    """Double extension of (R^{2n}, diag(1/l)) by Re via the rotation derivation.

    With all l_j = 1 this is the construction with the usual inner product;
    scaling the derivation by l_j and the form by 1/l_j reaches every g_lambda.
    """
    delta, gram = rotation_derivation(lambdas)
    n = len(lambdas)
    base_alg = LieAlgebra(f"R{2 * n}", 2 * n,
                          tuple(f"e{j + 1}" for j in range(n)) + tuple(f"f{j + 1}" for j in range(n)))
    base = OrthogonalAlgebra(base_alg, ScalarProduct(base_alg, gram))
    h = LieAlgebra("Re", 1, ("e",))
    return double_extension(base, h, SkewDerivationMap(h, base, (delta,)))


def _check_lambdas(lambdas: Sequence) -> list[Fraction]:
    lam = [la.to_fraction(x) for x in lambdas]
    if not lam:
        raise ValidationError("oscillator needs at least one lambda")
    if any(l <= 0 for l in lam):
        raise ValidationError("oscillator lambdas must be positive")
    if any(a > b for a, b in zip(lam, lam[1:])):
        raise ValidationError("oscillator lambdas must be nondecreasing")
    return lam


def oscillator(lambdas: Sequence) -> OrthogonalAlgebra:
    """g_lambda in the basis (e, e_1..e_n, ehat_1..ehat_n, ehat)."""
    lam = _check_lambdas(lambdas)
    n = len(lam)
    N = 2 * n + 2
    E, Ehat = 0, N - 1
    ej = lambda j: 1 + j
    fj = lambda j: 1 + n + j
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    for j, l in enumerate(lam):
        br[(E, ej(j))] = {fj(j): l}
        br[(E, fj(j))] = {ej(j): -l}
        br[(ej(j), fj(j))] = {Ehat: la.ONE}
    names = (("e",) + tuple(f"e{j + 1}" for j in range(n))
             + tuple(f"ehat{j + 1}" for j in range(n)) + ("ehat",))
    label = ",".join(la.format_fraction(l) for l in lam)
    A = LieAlgebra(f"oscillator({label})", N, names, br)
    G = [[la.ZERO] * N for _ in range(N)]
    for j, l in enumerate(lam):
        G[ej(j)][ej(j)] = G[fj(j)][fj(j)] = 1 / l
    G[E][Ehat] = G[Ehat][E] = la.ONE
    return OrthogonalAlgebra(A, ScalarProduct(A, tuple(tuple(r) for r in G)))


def orthogonal_direct_sum(*parts: OrthogonalAlgebra) -> OrthogonalAlgebra:
    A = direct_sum(*(p.algebra for p in parts))
    return OrthogonalAlgebra(A, ScalarProduct(A, la.block_diag(*(p.form.gram for p in parts))))


def heisenberg(n: int = 1) -> LieAlgebra:
    """h_{2n+1}: [x_i, y_i] = z, basis (x_1..x_n, y_1..y_n, z)."""
    if n < 1:
        raise ValidationError("heisenberg needs n >= 1")
    N = 2 * n + 1
    br = {(i, n + i): {N - 1: 1} for i in range(n)}
    if n == 1:
        names = ("e1", "e2", "e3")
    else:
        names = tuple(f"x{i + 1}" for i in range(n)) + tuple(f"y{i + 1}" for i in range(n)) + ("z",)
    return LieAlgebra(f"h{N}", N, names, br)
