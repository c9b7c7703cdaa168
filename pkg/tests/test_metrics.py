from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatlie import linalg as la
from flatlie.algebra import LieAlgebra
from flatlie.catalog import catalog
from flatlie.connections import (Product, check_left_homomorphism, check_torsion_free,
                                 is_complete, is_unimodular, left_traces_vanish)
from flatlie.constructions import oscillator
from flatlie.errors import DimensionError, ShapeError, SingularError, ValidationError
from flatlie.metrics import (MetricPair, ScalarProduct, antisymmetric_wrt,
                             biinvariant_curvature_report, biinvariant_levi_civita,
                             check_compatible, is_flat_metric, is_invariant, is_two_nilpotent,
                             koszul_rhs, levi_civita)

import generators
import oracle

F = Fraction
AFF = catalog("aff1")
H3 = catalog("heisenberg")


def table(P):
    return {k: {i: c for i, c in v.items()} for k, v in P.sparse().items()}


# -- scalar products -----------------------------------------------------------------------

def test_degenerate_gram_rejected():
    with pytest.raises(SingularError):
        ScalarProduct(AFF.algebra, la.matrix([[1, 1], [1, 1]]))


def test_nonsymmetric_gram_rejected():
    with pytest.raises(ShapeError):
        ScalarProduct(AFF.algebra, la.matrix([[1, 1], [0, 1]]))


def test_gram_dimension_checked():
    with pytest.raises(DimensionError):
        ScalarProduct(AFF.algebra, la.identity(3))


def test_metric_pair_rejects_non_levi_civita():
    with pytest.raises(ValidationError):
        MetricPair(H3.product("flat"), H3.form("lorentz"))


# -- Levi-Civita examples --------------------------------------------------------------------

def test_levi_civita_aff_hyperbolic():
    P = levi_civita(AFF.algebra, AFF.form("hyperbolic")).product
    assert table(P) == {(0, 0): {0: -1}, (0, 1): {1: 1}}


def test_levi_civita_abelian_is_zero():
    A = LieAlgebra.abelian(3)
    G = generators.nondegenerate_gram(generators.rng(4), 3)
    assert table(levi_civita(A, ScalarProduct(A, G)).product) == {}


def test_levi_civita_aff_euclidean():
    P = levi_civita(AFF.algebra, AFF.form("euclidean")).product
    assert table(P) == {(1, 0): {1: -1}, (1, 1): {0: 1}}


def test_heisenberg_lorentz_levi_civita_matches_oracle():
    A = H3.algebra
    G = H3.forms["lorentz"]
    P = levi_civita(A, H3.form("lorentz")).product
    assert oracle.coeffs(P) == oracle.levi_civita_by_conditions(oracle.structure(A), G)
    assert table(P) == {(0, 0): {1: -1}, (0, 1): {2: 1}}
    assert is_flat_metric(levi_civita(A, H3.form("lorentz"))).passed


def test_heisenberg_flat_product_is_not_compatible_with_lorentz_gram():
    r = check_compatible(H3.product("flat"), H3.form("lorentz"))
    assert not r.passed


def test_heisenberg_flat_product_is_levi_civita_of_alternate_gram():
    P = levi_civita(H3.algebra, H3.form("lorentz_alt")).product
    assert P.equals(H3.product("flat"))
    assert H3.form("lorentz_alt").signature.as_tuple() == (1, 2, 0)


def test_koszul_rhs_definition():
    A, g = AFF.algebra, AFF.form("hyperbolic")
    for i in range(2):
        for j in range(2):
            rhs = koszul_rhs(A, g, i, j)
            P = levi_civita(A, g).product
            for k in range(2):
                assert g(P.coeffs[i][j], A.basis(k)) == rhs[k]


def test_levi_civita_degenerate_raises():
    with pytest.raises(SingularError):
        levi_civita(AFF.algebra, ScalarProduct(AFF.algebra, la.zeros(2)))


# -- flatness / invariance ---------------------------------------------------------------------

def test_flat_metric_examples():
    assert not is_flat_metric(levi_civita(AFF.algebra, AFF.form("euclidean"))).passed
    A = LieAlgebra.abelian(2)
    assert is_flat_metric(levi_civita(A, ScalarProduct(A, la.matrix([[0, 1], [1, 0]])))).passed


def test_invariant_oscillator():
    O = oscillator((1, 2))
    assert is_invariant(O.algebra, O.form).passed


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_no_invariant_form_on_aff(seed):
    rng = generators.rng(seed)
    G = generators.nondegenerate_gram(rng, 2)
    assert not is_invariant(AFF.algebra, ScalarProduct(AFF.algebra, G)).passed


def test_invariant_abelian():
    A = LieAlgebra.abelian(3)
    assert is_invariant(A, ScalarProduct(A, la.identity(3))).passed


def test_biinvariant_examples():
    assert table(biinvariant_levi_civita(LieAlgebra.abelian(2))) == {}
    assert table(biinvariant_levi_civita(H3.algebra)) == {(0, 1): {2: F(1, 2)}, (1, 0): {2: F(-1, 2)}}


@pytest.mark.parametrize("lam", [(1,), (1, 1), (1, 2), (1, 2, 3), (F(1, 2), 3)])
def test_oscillator_levi_civita_is_half_bracket(lam):
    O = oscillator(lam)
    assert levi_civita(O.algebra, O.form).product.equals(biinvariant_levi_civita(O.algebra))
    assert biinvariant_curvature_report(O.algebra).passed


def test_two_nilpotent_examples():
    assert is_two_nilpotent(H3.algebra).passed
    r = is_two_nilpotent(oscillator((1,)).algebra)
    assert not r.passed
    assert is_two_nilpotent(LieAlgebra.abelian(3)).passed


def test_antisymmetric_examples():
    I2 = ScalarProduct(LieAlgebra.abelian(2), la.identity(2))
    assert antisymmetric_wrt(I2, la.zeros(2)).passed
    assert antisymmetric_wrt(I2, la.matrix([[0, -1], [1, 0]])).passed
    assert not antisymmetric_wrt(I2, la.matrix([[1, 0], [0, 0]])).passed
    mp = levi_civita(AFF.algebra, AFF.form("hyperbolic"))
    assert antisymmetric_wrt(mp.form, mp.product.left(la.vector([1, 0]))).passed


# -- properties -------------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(12))
def test_koszul_matches_condition_solve(seed):
    rng = generators.rng(100 + seed)
    A = generators.random_algebra_small(rng)
    G = generators.nondegenerate_gram(rng, A.dim)
    P = levi_civita(A, ScalarProduct(A, G)).product
    assert oracle.coeffs(P) == oracle.levi_civita_by_conditions(oracle.structure(A), G)


@pytest.mark.parametrize("seed", range(10))
def test_levi_civita_uniqueness_under_mutation(seed):
    rng = generators.rng(200 + seed)
    A = generators.random_algebra_small(rng)
    G = generators.nondegenerate_gram(rng, A.dim)
    form = ScalarProduct(A, G)
    P = levi_civita(A, form).product
    n = A.dim
    i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
    coeffs = [[list(v) for v in row] for row in P.coeffs]
    coeffs[i][j][k] += rng.choice([1, -1, F(1, 2)])
    Q = Product(A, tuple(tuple(tuple(v) for v in row) for row in coeffs))
    assert not (check_torsion_free(Q).passed and check_compatible(Q, form).passed)


@pytest.mark.parametrize("seed", range(15))
def test_flat_metric_implies_homomorphism_and_traces(seed):
    rng = generators.rng(300 + seed)
    A, G = generators.random_flat_pair(rng)
    mp = levi_civita(A, ScalarProduct(A, G))
    assert is_flat_metric(mp).passed
    assert check_left_homomorphism(mp.product).passed
    assert left_traces_vanish(mp.product).passed
    for i in range(A.dim):
        assert antisymmetric_wrt(mp.form, mp.product.left_basis[i]).passed
    assert is_complete(mp.product).passed == is_unimodular(A).passed


@pytest.mark.parametrize("seed", range(15))
def test_invariant_forms_give_half_bracket(seed):
    rng = generators.rng(400 + seed)
    A, G = generators.random_invariant_pair(rng)
    form = ScalarProduct(A, G)
    assert is_invariant(A, form).passed
    mp = levi_civita(A, form)
    assert mp.product.equals(biinvariant_levi_civita(A))
    assert biinvariant_curvature_report(A).passed
    assert is_flat_metric(mp).passed == is_two_nilpotent(A).passed
    c = oracle.structure(A)
    assert oracle.invariant(c, G)
    assert oracle.curvature_zero(c, oracle.coeffs(mp.product)) == oracle.two_nilpotent(c)
