"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from flatlie import linalg as la  # noqa: E402
from flatlie.algebra import LieAlgebra, change_basis, check_jacobi  # noqa: E402
from flatlie.analysis import is_semisimple, milnor_assemble, milnor_decompose  # noqa: E402
from flatlie.catalog import catalog  # noqa: E402
from flatlie.cli import run_command  # noqa: E402
from flatlie.connections import (check_left_homomorphism, check_torsion_free, curvature,  # noqa: E402
                                 is_complete, is_flat_affine, is_unimodular,
                                 left_traces_vanish, torsion)
from flatlie.constructions import (OrthogonalAlgebra, SkewDerivationMap,  # noqa: E402
                                   central_extension, check_cocycle, check_equivariance,
                                   check_theta_derivations, classical_cotangent,
                                   cotangent_coadjoint, double_extension, euclidean,
                                   heisenberg, oscillator, zero_orthogonal)
from flatlie.manifest import Manifest, emit_manifest, parse_manifest  # noqa: E402
from flatlie.metrics import (ScalarProduct, biinvariant_levi_civita, check_compatible,  # noqa: E402
                             is_flat_metric, is_invariant, is_two_nilpotent, levi_civita)

import generators  # noqa: E402
import oracle  # noqa: E402

F = Fraction
ROT = la.matrix([[0, -1], [1, 0]])
GOLDEN = Path(__file__).parent / "golden"
RESULTS = {}


class Criterion:
    """Collects named sub-conditions; records and prints one line per criterion."""

    def __init__(self, number, title):
        self.number, self.title = number, title
        self.failed = []

    def expect(self, ok, what):
        if not ok:
            self.failed.append(what)
        return ok

    def finish(self):
        ok = not self.failed
        line = f"criterion {self.number:>2} {'PASS' if ok else 'FAIL'}  {self.title}"
        if not ok:
            line += f"  [failed: {'; '.join(self.failed)}]"
        RESULTS[self.number] = line
        print(line)
        assert ok, line


def sparse_of(P):
    return {k: dict(v) for k, v in P.sparse().items()}


def show(table):
    return ", ".join(f"e{i + 1}.e{j + 1}=" + " + ".join(f"{c}*e{k + 1}" for k, c in v.items())
                     for (i, j), v in sorted(table.items()))


def cli(argv, stdin=b"", cwd=None):
    out, err = io.StringIO(), io.StringIO()
    old = os.getcwd()
    if cwd:
        os.chdir(cwd)
    try:
        code = run_command(argv, io.BytesIO(stdin), out, err)
    finally:
        os.chdir(old)
    return code, out.getvalue()


def manifest_bytes(A, forms):
    return emit_manifest(Manifest.from_objects(A, forms)).encode()


# -- 1 --------------------------------------------------------------------------------------

def test_criterion_01_levi_civita_aff_hyperbolic():
    c = Criterion(1, "Levi-Civita of aff(R) with the hyperbolic Gram")
    A = catalog("aff1").algebra
    form = ScalarProduct(A, la.matrix([[0, 1], [1, 0]]))
    P = levi_civita(A, form).product
    c.expect(sparse_of(P) == {(0, 0): {0: -1}, (0, 1): {1: 1}}, "product table")
    code, out = cli(["levi-civita", "-", "--form", "g"], manifest_bytes(A, {"g": form}))
    cli_prod = json.loads(out)["derived"]["manifest"]["products"]["levi_civita"] if code == 0 else None
    c.expect(cli_prod == [[0, 0, [[0, "-1"]]], [0, 1, [[1, "1"]]]], "CLI product")
    c.expect(torsion(P).is_zero(), "torsion zero")
    c.expect(curvature(P).is_zero(), "curvature zero")
    c.expect(not is_complete(P).passed, "is_complete fails")
    c.expect(not is_unimodular(A).passed, "is_unimodular fails")
    c.finish()


# -- 2 --------------------------------------------------------------------------------------

def test_criterion_02_levi_civita_heisenberg_lorentz():
    c = Criterion(2, "Levi-Civita of h3 with Gram [[0,0,1],[0,1,0],[1,0,0]]")
    A = heisenberg(1)
    form = ScalarProduct(A, la.matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]]))
    mp = levi_civita(A, form)
    expected = {(1, 0): {2: F(-1)}, (1, 1): {0: F(1)}}
    got = sparse_of(mp.product)
    c.expect(got == expected, f"product table: expected {show(expected)}, computed {show(got)}")
    c.expect(is_flat_metric(mp).passed, "flat")
    c.expect(is_complete(mp.product).passed, "complete")
    c.expect(is_unimodular(A).passed, "unimodular")
    c.finish()


# -- 3 --------------------------------------------------------------------------------------

def test_criterion_03_aff_euclidean_curved():
    c = Criterion(3, "aff(R) with the identity Gram is curved")
    A = catalog("aff1").algebra
    mp = levi_civita(A, ScalarProduct(A, la.identity(2)))
    c.expect(sparse_of(mp.product) == {(1, 0): {1: -1}, (1, 1): {0: 1}}, "product table")
    r = is_flat_metric(mp)
    failing = [ch for ch in r.checks if not ch.passed]
    c.expect(not r.passed, "curvature nonzero")
    c.expect(bool(failing) and failing[0].witness is not None
             and failing[0].witness["lhs"] != failing[0].witness["rhs"], "witness reported")
    c.finish()


# -- 4 --------------------------------------------------------------------------------------

def test_criterion_04_oscillator_suite():
    c = Criterion(4, "oscillator suite for lambda in (1), (1,1), (1,2), (1,2,3)")
    for lam in [(1,), (1, 1), (1, 2), (1, 2, 3)]:
        n = len(lam)
        O = oscillator(lam)
        A = O.algebra
        c.expect(check_jacobi(A).passed, f"{lam}: Jacobi")
        c.expect(is_invariant(A, O.form).passed, f"{lam}: mu0 invariant")
        c.expect(O.form.signature.as_tuple()[:2] == (1, 2 * n + 1)
                 and O.form.signature.zero == 0, f"{lam}: signature")
        R = curvature(biinvariant_levi_civita(A))
        ok = all(R.at(i, j, k) == la.vscale(F(-1, 4), A.bracket(A.table[i][j], A.basis(k)))
                 for i in range(A.dim) for j in range(A.dim) for k in range(A.dim))
        c.expect(ok, f"{lam}: curvature equals -1/4 [[x,y],z]")
        c.expect(not is_two_nilpotent(A).passed, f"{lam}: not 2-nilpotent")
        c.expect(not is_flat_metric(levi_civita(A, O.form)).passed, f"{lam}: metric not flat")
        c.expect(is_unimodular(A).passed, f"{lam}: unimodular")
    c.finish()


# -- 5 --------------------------------------------------------------------------------------

def test_criterion_05_double_extension_reconstruction():
    c = Criterion(5, "double extension of R^2 by Re with a rotation is the oscillator")
    base = euclidean(2)
    h = LieAlgebra("Re", 1, ("e",))
    psi = SkewDerivationMap(h, base, (ROT,))
    D = double_extension(base, h, psi)
    O = oscillator((1,))
    # fixed basis map (e, x, y, e*) -> (e, e1, ehat1, ehat)
    S = la.matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    c.expect(change_basis(D.algebra, S).structure_equal(O.algebra), "structure constants")
    c.expect(la.matmul(la.transpose(S), la.matmul(D.form.gram, S)) == O.form.gram, "form")
    c.expect(central_extension(psi).structure_equal(heisenberg(1)), "central extension is h3")
    c.expect(check_cocycle(psi).passed, "cocycle identity")
    c.expect(check_theta_derivations(psi).passed, "Theta derivations")
    c.expect(check_equivariance(psi).passed, "equivariance")
    c.expect(D.form.signature.as_tuple() == (1, 3, 0), "signature (1,3)")
    c.finish()


# -- 6 --------------------------------------------------------------------------------------

def test_criterion_06_cotangent_constructions():
    c = Criterion(6, "cotangent constructions")
    T = cotangent_coadjoint(heisenberg(1))
    c.expect(check_jacobi(T.algebra).passed, "T*h3 Jacobi")
    c.expect(is_invariant(T.algebra, T.form).passed, "T*h3 invariant")
    c.expect(T.form.signature.as_tuple() == (3, 3, 0), "T*h3 signature (3,3)")
    aff = catalog("aff1", alpha=0)
    mp = classical_cotangent(aff.algebra, aff.product("flat"))
    c.expect(is_flat_metric(mp).passed, "classical cotangent flat")
    c.expect(mp.form.signature.as_tuple() == (2, 2, 0), "signature (2,2)")
    c.expect(mp.product.equals(levi_civita(mp.algebra, mp.form).product), "equals Koszul product")
    c.expect(oracle.coeffs(mp.product) == oracle.levi_civita_by_conditions(
        oracle.structure(mp.algebra), mp.form.gram), "equals oracle solve")
    c.finish()


# -- 7 --------------------------------------------------------------------------------------

def test_criterion_07_degenerate_double_extension():
    c = Criterion(7, "double extension of {0} is the coadjoint cotangent")
    for h in (LieAlgebra.abelian(2), catalog("aff1").algebra, heisenberg(1)):
        D = double_extension(zero_orthogonal(), h, [()] * h.dim)
        T = cotangent_coadjoint(h)
        c.expect(D.algebra.structure_equal(T.algebra), f"{h.name}: structure")
        c.expect(D.form.gram == T.form.gram, f"{h.name}: form")
    c.finish()


# -- 8 --------------------------------------------------------------------------------------

def expected_milnor_spaces(b_dim, u_dim, action, gram):
    """Kernel of L computed from the inputs: u plus the b-combinations acting trivially."""
    N = b_dim + u_dim
    flat = la.transpose([tuple(x for row in M for x in row) for M in action])
    central = la.nullspace(flat) if b_dim else []
    u = [la.unit(N, b_dim + j) for j in range(u_dim)]
    u += [tuple(v) + la.zero_vector(u_dim) for v in central]
    b = la.nullspace(la.matmul(la.matrix(u), gram)) if u else [la.unit(N, i) for i in range(N)]
    return b, u


def test_criterion_08_milnor():
    c = Criterion(8, "Milnor decomposition")
    A, mp = milnor_assemble(1, 2, [ROT], la.identity(3))
    d = milnor_decompose(A, mp.form)
    c.expect(d.ok, "rotation example decomposes")
    c.expect(la.span_equal(d.u_basis, [la.unit(3, 1), la.unit(3, 2)], 3)
             and la.span_equal(d.b_basis, [la.unit(3, 0)], 3), "rotation example subspaces")
    rng = generators.rng(800)
    for t in range(30):
        b, u, act, gram = generators.random_milnor_input(rng)
        A, mp = milnor_assemble(b, u, act, gram)
        d = milnor_decompose(A, mp.form)
        eb, eu = expected_milnor_spaces(b, u, act, gram)
        N = b + u
        c.expect(d.ok and la.span_equal(d.u_basis, eu, N) and la.span_equal(d.b_basis, eb, N),
                 f"assembled case {t}")
    aff = catalog("aff1").algebra
    d = milnor_decompose(aff, ScalarProduct(aff, la.identity(2)))
    c.expect(not d.ok and d.report.first_failure.detail == "metric not flat", "aff(R) not flat")
    c.finish()


# -- 9 --------------------------------------------------------------------------------------

def test_criterion_09_flat_affine_catalog():
    c = Criterion(9, "catalog products are flat affine")
    for alpha in (0, 1, -2):
        c.expect(is_flat_affine(catalog("aff1", alpha=alpha).product("flat")).passed, f"aff1 {alpha}")
    c.expect(is_flat_affine(catalog("heisenberg").product("flat")).passed, "h3")
    for alpha in (0, 1):
        c.expect(is_flat_affine(catalog("r_rho_r3", alpha=alpha).product("flat")).passed,
                 f"r_rho_r3 {alpha}")
    c.finish()


# -- 10 -------------------------------------------------------------------------------------

def test_criterion_10_global_properties():
    c = Criterion(10, "global property suite (seeded, 240 cases)")
    cases = 0
    rng = generators.rng(1000)
    for t in range(80):
        A = generators.random_algebra_small(rng)
        G = generators.nondegenerate_gram(rng, A.dim)
        form = ScalarProduct(A, G)
        P = levi_civita(A, form).product
        a = oracle.coeffs(P)
        ok = (check_torsion_free(P).passed and check_compatible(P, form).passed
              and oracle.torsion_free(oracle.structure(A), a) and oracle.metric_compatible(a, G))
        c.expect(ok, f"Koszul case {t}")
        cases += 1
    for t in range(40):
        A, G = generators.random_flat_pair(rng)
        mp = levi_civita(A, ScalarProduct(A, G))
        st, a = oracle.structure(A), oracle.coeffs(mp.product)
        ok = (is_flat_metric(mp).passed and oracle.curvature_zero(st, a)
              and check_left_homomorphism(mp.product).passed and oracle.left_homomorphism(st, a)
              and left_traces_vanish(mp.product).passed and not any(oracle.left_traces(a))
              and is_complete(mp.product).passed == is_unimodular(A).passed)
        c.expect(ok, f"flat pair case {t}")
        cases += 1
    for t in range(30):
        name = rng.choice(["aff1", "heisenberg", "r_rho_r3"])
        e = catalog(name, alpha=rng.randint(-2, 2)) if name != "heisenberg" else catalog(name)
        S = generators.invertible(rng, e.algebra.dim)
        from flatlie.connections import transform_product
        B = change_basis(e.algebra, S)
        mp = classical_cotangent(B, transform_product(e.product("flat"), S, B))
        a = oracle.coeffs(mp.product)
        st = oracle.structure(mp.algebra)
        ok = (oracle.curvature_zero(st, a) and oracle.left_homomorphism(st, a)
              and not any(oracle.left_traces(a))
              and is_complete(mp.product).passed == is_unimodular(mp.algebra).passed)
        c.expect(ok, f"classical cotangent case {t}")
        cases += 1
    for t in range(50):
        A, G = generators.random_invariant_pair(rng)
        form = ScalarProduct(A, G)
        mp = levi_civita(A, form)
        st = oracle.structure(A)
        ok = (is_invariant(A, form).passed and oracle.invariant(st, G)
              and mp.product.equals(biinvariant_levi_civita(A))
              and is_flat_metric(mp).passed == is_two_nilpotent(A).passed
              and oracle.curvature_zero(st, oracle.coeffs(mp.product)) == oracle.two_nilpotent(st))
        c.expect(ok, f"invariant case {t}")
        cases += 1
    for t in range(40):
        n = rng.randint(1, 5)
        M = generators.symmetric(rng, n)
        S = generators.invertible(rng, n)
        s = la.signature(M)
        ok = (la.signature(generators.congruent(M, S)) == s
              and s.as_tuple() == oracle.signature_numeric(M))
        c.expect(ok, f"signature case {t}")
        cases += 1
    c.expect(cases >= 200, "at least 200 cases")
    c.finish()


# -- 11 -------------------------------------------------------------------------------------

def test_criterion_11_semisimple_negative():
    c = Criterion(11, "sl2 is semisimple and carries no flat affine candidate")
    sl2 = catalog("sl2").algebra
    c.expect(is_semisimple(sl2).passed, "sl2 semisimple")
    for t, P in enumerate(generators.sl2_candidates()):
        c.expect(not is_flat_affine(P).passed, f"candidate {t}")
    c.finish()


# -- 12 -------------------------------------------------------------------------------------

def test_criterion_12_cli_determinism():
    c = Criterion(12, "golden corpus re-runs byte-identically")
    cases = json.loads((GOLDEN / "cases.json").read_text())
    manifests = [p for p in sorted(GOLDEN.glob("*.json"))
                 if p.name not in {"cases.json", "psi.json", "assemble.json"}]
    c.expect(len(manifests) >= 10, "at least 10 manifests")
    from flatlie.catalog import CATALOG
    algebras = [parse_manifest(p.read_text()).algebra() for p in manifests]
    for name in CATALOG:
        c.expect(any(B.structure_equal(catalog(name).algebra) for B in algebras), f"covers {name}")
    for p in manifests:
        text = p.read_text(encoding="utf-8")
        c.expect(emit_manifest(parse_manifest(text)) == text, f"{p.name} round trip")
    for case in cases:
        expected = (GOLDEN / "expected" / f"{case['id']}.json").read_text(encoding="utf-8")
        first = cli(case["argv"], cwd=GOLDEN)
        second = cli(case["argv"], cwd=GOLDEN)
        c.expect(first == second == (case["exit"], expected), case["id"])
    c.finish()


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for fn in tests:
        try:
            fn()
        except AssertionError:
            pass
    print(f"{sum('PASS' in line for line in RESULTS.values())}/{len(tests)} criteria pass")
