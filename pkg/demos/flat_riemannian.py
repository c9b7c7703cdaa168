"""
Flat Riemannian Lie algebras
============================

Assemble b + u from commuting rotations, then recover the splitting.
"""
from flatlie import linalg as la
from flatlie import milnor_assemble, milnor_decompose, is_flat_metric, catalog

# one rotation acting on R^2: the Lie algebra of the Euclidean motion group
rot = la.matrix([[0, -1], [1, 0]])
A, mp = milnor_assemble(1, 2, [rot], la.identity(3))
print(A.name, "flat:", is_flat_metric(mp).passed)

d = milnor_decompose(A, mp.form)
def show(vs):
    return [" ".join(str(x) for x in v) for v in vs]


print("b =", show(d.b_basis))
print("u =", show(d.u_basis))
for check in d.report.checks:
    print(f"  {check.verdict:4} {check.name}")

# aff(R) with a Euclidean metric is not flat, so there is nothing to split
aff = catalog("aff1")
print(milnor_decompose(aff.algebra, aff.form("euclidean")).report.first_failure.detail)
