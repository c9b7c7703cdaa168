"""
Levi-Civita products on small Lie algebras
==========================================

Solve for the torsion-free, metric-compatible product of a left-invariant
metric, then ask whether it is flat and complete.
"""
from flatlie import catalog, levi_civita, is_flat_metric, is_complete, is_unimodular



def table(P):
    return {f"e{i + 1}.e{j + 1}": {f"e{k + 1}": str(c) for k, c in v.items()}
            for (i, j), v in P.sparse().items()}


# aff(R): [e1, e2] = e2, with a split (hyperbolic) metric
aff = catalog("aff1")
mp = levi_civita(aff.algebra, aff.form("hyperbolic"))
print("aff(R), hyperbolic:", table(mp.product))
print("  flat:", is_flat_metric(mp).passed)

# flat, but the geodesics are not complete: aff(R) is not unimodular
print("  complete:", is_complete(mp.product).passed,
      " unimodular:", is_unimodular(aff.algebra).passed)

# the same algebra with a Euclidean metric is curved; the report carries a witness
curved = levi_civita(aff.algebra, aff.form("euclidean"))
report = is_flat_metric(curved)
print("aff(R), euclidean flat:", report.passed, report.first_failure.witness["indices"])

# the Heisenberg algebra with a Lorentzian metric is flat and complete
h3 = catalog("heisenberg")
mp = levi_civita(h3.algebra, h3.form("lorentz"))
print("h3, lorentz:", table(mp.product))
print("  flat:", is_flat_metric(mp).passed, " complete:", is_complete(mp.product).passed)
