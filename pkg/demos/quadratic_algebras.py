"""
Invariant metrics and double extensions
=======================================

Build the oscillator algebra two ways and inspect its invariant metric.
"""
from flatlie import linalg as la
from flatlie import (LieAlgebra, is_flat_metric, is_invariant, is_two_nilpotent,
                     levi_civita)
from flatlie.constructions import SkewDerivationMap, double_extension, euclidean, oscillator

# the oscillator algebra with its Lorentzian invariant form
O = oscillator((1, 2))
print("oscillator(1,2) invariant:", is_invariant(O.algebra, O.form).passed)
print("  signature:", O.form.signature.as_tuple())

# an invariant metric has Levi-Civita product x.y = [x,y]/2; it is flat only
# when the algebra is 2-step nilpotent, and the oscillator is not
mp = levi_civita(O.algebra, O.form)
print("  2-nilpotent:", is_two_nilpotent(O.algebra).passed, " flat:", is_flat_metric(mp).passed)

# double extension of Euclidean R^2 by a line acting through a rotation
rot = la.matrix([[0, -1], [1, 0]])
h = LieAlgebra("Re", 1, ("e",))
D = double_extension(euclidean(2), h, SkewDerivationMap(h, euclidean(2), (rot,)))
print("double extension equals oscillator(1):",
      D.algebra.structure_equal(oscillator((1,)).algebra))
