"""Exact computations with flat left-invariant structures on real Lie algebras.

Algebras are given by rational structure constants; connections by bilinear
products on the algebra; metrics by symmetric Gram matrices.  Every check
returns a :class:`Report` whose failures carry the first offending basis
indices.
"""
from .algebra import (LieAlgebra, ad_matrix, bracket, change_basis, check_jacobi,
                      check_killing_invariance, direct_sum, is_ideal, is_subalgebra,
                      killing_form)
from .analysis import (MilnorDecomposition, is_semisimple, milnor_assemble, milnor_decompose,
                       orthogonal_complement_ideal)
from .catalog import CATALOG, CatalogEntry, catalog
from .connections import (Product, Tensor3, Tensor4, bracket_product, check_bracket_compatible,
                          check_curvature_free, check_left_homomorphism, check_torsion_free,
                          curvature, curvature_at, is_complete, is_flat_affine, is_unimodular,
                          left_mult, left_traces_vanish, right_mult, torsion, transform_product)
from .constructions import (OrthogonalAlgebra, SkewDerivationMap, central_extension,
                            check_cocycle, check_equivariance, check_intertwiner,
                            check_theta_derivations, classical_cotangent, cotangent_coadjoint,
                            double_extension, heisenberg, oscillator,
                            oscillator_by_double_extension)
from .errors import (DimensionError, FlatLieError, ParseError, PreconditionError, ShapeError,
                     SingularError, ValidationError)
from .linalg import Signature, nullspace, signature, solve_linear
from .manifest import Manifest, emit_manifest, parse_manifest
from .metrics import (MetricPair, ScalarProduct, antisymmetric_wrt, biinvariant_curvature_report,
                      biinvariant_levi_civita, is_flat_metric, is_invariant, is_two_nilpotent,
                      levi_civita)
from .report import Check, Report

__version__ = "0.1.0"
