"""Named examples: algebras with their stored forms and products."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import linalg as la
from .algebra import LieAlgebra, killing_form
from .connections import Product
from .constructions import heisenberg, oscillator
from .errors import ValidationError
from .linalg import Matrix
from .metrics import ScalarProduct


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    algebra: LieAlgebra
    forms: dict[str, Matrix] = field(default_factory=dict)
    products: dict[str, Product] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.algebra.name

    def form(self, name: str) -> ScalarProduct:
        return ScalarProduct(self.algebra, self.forms[name])

    def product(self, name: str) -> Product:
        return self.products[name]


def aff1(alpha=0) -> CatalogEntry:
    """aff(R) with [e1,e2] = e2 and the family e1.e1 = alpha e1, e1.e2 = e2."""
    a = la.to_fraction(alpha)
    A = LieAlgebra("aff1", 2, ("e1", "e2"), {(0, 1): {1: 1}})
    flat = Product.from_sparse(A, {(0, 0): {0: a}, (0, 1): {1: 1}})
    return CatalogEntry(A, {"hyperbolic": la.matrix([[0, 1], [1, 0]]),
                            "euclidean": la.identity(2)},
                        {"flat": flat})


def heisenberg_entry(n=1) -> CatalogEntry:
    A = heisenberg(int(n))
    forms, products = {}, {}
    if A.dim == 3:
        # value of the left-invariant Lorentzian metric at the identity
        forms["lorentz"] = la.matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        # a Gram for which e2.e1 = -e3, e2.e2 = e1 is the Levi-Civita product
        forms["lorentz_alt"] = la.matrix([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
        products["flat"] = Product.from_sparse(A, {(1, 0): {2: -1}, (1, 1): {0: 1}})
    return CatalogEntry(A, forms, products)


def r_rho_r3(alpha=0) -> CatalogEntry:
    """R x_rho R^3 with ad_{e1} = diag(1, -1, 0) on (e2, e3, e4)."""
    a = la.to_fraction(alpha)
    A = LieAlgebra("r_rho_r3", 4, ("e1", "e2", "e3", "e4"), {(0, 1): {1: 1}, (0, 2): {2: -1}})
    flat = Product.from_sparse(A, {(0, 0): {0: a}, (0, 1): {1: 1}, (0, 2): {2: -1}})
    return CatalogEntry(A, {}, {"flat": flat})


def abelian(n=2) -> CatalogEntry:
    A = LieAlgebra.abelian(int(n))
    return CatalogEntry(A, {"euclidean": la.identity(A.dim)}, {"zero": Product.zero(A)})


def sl2() -> CatalogEntry:
    A = LieAlgebra("sl2", 3, ("h", "e", "f"),
                   {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})
    return CatalogEntry(A, {"killing": killing_form(A)})


def so3() -> CatalogEntry:
    A = LieAlgebra("so3", 3, ("e1", "e2", "e3"),
                   {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}})
    return CatalogEntry(A, {"neg_killing": la.mscale(-1, killing_form(A))})


def oscillator_entry(lam=(1,)) -> CatalogEntry:
    O = oscillator(lam)
    return CatalogEntry(O.algebra, {"mu0": O.form.gram})


def euclidean_motion() -> CatalogEntry:
    """b1 rotating the abelian ideal span(u1, u2); flat for the identity Gram."""
    A = LieAlgebra("e2", 3, ("b1", "u1", "u2"), {(0, 1): {2: 1}, (0, 2): {1: -1}})
    return CatalogEntry(A, {"euclidean": la.identity(3)})


CATALOG: dict[str, Callable[..., CatalogEntry]] = {
    "aff1": aff1,
    "heisenberg": heisenberg_entry,
    "r_rho_r3": r_rho_r3,
    "abelian": abelian,
    "sl2": sl2,
    "so3": so3,
    "oscillator": oscillator_entry,
    "e2": euclidean_motion,
}


def catalog(name: str, *args, **params) -> CatalogEntry:
    try:
        builder = CATALOG[name]
    except KeyError:
        raise ValidationError(f"unknown catalog entry {name!r}; "
                              f"known: {', '.join(sorted(CATALOG))}") from None
    return builder(*args, **params)
