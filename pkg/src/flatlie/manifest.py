"""JSON manifests for algebras, forms and products.

Canonical text is ``json.dumps`` with sorted keys, no whitespace and a trailing
newline.  Rationals are strings ``-?digits(/digits)?`` in lowest terms, bracket
and product entries are sorted by index and zero coefficients are dropped, so
parse followed by emit is byte-identical on canonical input.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from . import linalg as la
from .algebra import LieAlgebra
from .connections import Product
from .errors import ParseError, ValidationError
from .linalg import Matrix
from .metrics import ScalarProduct

_RATIONAL = re.compile(r"-?\d+(/\d+)?")

Sparse = dict[tuple[int, int], dict[int, Fraction]]


@dataclass(frozen=True, eq=False)
class Manifest:
    name: str
    dim: int
    basis: tuple[str, ...]
    brackets: Sparse = field(default_factory=dict)
    forms: dict[str, Matrix] = field(default_factory=dict)
    products: dict[str, Sparse] = field(default_factory=dict)

    @classmethod
    def from_objects(cls, algebra: LieAlgebra, forms: Mapping[str, Any] = (),
                     products: Mapping[str, Product] = ()) -> Manifest:
        fs = {k: (v.gram if isinstance(v, ScalarProduct) else la.matrix(v))
              for k, v in dict(forms).items()}
        ps = {k: v.sparse() for k, v in dict(products).items()}
        return cls(algebra.name, algebra.dim, tuple(algebra.basis_names),
                   dict(algebra.brackets), fs, ps)

    def algebra(self) -> LieAlgebra:
        return LieAlgebra(self.name, self.dim, self.basis, self.brackets)

    def form(self, name: str, algebra: LieAlgebra | None = None) -> ScalarProduct:
        if name not in self.forms:
            raise ValidationError(f"forms: no form named {name!r}"
                                  f" (available: {', '.join(sorted(self.forms)) or 'none'})")
        return ScalarProduct(algebra or self.algebra(), self.forms[name])

    def product(self, name: str, algebra: LieAlgebra | None = None) -> Product:
        if name not in self.products:
            raise ValidationError(f"products: no product named {name!r}"
                                  f" (available: {', '.join(sorted(self.products)) or 'none'})")
        return Product.from_sparse(algebra or self.algebra(), self.products[name])

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.basis),
            "brackets": _emit_sparse(self.brackets),
            "forms": {k: [[la.format_fraction(c) for c in row] for row in m]
                      for k, m in self.forms.items()},
            "products": {k: _emit_sparse(v) for k, v in self.products.items()},
        }


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def _emit_sparse(entries: Sparse) -> list:
    out = []
    for (i, j), coeffs in sorted(entries.items()):
        terms = [[k, la.format_fraction(c)] for k, c in sorted(coeffs.items()) if c]
        if terms:
            out.append([i, j, terms])
    return out


def emit_manifest(m: Manifest) -> str:
    return canonical_json(m.to_json())


# -- parsing -------------------------------------------------------------------

def load_json(text: str | bytes) -> Any:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def parse_rational(value, where: str) -> Fraction:
    if not isinstance(value, str) or not _RATIONAL.fullmatch(value):
        raise ValidationError(f"{where}: expected a rational string like \"-3/4\", got {value!r}")
    try:
        return Fraction(value)
    except ZeroDivisionError:
        raise ValidationError(f"{where}: zero denominator") from None


def _index(value, n: int, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < n:
        raise ValidationError(f"{where}: index {value!r} out of range [0, {n})")
    return value


def parse_matrix(rows, where: str, shape: tuple[int, int] | None = None) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ValidationError(f"{where}: expected a list of rows")
    m = tuple(tuple(parse_rational(c, f"{where}[{r}][{k}]") for k, c in enumerate(row))
              for r, row in enumerate(rows))
    if shape is not None and (len(m) != shape[0] or any(len(r) != shape[1] for r in m)):
        raise ValidationError(f"{where}: expected a {shape[0]}x{shape[1]} matrix")
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValidationError(f"{where}: ragged matrix")
    return m


def _parse_sparse(entries, n: int, where: str, ordered: bool) -> Sparse:
    if not isinstance(entries, list):
        raise ValidationError(f"{where}: expected a list")
    out: Sparse = {}
    for idx, entry in enumerate(entries):
        loc = f"{where}[{idx}]"
        if not (isinstance(entry, list) and len(entry) == 3 and isinstance(entry[2], list)):
            raise ValidationError(f"{loc}: expected [i, j, [[k, rational], ...]]")
        i = _index(entry[0], n, loc)
        j = _index(entry[1], n, loc)
        if ordered and i >= j:
            raise ValidationError(f"{loc}: i<j required")
        if (i, j) in out:
            raise ValidationError(f"{loc}: duplicate entry ({i}, {j})")
        coeffs: dict[int, Fraction] = {}
        for t, term in enumerate(entry[2]):
            tl = f"{loc}[2][{t}]"
            if not (isinstance(term, list) and len(term) == 2):
                raise ValidationError(f"{tl}: expected [k, rational]")
            k = _index(term[0], n, tl)
            if k in coeffs:
                raise ValidationError(f"{tl}: duplicate index {k}")
            c = parse_rational(term[1], tl)
            coeffs[k] = c
        coeffs = {k: c for k, c in sorted(coeffs.items()) if c}
        if coeffs:
            out[(i, j)] = coeffs
    return out


def manifest_from_json(obj: Any) -> Manifest:
    if not isinstance(obj, dict):
        raise ValidationError("manifest: expected a JSON object")
    unknown = set(obj) - {"name", "dim", "basis", "brackets", "forms", "products"}
    if unknown:
        raise ValidationError(f"manifest: unknown field(s) {', '.join(sorted(unknown))}")
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise ValidationError("name: expected a string")
    n = obj.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValidationError(f"dim: expected a nonnegative integer, got {n!r}")
    basis = obj.get("basis", [f"e{i + 1}" for i in range(n)])
    if not isinstance(basis, list) or len(basis) != n or not all(isinstance(b, str) for b in basis):
        raise ValidationError(f"basis: expected {n} strings")
    if len(set(basis)) != n:
        raise ValidationError("basis: names must be distinct")
    brackets = _parse_sparse(obj.get("brackets", []), n, "brackets", ordered=True)
    forms_raw = obj.get("forms", {})
    if not isinstance(forms_raw, dict):
        raise ValidationError("forms: expected an object")
    forms = {}
    for key, rows in forms_raw.items():
        m = parse_matrix(rows, f"forms.{key}", (n, n))
        if not la.is_symmetric(m):
            raise ValidationError(f"forms.{key}: matrix is not symmetric")
        forms[key] = m
    prods_raw = obj.get("products", {})
    if not isinstance(prods_raw, dict):
        raise ValidationError("products: expected an object")
    products = {key: _parse_sparse(v, n, f"products.{key}", ordered=False)
                for key, v in prods_raw.items()}
    return Manifest(name, n, tuple(basis), brackets, forms, products)


def parse_manifest(text: str | bytes) -> Manifest:
    return manifest_from_json(load_json(text))
