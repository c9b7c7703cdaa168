"""Command line front end.

Every subcommand writes a JSON report document (canonical, byte-stable) to
stdout or ``-o FILE`` and a short human summary to stderr.  Exit status is 0
when every check passes, 1 when some check fails and 2 for usage, parse or
validation errors.  Commands that read a manifest also accept a report
document and use its ``derived.manifest``, so ``build ... | check - ...``
chains.
"""
from __future__ import annotations

import argparse
import hashlib
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import linalg as la
from .algebra import check_jacobi
from .analysis import milnor_assemble, milnor_decompose, is_semisimple
from .catalog import CATALOG, catalog
from .connections import check_torsion_free, is_complete, is_flat_affine, is_unimodular
from .constructions import (OrthogonalAlgebra, SkewDerivationMap, check_cocycle,
                            check_equivariance, check_theta_derivations,
                            classical_cotangent, cotangent_coadjoint, double_extension,
                            oscillator)
from .errors import FlatLieError
from .manifest import (Manifest, canonical_json, load_json, manifest_from_json,
                       parse_matrix, parse_rational)
from .metrics import (ScalarProduct, check_compatible, is_flat_metric, is_invariant,
                      is_two_nilpotent, levi_civita)
from .report import Check, Report, combine

TOOL = "flatlie"


class UsageError(FlatLieError):
    pass


# -- serialization ---------------------------------------------------------------

def to_jsonable(value: Any) -> Any:
    """Fractions become canonical strings; tuples become lists."""
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, Fraction):
        return la.format_fraction(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, Manifest):
        return value.to_json()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def check_to_json(c: Check) -> dict:
    out = {"check": c.name, "verdict": c.verdict, "witness": to_jsonable(c.witness)}
    if c.detail:
        out["detail"] = c.detail
    return out


@dataclass
class Document:
    command: list[str]
    inputs: list[dict] = field(default_factory=list)
    report: Report = field(default_factory=Report)
    derived: dict = field(default_factory=dict)

    def add(self, report: Report, suffix: str | None = None):
        if suffix is not None:
            report = Report(tuple(Check(f"{c.name}@{suffix}", c.verdict, c.witness, c.detail)
                                  for c in report.checks))
        self.report = self.report + report

    def to_json(self) -> dict:
        from . import __version__
        return {
            "tool": TOOL,
            "version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "passed": self.report.passed,
            "checks": [check_to_json(c) for c in self.report.checks],
            "derived": to_jsonable(self.derived),
        }


# -- input -------------------------------------------------------------------------

class Inputs:
    def __init__(self, stdin, doc: Document):
        self.stdin = stdin
        self.doc = doc
        self._stdin_used = False

    def read(self, path: str) -> bytes:
        if path == "-":
            if self._stdin_used:
                raise UsageError("stdin ('-') can only be used once")
            self._stdin_used = True
            data = self.stdin.read()
            if isinstance(data, str):
                data = data.encode("utf-8")
        else:
            try:
                with open(path, "rb") as fh:
                    data = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        self.doc.inputs.append({"name": path, "sha256": hashlib.sha256(data).hexdigest()})
        return data

    def json(self, path: str) -> Any:
        return load_json(self.read(path))

    def manifest(self, path: str) -> Manifest:
        obj = self.json(path)
        if isinstance(obj, dict) and obj.get("tool") == TOOL:
            derived = obj.get("derived") or {}
            if "manifest" not in derived:
                raise UsageError(f"{path}: report document carries no derived manifest")
            obj = derived["manifest"]
        return manifest_from_json(obj)


def parse_rational_list(text: str) -> list[Fraction]:
    return [parse_rational(s.strip(), "--lambda") for s in text.split(",") if s.strip()]


# -- commands ------------------------------------------------------------------------

def _form_checks(doc: Document, m: Manifest, A, name: str, invariant: bool, flat: bool):
    G = m.forms.get(name)
    if G is None:
        m.form(name)  # raises with the list of available forms
    sig = la.signature(G)
    if not sig.nondegenerate:
        doc.add(Report((Check("nondegenerate", "fail",
                              {"indices": [], "lhs": sig.zero, "rhs": 0},
                              "form is degenerate"),)), name)
        return
    g = ScalarProduct(A, G)
    if invariant:
        doc.add(is_invariant(A, g), name)
    if flat:
        doc.add(is_flat_metric(levi_civita(A, g)), name)


def cmd_check(args, io: Inputs, doc: Document):
    m = io.manifest(args.file)
    A = m.algebra()
    every = args.all
    if every or args.jacobi:
        doc.add(check_jacobi(A))
    if every or args.unimodular:
        doc.add(is_unimodular(A))
    if every or args.semisimple:
        doc.add(is_semisimple(A))
    if every or args.two_nilpotent:
        doc.add(is_two_nilpotent(A))
    forms = sorted(m.forms) if every else []
    for name in sorted(set(forms) | set(args.invariant) | set(args.flat_metric)):
        _form_checks(doc, m, A, name, invariant=every or name in args.invariant,
                     flat=every or name in args.flat_metric)
    products = sorted(m.products) if every else []
    for name in sorted(set(products) | set(args.flat_affine) | set(args.complete)):
        P = m.product(name, A)
        if every or name in args.flat_affine:
            doc.add(is_flat_affine(P), name)
        if every or name in args.complete:
            doc.add(is_complete(P), name)
    if not doc.report.checks:
        raise UsageError("no checks requested; pass --all or at least one check flag")


def cmd_levi_civita(args, io: Inputs, doc: Document):
    m = io.manifest(args.file)
    A = m.algebra()
    mp = levi_civita(A, m.form(args.form, A))
    doc.add(check_torsion_free(mp.product) + check_compatible(mp.product, mp.form), args.form)
    products = dict(m.products)
    products[args.product_name] = mp.product.sparse()
    doc.derived["manifest"] = Manifest(m.name, m.dim, m.basis, m.brackets, m.forms, products)


def cmd_signature(args, io: Inputs, doc: Document):
    m = io.manifest(args.file)
    if args.form not in m.forms:
        m.form(args.form)
    s = la.signature(m.forms[args.form])
    doc.derived["signature"] = {"index": s.index, "plus": s.plus, "zero": s.zero}
    ok = s.nondegenerate
    doc.add(Report((Check("nondegenerate", "pass" if ok else "fail",
                          None if ok else {"indices": [], "lhs": s.zero, "rhs": 0}),)),
            args.form)


def _orthogonal_manifest(O: OrthogonalAlgebra, form_name: str) -> Manifest:
    return Manifest.from_objects(O.algebra, {form_name: O.form})


def cmd_build(args, io: Inputs, doc: Document):
    kind = args.kind
    if kind == "oscillator":
        if args.lambdas is None:
            raise UsageError("build oscillator needs --lambda a,b,...")
        O = oscillator(parse_rational_list(args.lambdas))
        doc.add(check_jacobi(O.algebra))
        doc.add(is_invariant(O.algebra, O.form), "mu0")
        doc.derived["manifest"] = _orthogonal_manifest(O, "mu0")
        return
    if kind == "cotangent":
        m = io.manifest(_one(args.files, "build cotangent <file>"))
        A = m.algebra()
        r = check_jacobi(A)
        if not r:
            doc.add(r)
            return
        O = cotangent_coadjoint(A)
        doc.add(check_jacobi(O.algebra))
        doc.add(is_invariant(O.algebra, O.form), "hyperbolic")
        doc.derived["manifest"] = _orthogonal_manifest(O, "hyperbolic")
        return
    if kind == "classical-cotangent":
        m = io.manifest(_one(args.files, "build classical-cotangent <file> --product NAME"))
        if not args.product:
            raise UsageError("build classical-cotangent needs --product NAME")
        A = m.algebra()
        P = m.product(args.product, A)
        r = is_flat_affine(P)
        if not r:
            doc.add(r, args.product)
            return
        mp = classical_cotangent(A, P)
        B = mp.algebra
        doc.add(check_jacobi(B))
        doc.add(check_torsion_free(mp.product) + check_compatible(mp.product, mp.form)
                + is_flat_metric(mp), "hyperbolic")
        doc.derived["manifest"] = Manifest.from_objects(B, {"hyperbolic": mp.form},
                                                        {"levi_civita": mp.product})
        return
    if kind == "double":
        if len(args.files) != 2 or not args.psi:
            raise UsageError("usage: build double <base> <h> --psi <file> [--form NAME]")
        base_m = io.manifest(args.files[0])
        h = io.manifest(args.files[1]).algebra()
        g = base_m.algebra()
        form_name = args.form
        if form_name is None:
            if len(base_m.forms) == 1:
                form_name = next(iter(base_m.forms))
            elif g.dim == 0:
                form_name = ""
            else:
                raise UsageError("base manifest has several forms; pick one with --form")
        G = base_m.forms.get(form_name, ()) if g.dim == 0 else base_m.form(form_name, g).gram
        form = ScalarProduct(g, G)
        inv = is_invariant(g, form)
        if not inv:
            doc.add(inv, form_name)
            return
        base = OrthogonalAlgebra(g, form)
        psi_obj = io.json(args.psi)
        maps_raw = psi_obj.get("maps") if isinstance(psi_obj, dict) else None
        if not isinstance(maps_raw, list):
            raise UsageError(f"{args.psi}: expected an object with a 'maps' list")
        maps = tuple(parse_matrix(M, f"maps[{a}]", (g.dim, g.dim)) if g.dim else ()
                     for a, M in enumerate(maps_raw))
        psi = SkewDerivationMap(h, base, maps)
        r = psi.validate()
        doc.add(r)
        if not r:
            return
        doc.add(combine([check_cocycle(psi), check_theta_derivations(psi),
                         check_equivariance(psi)]))
        O = double_extension(base, h, psi)
        doc.add(check_jacobi(O.algebra))
        doc.add(is_invariant(O.algebra, O.form), "mu0")
        s = O.form.signature
        doc.derived["signature"] = {"index": s.index, "plus": s.plus, "zero": s.zero}
        doc.derived["manifest"] = _orthogonal_manifest(O, "mu0")
        return
    raise UsageError(f"unknown build target {kind!r}")


def _one(files: Sequence[str], usage: str) -> str:
    if len(files) != 1:
        raise UsageError(f"usage: {usage}")
    return files[0]


def cmd_milnor(args, io: Inputs, doc: Document):
    if args.assemble:
        spec = io.json(args.assemble)
        if not isinstance(spec, dict):
            raise UsageError("assemble spec: expected a JSON object")
        try:
            b_dim, u_dim = spec["b_dim"], spec["u_dim"]
            action = [parse_matrix(M, f"action[{i}]", (u_dim, u_dim))
                      for i, M in enumerate(spec["action"])]
            gram = parse_matrix(spec["gram"], "gram", (b_dim + u_dim, b_dim + u_dim))
        except KeyError as exc:
            raise UsageError(f"assemble spec: missing field {exc.args[0]!r}") from None
        A, mp = milnor_assemble(b_dim, u_dim, action, gram)
        form = mp.form
        doc.derived["manifest"] = Manifest.from_objects(A, {"g": form},
                                                        {"levi_civita": mp.product})
    else:
        if args.file is None or args.form is None:
            raise UsageError("usage: milnor <file> --form NAME | milnor --assemble SPEC")
        m = io.manifest(args.file)
        A = m.algebra()
        form = m.form(args.form, A)
    d = milnor_decompose(A, form)
    doc.add(d.report)
    doc.derived["b_basis"] = list(d.b_basis)
    doc.derived["u_basis"] = list(d.u_basis)


def cmd_catalog(args, io: Inputs, doc: Document):
    params: dict[str, Any] = {}
    if args.alpha is not None:
        params["alpha"] = parse_rational(args.alpha, "--alpha")
    if args.n is not None:
        params["n"] = args.n
    if args.lambdas is not None:
        params["lam"] = parse_rational_list(args.lambdas)
    try:
        entry = catalog(args.name, **params)
    except TypeError:
        raise UsageError(f"catalog {args.name}: unsupported parameter(s) "
                         f"{', '.join(sorted(params))}") from None
    doc.add(check_jacobi(entry.algebra))
    doc.derived["manifest"] = Manifest.from_objects(entry.algebra, entry.forms, entry.products)


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flatlie", description="Exact checks and constructions "
                                "for flat left-invariant structures on Lie algebras.")
    p.add_argument("-o", "--output", default="-", help="report destination (default stdout)")
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("-o", "--output", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[out], help="run verification checks on a manifest")
    c.add_argument("file")
    c.add_argument("--jacobi", action="store_true")
    c.add_argument("--invariant", metavar="FORM", action="append", default=[])
    c.add_argument("--flat-affine", metavar="PRODUCT", action="append", default=[])
    c.add_argument("--flat-metric", metavar="FORM", action="append", default=[])
    c.add_argument("--unimodular", action="store_true")
    c.add_argument("--complete", metavar="PRODUCT", action="append", default=[])
    c.add_argument("--semisimple", action="store_true")
    c.add_argument("--two-nilpotent", action="store_true")
    c.add_argument("--all", action="store_true", help="every check on every form and product")
    c.set_defaults(func=cmd_check)

    lc = sub.add_parser("levi-civita", parents=[out], help="Levi-Civita product of a stored form")
    lc.add_argument("file")
    lc.add_argument("--form", required=True)
    lc.add_argument("--product-name", default="levi_civita")
    lc.set_defaults(func=cmd_levi_civita)

    s = sub.add_parser("signature", parents=[out], help="signature of a stored form")
    s.add_argument("file")
    s.add_argument("--form", required=True)
    s.set_defaults(func=cmd_signature)

    b = sub.add_parser("build", parents=[out], help="build oscillator, cotangent, classical-cotangent or "
                                     "double extension algebras")
    b.add_argument("kind", choices=["oscillator", "cotangent", "classical-cotangent", "double"])
    b.add_argument("files", nargs="*")
    b.add_argument("--lambda", dest="lambdas", metavar="a,b,...")
    b.add_argument("--product")
    b.add_argument("--psi", metavar="FILE")
    b.add_argument("--form")
    b.set_defaults(func=cmd_build)

    m = sub.add_parser("milnor", parents=[out], help="Milnor decomposition of a flat Riemannian algebra")
    m.add_argument("file", nargs="?")
    m.add_argument("--form")
    m.add_argument("--assemble", metavar="SPEC")
    m.set_defaults(func=cmd_milnor)

    cat = sub.add_parser("catalog", parents=[out], help="emit a named example as a manifest")
    cat.add_argument("name", choices=sorted(CATALOG))
    cat.add_argument("--alpha")
    cat.add_argument("--n", type=int)
    cat.add_argument("--lambda", dest="lambdas", metavar="a,b,...")
    cat.set_defaults(func=cmd_catalog)
    return p


def _summary(doc: Document, stream) -> None:
    color = not os.environ.get("NO_COLOR") and hasattr(stream, "isatty") and stream.isatty()
    tags = {"pass": ("PASS", "32"), "fail": ("FAIL", "31"), "warn": ("WARN", "33")}
    for c in doc.report.checks:
        tag, code = tags[c.verdict]
        if color:
            tag = f"\x1b[{code}m{tag}\x1b[0m"
        line = f"{tag} {c.name}"
        if c.detail:
            line += f" ({c.detail})"
        print(line, file=stream)
    failed = sum(1 for c in doc.report.checks if c.verdict == "fail")
    print(f"{len(doc.report.checks)} checks, {failed} failed", file=stream)


def run_command(argv: Sequence[str], stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin.buffer
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    doc = Document(command=list(argv))
    try:
        args.func(args, Inputs(stdin, doc), doc)
    except (FlatLieError, ZeroDivisionError) as exc:
        print(f"flatlie: error: {exc}", file=stderr)
        return 2
    text = canonical_json(doc.to_json())
    if args.output == "-":
        stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    _summary(doc, stderr)
    return 0 if doc.report.passed else 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
