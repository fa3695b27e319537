"""Command line front end.

Exit codes: 0 when every applicable check passes, 1 on a semantic failure
(an axiom fails, a precondition does not hold), 2 on unreadable input,
schema errors or a refused oversized job.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Dict, List, Optional

from .errors import CrossedDoubleError, PreconditionFailed, SchemaError, ShapeMismatch, UnknownExample, UnsupportedCharacteristic
from .exact_linalg import parse_field_flag
from .report import ValidationReport
from .serialization import Document, load, serialize

#: Jobs whose estimated scalar work exceeds this need ``--force``.
DEFAULT_BUDGET = 2 * 10 ** 8


class Refused(Exception):
    pass


def _budget() -> int:
    try:
        return int(os.environ.get("CROSSED_DOUBLE_BUDGET", DEFAULT_BUDGET))
    except ValueError:
        return DEFAULT_BUDGET


def estimate_checks(dims, group_order: int) -> int:
    """Rough scalar-operation count for exhaustively validating components of these sizes."""
    total = sum(d ** 3 for d in dims) * group_order
    return total + sum(d ** 2 for d in dims) * group_order ** 2


def _guard(args, what: str, dims, group_order: int):
    est = estimate_checks(dims, group_order)
    print(f"{what}: about {est} basic operations", file=sys.stderr)
    if est > _budget() and not args.force:
        raise Refused(f"{what} needs about {est} operations, above the budget of {_budget()}; pass --force")


# ---------------------------------------------------------------- output


def _emit_report(args, rep: ValidationReport, extra: Optional[dict] = None, stream=None):
    stream = stream or sys.stdout
    if args.report == "text":
        print(rep.summary(), file=stream)
        if extra:
            print(json.dumps(extra, sort_keys=True, indent=1, default=str), file=stream)
        return
    body = rep.to_dict()
    if extra:
        body.update(extra)
    print(json.dumps(body, sort_keys=True, indent=1, default=str), file=stream)


def _emit_document(args, doc: Document):
    text = serialize(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args) -> Document:
    field = parse_field_flag(args.field) if getattr(args, "field", None) else None
    return load(args.path, field)


def _structure_report(doc: Document) -> ValidationReport:
    """Everything that applies to a document: axioms, R-matrix, twist."""
    from .duals import validate_talgebra
    from .quasitriangular import check_qt, check_yang_baxter
    from .ribbon import check_twist_theta, check_twist_v
    from .tcoalg import validate

    kind = doc.kind
    if kind == "tcoalgebra":
        rep = validate(doc.structure)
    elif kind == "talgebra":
        rep = validate_talgebra(doc.structure)
    else:
        from .graded_core import unpack_hopf

        rep = validate(doc.structure.hopf, subject="packed Hopf algebra")
        unpacked = unpack_hopf(doc.structure, kind=doc.structure.variant)
        sub = validate(unpacked) if doc.structure.variant == "coalgebra" else validate_talgebra(unpacked)
        rep.merge(sub, "unpacked.")
    if doc.rmatrix is not None:
        if kind != "tcoalgebra":
            raise SchemaError("an rmatrix section needs a T-coalgebra payload")
        H, R = doc.structure, doc.rmatrix
        try:
            R.check_shape(H)
        except ShapeMismatch as exc:
            raise SchemaError(str(exc)) from exc
        rep.merge(check_qt(H, R), "qt.")
        rep.merge(check_yang_baxter(H, R), "qt.")
    if doc.twist is not None:
        if doc.rmatrix is None:
            raise SchemaError("a twist section needs an rmatrix section")
        check = check_twist_theta if doc.twist.kind == "theta" else check_twist_v
        rep.merge(check(doc.structure, doc.rmatrix, doc.twist), "twist.")
    return rep


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    doc = _load(args)
    s = doc.structure
    dims = s.dims if doc.kind != "graded-hopf" else s.hopf.dims
    _guard(args, "validate", dims, s.group.order)
    rep = _structure_report(doc)
    if args.out:
        with open(args.out, "w") as fh:
            _emit_report(args, rep, stream=fh)
    else:
        _emit_report(args, rep)
    return 0 if rep.ok else 1


def _need_tcoalgebra(doc: Document, what: str):
    if doc.kind != "tcoalgebra":
        raise SchemaError(f"{what} needs a T-coalgebra document, got {doc.kind}")
    return doc.structure


def cmd_double(args) -> int:
    from .analysis import classical_double, compare_with_classical
    from .double import build_double, check_canonical_r, check_pa_bijective, double_embeddings
    from .quasitriangular import check_qt
    from .tcoalg import validate

    doc = _load(args)
    H = _need_tcoalgebra(doc, "double")
    N = sum(H.dims)
    _guard(args, "double", [H.dim(H.group.inv(a)) * N for a in H.group.elements()], H.group.order)
    pre = validate(H)
    if not pre.ok:
        _emit_report(args, pre, stream=sys.stderr)
        return 1
    qd = build_double(H)
    rep = ValidationReport(subject=f"quantum double of {H.name or 'input'}")
    rep.merge(validate(qd.D), "double.")
    rep.merge(check_qt(qd.D, qd.R), "qt.")
    _, _, emb = double_embeddings(qd)
    rep.merge(emb, "universal.")
    rep.merge(check_pa_bijective(qd), "universal.")
    rep.merge(check_canonical_r(qd), "universal.")
    if args.oracle_compare:
        if H.group.order != 1:
            raise PreconditionFailed("trivial group", "--oracle-compare needs a Hopf algebra input")
        rep.merge(compare_with_classical(qd.D, qd.R, classical_double(H)), "oracle.")
    _emit_report(args, rep, stream=sys.stderr)
    if not rep.ok:
        return 1
    meta = {"name": f"D({H.name})" if H.name else "double", "provenance": "double",
            "dims": list(qd.D.dims), "checks": dict(sorted(rep.counts.items()))}
    _emit_document(args, Document(qd.D, qd.R, metadata=meta))
    return 0


def cmd_ribbon(args) -> int:
    from .ribbon import ribbon_extension, twist_conversion, validate_ribbon_extension

    doc = _load(args)
    H = _need_tcoalgebra(doc, "ribbon")
    if doc.rmatrix is None:
        raise PreconditionFailed("quasitriangular", "the input has no rmatrix section")
    _guard(args, "ribbon", [2 * d for d in H.dims], H.group.order)
    ext = ribbon_extension(H, doc.rmatrix)
    rep = validate_ribbon_extension(ext, force=args.force)
    theta = twist_conversion(ext.RT, ext.R, ext.v)
    back = twist_conversion(ext.RT, ext.R, theta)
    rep.check("twist.conversion_round_trip", (), back.values == ext.v.values)
    _emit_report(args, rep, stream=sys.stderr)
    if not rep.ok:
        return 1
    meta = {"name": f"RT({H.name})" if H.name else "RT", "provenance": "ribbon",
            "dims": list(ext.RT.dims), "checks": dict(sorted(rep.counts.items())), "skipped": sorted(rep.skipped)}
    _emit_document(args, Document(ext.RT, ext.R, ext.v, metadata=meta))
    return 0


def cmd_analyze(args) -> int:
    from .analysis import check_packed_double_embedding, double_factorizability, factorizability, is_semisimple
    from .exact_linalg import compose, identity_cols
    from .ribbon import ribbon_from_semisimple

    doc = _load(args)
    H = _need_tcoalgebra(doc, "analyze")
    g = H.group
    _guard(args, "analyze", H.dims, g.order)
    out: Dict[str, object] = {"name": H.name, "dims": list(H.dims)}
    ok = True
    try:
        verdict = is_semisimple(H)
        out.update(verdict.to_dict())
    except UnsupportedCharacteristic as exc:
        out["semisimple"] = None
        out["semisimplicity_error"] = str(exc)
    out["antipode_involutive"] = all(
        compose(H.antipode[g.inv(a)], H.antipode[a]) == identity_cols(H.dim(a)) for a in g.elements())
    out["factorizability"] = {}
    N = sum(H.dims)
    est = estimate_checks([H.dim(g.inv(a)) * N for a in g.elements()], g.order)
    if est > _budget() and not args.force:
        out["double_analysis_skipped"] = f"about {est} operations; pass --force"
    else:
        fac = double_factorizability(H)
        out["factorizability"].update({k: {"rank": f.rank, "dim": f.matrix.rows, "bijective": f.bijective}
                                       for k, f in fac.items()})
        emb = check_packed_double_embedding(H)
        ok &= emb.ok
        out["packed_double_embedding"] = {"ok": emb.ok, "counts": dict(sorted(emb.counts.items())),
                                          "failed": emb.failed_axioms(),
                                          "R_pk_differs_from_R11": emb.notes.get("R_pk_differs_from_R11"),
                                          "product_witness": emb.notes.get("product_witness")}
    if doc.rmatrix is not None:
        e = g.identity
        f = factorizability(H.comps[e], doc.rmatrix.R[(e, e)], H.field)
        out["factorizability"]["input"] = {"rank": f.rank, "dim": f.matrix.rows, "bijective": f.bijective}
        try:
            _, rep = ribbon_from_semisimple(H, doc.rmatrix)
            out["semisimple_twist"] = {"ok": rep.ok, "failed": rep.failed_axioms()}
            ok &= rep.ok
        except PreconditionFailed as exc:
            out["semisimple_twist"] = {"precondition": exc.hypothesis, "detail": str(exc)}
    text = json.dumps(out, sort_keys=True, indent=1, default=str)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


def cmd_example(args) -> int:
    from .library import builtin

    field = parse_field_flag(args.field) if args.field else None
    kwargs = {"group": args.group}
    if field is not None:
        kwargs["field"] = field
    try:
        H, R = builtin(args.name, **kwargs)
    except KeyError as exc:
        if isinstance(exc, CrossedDoubleError):
            raise
        raise SchemaError(f"unknown group {args.group!r}") from exc
    _emit_document(args, Document(H, R, metadata={"name": H.name, "provenance": f"example {args.name}"}))
    return 0


def cmd_mirror(args) -> int:
    from .quasitriangular import mirror_qt
    from .tcoalg import mirror

    doc = _load(args)
    H = _need_tcoalgebra(doc, "mirror")
    if doc.rmatrix is not None:
        M, RM = mirror_qt(H, doc.rmatrix)
    else:
        M, RM = mirror(H), None
    _emit_document(args, Document(M, RM, metadata={"name": M.name, "provenance": "mirror"}))
    return 0


def cmd_dual(args) -> int:
    from .duals import coop_inner_dual, inner_dual, outer_dual

    doc = _load(args)
    H = _need_tcoalgebra(doc, "dual")
    build: Callable = {"outer": outer_dual, "inner": inner_dual, "coop-inner": coop_inner_dual}[args.which]
    D = build(H)
    _emit_document(args, Document(D, metadata={"name": D.name, "provenance": f"{args.which} dual"}))
    return 0


def cmd_pack(args) -> int:
    from .graded_core import pack_talgebra, pack_tcoalgebra

    doc = _load(args)
    if doc.kind == "graded-hopf":
        raise SchemaError("the input is already packed")
    P = pack_tcoalgebra(doc.structure) if doc.kind == "tcoalgebra" else pack_talgebra(doc.structure)
    _emit_document(args, Document(P, metadata={"name": doc.metadata.get("name", ""), "provenance": "pack"}))
    return 0


def cmd_unpack(args) -> int:
    from .graded_core import unpack_hopf

    doc = _load(args)
    if doc.kind != "graded-hopf":
        raise SchemaError("unpack needs a packed (graded-hopf) document")
    S = unpack_hopf(doc.structure, kind=doc.structure.variant)
    _emit_document(args, Document(S, metadata={"name": doc.metadata.get("name", ""), "provenance": "unpack"}))
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--field", help="Q or GFp, e.g. GF7; re-reads the input scalars over this field")
    common.add_argument("--force", action="store_true", help="run even above the operation budget")
    common.add_argument("--report", choices=("json", "text"), default="json")

    p = argparse.ArgumentParser(prog="crossed-double",
                                description="Build and check crossed Hopf group coalgebras and their quantum doubles.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, path=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if path:
            sp.add_argument("path")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check every axiom of a document")
    d = add("double", cmd_double, "build the quantum double with its R-matrix")
    d.add_argument("--oracle-compare", action="store_true", help="compare with the classical double (trivial group)")
    add("ribbon", cmd_ribbon, "build the ribbon extension of a quasitriangular input")
    add("analyze", cmd_analyze, "semisimplicity, factorizability and packed-double comparison")
    ex = add("example", cmd_example, "write a built-in example", path=False)
    ex.add_argument("name")
    ex.add_argument("--group", help="group for group-algebra / function-tcoalg (e.g. S3, Z4)")
    add("mirror", cmd_mirror, "the mirror T-coalgebra (with its R-matrix if present)")
    du = sub.add_parser("dual", parents=[common], help="outer, inner or coopposite inner dual")
    du.add_argument("which", choices=("outer", "inner", "coop-inner"))
    du.add_argument("path")
    du.set_defaults(func=cmd_dual)
    add("pack", cmd_pack, "packed graded Hopf algebra")
    add("unpack", cmd_unpack, "recover the T-(co)algebra from a packed document")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, UnknownExample, Refused, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CrossedDoubleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # e.g. a built-in example that needs 2 to be invertible
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
