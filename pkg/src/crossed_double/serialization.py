"""Canonical JSON documents for T-coalgebras, T-algebras and packed forms.

Grades are written as group indices (``"2"``, ``"0,1"``); the group names
live in the ``group`` section.  Linear maps and tensors are sparse entry
lists sorted by index, and scalars go through ``Field.dump``, so equal
structures give byte-identical text.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any, Dict, Optional, Union

from .errors import CrossedDoubleError, SchemaError
from .exact_linalg import Field, field_from_spec
from .finite_group import FiniteGroup, group_from_json
from .graded_core import ComponentAlgebra, ComponentCoalgebra, GradedHopfAlgebra
from .tcoalg import TCoalgebra

SCHEMA_VERSION = 1
KINDS = ("tcoalgebra", "talgebra", "graded-hopf")


@dataclass
class Document:
    structure: Any
    rmatrix: Any = None
    twist: Any = None
    metadata: Dict[str, Any] = dc_field(default_factory=dict)

    @property
    def kind(self) -> str:
        from .duals import TAlgebra

        if isinstance(self.structure, TCoalgebra):
            return "tcoalgebra"
        if isinstance(self.structure, TAlgebra):
            return "talgebra"
        if isinstance(self.structure, GradedHopfAlgebra):
            return "graded-hopf"
        raise TypeError(f"cannot serialize {type(self.structure).__name__}")

    @property
    def field(self) -> Field:
        return self.structure.hopf.field if self.kind == "graded-hopf" else self.structure.field


# ---------------------------------------------------------------- writing


def _vec(F: Field, v: dict) -> list:
    return [[i, F.dump(c)] for i, c in sorted(v.items())]


def _cols(F: Field, cols) -> list:
    return sorted([i, j, F.dump(c)] for j, col in enumerate(cols) for i, c in col.items())


def _tensor_cols(F: Field, cols) -> list:
    """A map into a tensor product: entries ``[source, *target, value]``."""
    return sorted([k, *key, F.dump(c)] for k, t in enumerate(cols) for key, c in t.items())


def _tensor(F: Field, t: dict) -> list:
    return sorted([*key, F.dump(c)] for key, c in t.items())


def _pair_key(k) -> str:
    return ",".join(str(x) for x in k)


def _algebra(F: Field, comp: ComponentAlgebra) -> dict:
    mu = sorted([i, j, k, F.dump(c)] for i, row in enumerate(comp.table) for j, v in enumerate(row) for k, c in v.items())
    return {"dim": comp.dim, "mu": mu, "unit": _vec(F, comp.unit)}


def _coalgebra(F: Field, comp: ComponentCoalgebra) -> dict:
    return {"dim": comp.dim, "delta": _tensor_cols(F, comp.delta), "counit": _vec(F, comp.counit)}


def _tcoalgebra(H: TCoalgebra) -> dict:
    F = H.field
    return {
        "components": {str(a): _algebra(F, c) for a, c in enumerate(H.comps)},
        "delta": {_pair_key(k): _tensor_cols(F, v) for k, v in H.delta.items()},
        "counit": _vec(F, H.counit),
        "antipode": {str(a): _cols(F, c) for a, c in enumerate(H.antipode)},
        "phi": {_pair_key(k): _cols(F, v) for k, v in H.phi.items()},
    }


def _talgebra(T) -> dict:
    F = T.field
    mu = {}
    for k, blk in T.mu.items():
        mu[_pair_key(k)] = sorted([i, j, m, F.dump(c)] for i, row in enumerate(blk) for j, v in enumerate(row)
                                  for m, c in v.items())
    return {
        "components": {str(a): _coalgebra(F, c) for a, c in enumerate(T.comps)},
        "mu": mu,
        "unit": _vec(F, T.unit),
        "antipode": {str(a): _cols(F, c) for a, c in enumerate(T.antipode)},
        "psi": {_pair_key(k): _cols(F, v) for k, v in T.psi.items()},
    }


def _graded(P: GradedHopfAlgebra) -> dict:
    F = P.hopf.field
    return {
        "variant": P.variant,
        "block_dims": list(P.dims),
        "hopf": _tcoalgebra(P.hopf),
        "automorphisms": {str(b): _cols(F, c) for b, c in enumerate(P.automorphisms)},
    }


def to_json(doc: Document) -> dict:
    kind = doc.kind
    F = doc.field
    if kind == "tcoalgebra":
        group, payload = doc.structure.group, _tcoalgebra(doc.structure)
    elif kind == "talgebra":
        group, payload = doc.structure.group, _talgebra(doc.structure)
    else:
        group, payload = doc.structure.group, _graded(doc.structure)
    out = {"schema_version": SCHEMA_VERSION, "kind": kind, "field": F.spec(), "group": group.to_json(),
           "metadata": doc.metadata}
    out.update(payload)
    if doc.rmatrix is not None:
        out["rmatrix"] = {_pair_key(k): _tensor(F, t) for k, t in doc.rmatrix.R.items()}
        if doc.rmatrix.Rt is not None:
            out["rmatrix_inverse"] = {_pair_key(k): _tensor(F, t) for k, t in doc.rmatrix.Rt.items()}
    if doc.twist is not None:
        out["twist"] = {"kind": doc.twist.kind, "values": {str(a): _vec(F, v) for a, v in doc.twist.values.items()}}
    return out


def serialize(doc: Union[Document, TCoalgebra]) -> str:
    if not isinstance(doc, Document):
        doc = Document(doc)
    return json.dumps(to_json(doc), sort_keys=True, indent=1, default=str) + "\n"


def save(doc: Union[Document, TCoalgebra], path: Union[str, Path]) -> None:
    Path(path).write_text(serialize(doc))


# ---------------------------------------------------------------- reading


def _need(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing {key!r}")
    return obj[key]


def _grade(s: str, n: int, where: str) -> int:
    try:
        a = int(s)
    except (TypeError, ValueError):
        raise SchemaError(f"{where}: bad grade key {s!r}")
    if not 0 <= a < n:
        raise SchemaError(f"{where}: grade {a} outside the group")
    return a


def _pair(s: str, n: int, where: str) -> tuple:
    parts = str(s).split(",")
    if len(parts) != 2:
        raise SchemaError(f"{where}: bad grade pair {s!r}")
    return tuple(_grade(p, n, where) for p in parts)


def _entries(F: Field, rows, width: int, where: str):
    if not isinstance(rows, list):
        raise SchemaError(f"{where}: expected a list of entries")
    for r in rows:
        if not isinstance(r, list) or len(r) != width + 1:
            raise SchemaError(f"{where}: entry {r!r} should have {width} indices and a value")
        idx = r[:width]
        if any(isinstance(i, bool) or not isinstance(i, int) or i < 0 for i in idx):
            raise SchemaError(f"{where}: bad indices in {r!r}")
        try:
            value = F.parse(r[width])
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise SchemaError(f"{where}: bad scalar {r[width]!r} ({exc})")
        yield tuple(idx), value


def _accumulate(target: dict, key, value, where: str):
    if key in target:
        raise SchemaError(f"{where}: duplicate entry {key}")
    target[key] = value


def _read_vec(F: Field, rows, where: str) -> dict:
    out: dict = {}
    for (i,), c in _entries(F, rows, 1, where):
        _accumulate(out, i, c, where)
    return out


def _read_cols(F: Field, rows, ncols: int, where: str) -> tuple:
    cols = [dict() for _ in range(ncols)]
    for (i, j), c in _entries(F, rows, 2, where):
        if j >= ncols:
            raise SchemaError(f"{where}: column {j} out of range")
        _accumulate(cols[j], i, c, where)
    return tuple(cols)


def _read_tensor_cols(F: Field, rows, ncols: int, legs: int, where: str) -> tuple:
    cols = [dict() for _ in range(ncols)]
    for idx, c in _entries(F, rows, legs + 1, where):
        if idx[0] >= ncols:
            raise SchemaError(f"{where}: source index {idx[0]} out of range")
        _accumulate(cols[idx[0]], idx[1:], c, where)
    return tuple(cols)


def _read_tensor(F: Field, rows, legs: int, where: str) -> dict:
    out: dict = {}
    for idx, c in _entries(F, rows, legs, where):
        _accumulate(out, idx, c, where)
    return out


def _grade_map(obj, n: int, where: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object keyed by grade")
    out = {_grade(k, n, where): v for k, v in obj.items()}
    if set(out) != set(range(n)):
        raise SchemaError(f"{where}: grades {sorted(set(range(n)) - set(out))} missing")
    return out


def _pair_map(obj, n: int, where: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object keyed by grade pairs")
    out = {_pair(k, n, where): v for k, v in obj.items()}
    missing = [(a, b) for a in range(n) for b in range(n) if (a, b) not in out]
    if missing:
        raise SchemaError(f"{where}: grade pairs {missing[:3]} missing")
    return out


def _dim(obj, where: str) -> int:
    d = _need(obj, "dim", where)
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise SchemaError(f"{where}: bad dimension {d!r}")
    return d


def _parse_tcoalgebra(F: Field, G: FiniteGroup, obj: dict, name: str) -> TCoalgebra:
    n = G.order
    comps = []
    for a, c in sorted(_grade_map(_need(obj, "components", "document"), n, "components").items()):
        where = f"components[{a}]"
        d = _dim(c, where)
        table = [[dict() for _ in range(d)] for _ in range(d)]
        for (i, j, k), v in _entries(F, _need(c, "mu", where), 3, where + ".mu"):
            if max(i, j, k) >= d:
                raise SchemaError(f"{where}.mu: index out of range in {(i, j, k)}")
            _accumulate(table[i][j], k, v, where + ".mu")
        unit = _read_vec(F, _need(c, "unit", where), where + ".unit")
        comps.append(ComponentAlgebra(d, tuple(tuple(r) for r in table), unit))
    dims = [c.dim for c in comps]
    delta = {k: _read_tensor_cols(F, v, dims[G.mul(*k)], 2, f"delta[{k}]")
             for k, v in _pair_map(_need(obj, "delta", "document"), n, "delta").items()}
    counit = _read_vec(F, _need(obj, "counit", "document"), "counit")
    antipode = [_read_cols(F, v, dims[a], f"antipode[{a}]")
                for a, v in sorted(_grade_map(_need(obj, "antipode", "document"), n, "antipode").items())]
    phi = {k: _read_cols(F, v, dims[k[0]], f"phi[{k}]")
           for k, v in _pair_map(_need(obj, "phi", "document"), n, "phi").items()}
    return TCoalgebra(getattr(F, "target", F), G, comps, delta, counit, antipode, phi, name=name)


def _parse_talgebra(F: Field, G: FiniteGroup, obj: dict, name: str):
    from .duals import TAlgebra

    n = G.order
    comps = []
    for a, c in sorted(_grade_map(_need(obj, "components", "document"), n, "components").items()):
        where = f"components[{a}]"
        d = _dim(c, where)
        delta = _read_tensor_cols(F, _need(c, "delta", where), d, 2, where + ".delta")
        counit = _read_vec(F, _need(c, "counit", where), where + ".counit")
        comps.append(ComponentCoalgebra(d, delta, counit))
    dims = [c.dim for c in comps]
    mu = {}
    for (a, b), rows in _pair_map(_need(obj, "mu", "document"), n, "mu").items():
        blk = [[dict() for _ in range(dims[b])] for _ in range(dims[a])]
        where = f"mu[{(a, b)}]"
        for (i, j, m), v in _entries(F, rows, 3, where):
            if i >= dims[a] or j >= dims[b]:
                raise SchemaError(f"{where}: index out of range in {(i, j)}")
            _accumulate(blk[i][j], m, v, where)
        mu[(a, b)] = blk
    unit = _read_vec(F, _need(obj, "unit", "document"), "unit")
    antipode = [_read_cols(F, v, dims[a], f"antipode[{a}]")
                for a, v in sorted(_grade_map(_need(obj, "antipode", "document"), n, "antipode").items())]
    psi = {k: _read_cols(F, v, dims[k[0]], f"psi[{k}]")
           for k, v in _pair_map(_need(obj, "psi", "document"), n, "psi").items()}
    return TAlgebra(getattr(F, "target", F), G, comps, mu, unit, antipode, psi, name=name)


def _parse_graded(F: Field, G: FiniteGroup, obj: dict, name: str) -> GradedHopfAlgebra:
    from .finite_group import trivial_group

    variant = _need(obj, "variant", "document")
    if variant not in ("coalgebra", "algebra"):
        raise SchemaError(f"unknown packed variant {variant!r}")
    dims = _need(obj, "block_dims", "document")
    if not isinstance(dims, list) or len(dims) != G.order or any(not isinstance(d, int) or d < 0 for d in dims):
        raise SchemaError("block_dims must list one dimension per group element")
    hopf = _parse_tcoalgebra(F, trivial_group(), _need(obj, "hopf", "document"), name)
    total = hopf.dim(0)
    if sum(dims) != total:
        raise SchemaError(f"block dimensions add up to {sum(dims)}, the Hopf algebra has dimension {total}")
    autos = tuple(_read_cols(F, v, total, f"automorphisms[{b}]")
                  for b, v in sorted(_grade_map(_need(obj, "automorphisms", "document"), G.order, "automorphisms").items()))
    return GradedHopfAlgebra(G, hopf, tuple(dims), autos, variant)


class _BaseChange:
    """Reads scalars written over ``source`` and coerces them into ``target``."""

    def __init__(self, source: Field, target: Field):
        self.source, self.target = source, target

    def parse(self, s):
        return self.target(self.source.parse(s))

    def __getattr__(self, name):
        return getattr(self.target, name)

    def __call__(self, x):
        return self.target(x)


def from_json(obj: dict, field: Optional[Field] = None) -> Document:
    """Build a document; ``field`` re-reads the scalars over another field."""
    from .quasitriangular import RMatrixFamily
    from .ribbon import TwistFamily

    if not isinstance(obj, dict):
        raise SchemaError("a document must be a JSON object")
    version = obj.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version!r}")
    kind = obj.get("kind", "tcoalgebra")
    if kind not in KINDS:
        raise SchemaError(f"unknown document kind {kind!r}")
    metadata = obj.get("metadata", {})
    if not isinstance(metadata, dict):
        raise SchemaError("metadata must be an object")
    try:
        F = field_from_spec(_need(obj, "field", "document"))
        if field is not None and field != F:
            if F.characteristic != 0:
                raise SchemaError(f"cannot move scalars from {F!r} to {field!r}")
            F = _BaseChange(F, field)
        G = group_from_json(_need(obj, "group", "document"))
        name = str(metadata.get("name", ""))
        if kind == "tcoalgebra":
            structure = _parse_tcoalgebra(F, G, obj, name)
        elif kind == "talgebra":
            structure = _parse_talgebra(F, G, obj, name)
        else:
            structure = _parse_graded(F, G, obj, name)
        n = G.order
        rmatrix = twist = None
        if "rmatrix" in obj:
            R = {k: _read_tensor(F, v, 2, f"rmatrix[{k}]") for k, v in _pair_map(obj["rmatrix"], n, "rmatrix").items()}
            Rt = None
            if "rmatrix_inverse" in obj:
                Rt = {k: _read_tensor(F, v, 2, f"rmatrix_inverse[{k}]")
                      for k, v in _pair_map(obj["rmatrix_inverse"], n, "rmatrix_inverse").items()}
            rmatrix = RMatrixFamily(R, Rt)
        if "twist" in obj:
            tw = obj["twist"]
            tkind = _need(tw, "kind", "twist")
            if tkind not in ("theta", "v"):
                raise SchemaError(f"twist kind must be 'theta' or 'v', not {tkind!r}")
            values = {a: _read_vec(F, v, f"twist[{a}]") for a, v in _grade_map(_need(tw, "values", "twist"), n, "twist").items()}
            twist = TwistFamily(values, tkind)
    except SchemaError:
        raise
    except (CrossedDoubleError, KeyError, TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"{type(exc).__name__}: {exc}") from exc
    return Document(structure, rmatrix, twist, dict(metadata))


def parse(text: str, field: Optional[Field] = None) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    return from_json(obj, field)


def load(path: Union[str, Path], field: Optional[Field] = None) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    return parse(text, field)


def documents_equal(x: Document, y: Document) -> bool:
    """Equality on structure constants, R-matrix and twist; metadata is ignored."""
    if x.kind != y.kind or x.field != y.field or x.structure.group != y.structure.group:
        return False
    if not x.structure.same_constants(y.structure):
        return False
    if (x.rmatrix is None) != (y.rmatrix is None) or (x.twist is None) != (y.twist is None):
        return False
    if x.rmatrix is not None:
        # the inverse is unique, so it is compared only when both sides store one
        rx, ry = x.rmatrix, y.rmatrix
        if rx.R != ry.R or (rx.Rt is not None and ry.Rt is not None and rx.Rt != ry.Rt):
            return False
    if x.twist is not None and (x.twist.kind != y.twist.kind or x.twist.values != y.twist.values):
        return False
    return True
