"""JSON documents for every payload type.

Scalars are strings: "num/den" (or an integer) over Q, the residue in
0..p-1 over GF(p). Parsing also accepts JSON integers. Dumping then loading
then dumping again is the identity on every type here.
"""
from __future__ import annotations

import json
from typing import Any

from .compalg import AlgebraTag, AlgElem
from .errors import DimensionMismatch, MalformedInput
from .exactlin import FieldSpec, Subspace, rref
from .jordan import HermMatrix, LinForm
from .pencils import OrbitLabel, PencilMap, TwoForm
from .spinor import SpinorPair


def _need(doc: Any, kind: type, what: str):
    if not isinstance(doc, kind):
        raise MalformedInput(f"{what} must be a JSON {kind.__name__}")
    return doc


def _key(doc: dict, k: str, what: str):
    if k not in doc:
        raise MalformedInput(f"{what} is missing the key {k!r}")
    return doc[k]


def dump_scalar(x, field: FieldSpec) -> str:
    return field.fmt(x)


def load_scalar(doc, field: FieldSpec):
    if isinstance(doc, bool) or not isinstance(doc, (int, str)):
        raise MalformedInput(f"scalar must be a string or integer, got {doc!r}")
    return field(doc)


def dump_vector(v, field: FieldSpec) -> list[str]:
    return [field.fmt(x) for x in v]


def load_vector(doc, field: FieldSpec, length: int | None = None) -> tuple:
    _need(doc, list, "vector")
    if length is not None and len(doc) != length:
        raise DimensionMismatch(f"expected {length} entries, got {len(doc)}")
    return tuple(load_scalar(x, field) for x in doc)


def dump_matrix(m, field: FieldSpec) -> list[list[str]]:
    return [dump_vector(r, field) for r in m]


def load_matrix(doc, field: FieldSpec, shape: tuple[int, int] | None = None) -> list[list]:
    _need(doc, list, "matrix")
    if shape and len(doc) != shape[0]:
        raise DimensionMismatch(f"expected {shape[0]} rows, got {len(doc)}")
    return [list(load_vector(r, field, shape[1] if shape else None)) for r in doc]


# ---------------------------------------------------------------- algebra elements

def dump_alg(x: AlgElem) -> dict:
    return {"a": x.tag.dim_a, "coords": dump_vector(x.coords, x.tag.field)}


def load_alg(doc, field: FieldSpec, a: int | None = None) -> AlgElem:
    if isinstance(doc, list):
        if a is None:
            a = len(doc)
        return AlgElem(AlgebraTag(a, field), load_vector(doc, field, a))
    _need(doc, dict, "algebra element")
    da = _key(doc, "a", "algebra element")
    if a is not None and da != a:
        raise MalformedInput(f"algebra element of dimension {da} where {a} was expected")
    if not isinstance(da, int):
        raise MalformedInput("algebra dimension must be an integer")
    tag = AlgebraTag(da, field)
    return AlgElem(tag, load_vector(_key(doc, "coords", "algebra element"), field, da))


def dump_herm(m: HermMatrix) -> dict:
    f = m.field
    doc = {
        "n": m.n,
        "a": m.a,
        "diag": dump_vector(m.diag, f),
        "upper": [[i, j, dump_alg(e)] for (i, j), e in sorted(m.upper().items())],
    }
    if m.a == 1:
        doc["rows"] = [[f.fmt(m.block(i, j)[0]) for j in range(m.n)] for i in range(m.n)]
    return doc


def load_herm(doc, field: FieldSpec) -> HermMatrix:
    _need(doc, dict, "hermitian matrix")
    n, a = _key(doc, "n", "hermitian matrix"), _key(doc, "a", "hermitian matrix")
    if not isinstance(n, int) or not isinstance(a, int) or n < 1:
        raise MalformedInput("n and a must be positive integers")
    tag = AlgebraTag(a, field)
    diag = load_vector(_key(doc, "diag", "hermitian matrix"), field, n)
    upper = {}
    for item in _need(doc.get("upper", []), list, "upper"):
        if not (isinstance(item, list) and len(item) == 3):
            raise MalformedInput("upper entries are [i, j, element] triples")
        i, j, e = item
        if not (isinstance(i, int) and isinstance(j, int)):
            raise MalformedInput("upper indices must be integers")
        if (i, j) in upper:
            raise MalformedInput(f"upper entry ({i}, {j}) given twice")
        upper[(i, j)] = load_alg(e, field, a)
    m = HermMatrix.build(tag, diag, upper)
    if m.n != n:
        raise DimensionMismatch("diagonal length differs from n")
    if "rows" in doc:
        rows = load_matrix(doc["rows"], field, (n, n))
        if a != 1 or rows != [[m.block(i, j)[0] for j in range(n)] for i in range(n)]:
            raise MalformedInput("rows disagree with diag and upper")
    return m


def dump_form(h: LinForm) -> dict:
    return {"form": dump_herm(h.rep)}


def load_form(doc, field: FieldSpec) -> LinForm:
    if isinstance(doc, dict) and "form" in doc:
        return LinForm(load_herm(doc["form"], field))
    return LinForm(load_herm(doc, field))


def dump_subspace(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "basis": dump_matrix(s.basis, s.field)}


def load_subspace(doc, field: FieldSpec) -> Subspace:
    _need(doc, dict, "subspace")
    n = _key(doc, "ambient_dim", "subspace")
    if not isinstance(n, int) or n < 0:
        raise MalformedInput("ambient_dim must be a nonnegative integer")
    rows = load_matrix(_key(doc, "basis", "subspace"), field)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("basis rows do not match ambient_dim")
    return rref(rows, field, n)


def dump_spinor(s: SpinorPair) -> dict:
    return {"side": s.side, "a": dump_alg(s.a), "b": dump_alg(s.b)}


def load_spinor(doc, field: FieldSpec) -> SpinorPair:
    _need(doc, dict, "spinor")
    side = doc.get("side", "+")
    return SpinorPair(load_alg(_key(doc, "a", "spinor"), field, 8),
                      load_alg(_key(doc, "b", "spinor"), field, 8), side)


def dump_twoform(w: TwoForm) -> list[list[str]]:
    return dump_matrix(w.gram, w.field)


def load_twoform(doc, field: FieldSpec) -> TwoForm:
    return TwoForm(tuple(map(tuple, load_matrix(doc, field, (5, 5)))), field)


def dump_pencil(f: PencilMap) -> list:
    return [dump_twoform(f.omega1), dump_twoform(f.omega2)]


def load_pencil(doc, field: FieldSpec) -> PencilMap:
    if isinstance(doc, dict):
        doc = [_key(doc, "omega1", "pencil"), _key(doc, "omega2", "pencil")]
    if not (isinstance(doc, list) and len(doc) == 2):
        raise MalformedInput("a pencil is a pair of 5x5 gram matrices")
    return PencilMap(load_twoform(doc[0], field), load_twoform(doc[1], field))


def dump_label(x: OrbitLabel) -> dict:
    return {"label": x.label, "dim": x.dim}


def load_label(doc) -> OrbitLabel:
    if isinstance(doc, dict):
        lab = OrbitLabel(_key(doc, "label", "orbit label"))
        if "dim" in doc and doc["dim"] != lab.dim:
            raise MalformedInput("orbit dimension disagrees with the label")
        return lab
    if isinstance(doc, str):
        return OrbitLabel(doc)
    raise MalformedInput("orbit label must be a string or object")


def canonical(doc) -> str:
    """The one JSON text used for reports and golden files."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)

