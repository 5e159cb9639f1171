"""JSON documents for complexes, subdivisions, liftings, morphisms and reports.

Every file is ``{"kind": ..., "version": 1, "payload": {...}}``.  Rationals
are written as ``"p/q"`` strings (``"p"`` for integers); vertex and ray ids
keep their JSON type (integer or string).  Reading a written document gives
back an equal object.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from ._linalg import to_fraction
from .complex import Cell, IntegralStructure, PolyComplex, Subdivision, build_complex, sorted_ids
from .conical import ConicalComplex, ConicalSubdivision, SlicingFunction, build_conical
from .errors import PolytriError
from .lifting import PLLifting, VerticialLifting
from .semistable import ConicalMorphism, SemistabilityReport, orthant

__all__ = ["Document", "ParseError", "dumps", "from_document", "loads", "read", "to_document", "write"]

VERSION = 1
KINDS = ("complex", "conical", "subdivision", "lifting", "morphism", "report")


class ParseError(PolytriError):
    pass


@dataclass(frozen=True)
class Document:
    kind: str
    version: int
    payload: Mapping


def _q(x) -> str:
    return str(Fraction(x))


def _rational(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"rationals must be strings or integers, got {x!r}")
    try:
        return to_fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {x!r}") from exc


def _vec(v) -> tuple:
    if not isinstance(v, list):
        raise ParseError(f"expected a coordinate list, got {v!r}")
    return tuple(_rational(x) for x in v)


def _id(x):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"ids must be integers or strings, got {x!r}")
    return x


def _ids(cell) -> list:
    return [_id(v) for v in cell]


def _lattice_out(integral: IntegralStructure) -> list:
    return [[_q(x) for x in b] for b in integral.lattice_basis]


def _lattice_in(data) -> IntegralStructure | None:
    if data is None:
        return None
    return IntegralStructure(tuple(_vec(b) for b in data))


def _sorted_cells(cells) -> list:
    return sorted((sorted_ids(c) for c in cells), key=lambda c: [str(type(v).__name__) + str(v) for v in c])


# -- payload writers ---------------------------------------------------------------

def _complex_out(c: PolyComplex) -> dict:
    return {
        "vertices": [{"id": v, "coords": [_q(x) for x in c.point(v)]} for v in sorted_ids(c.vertices)],
        "cells": _sorted_cells(m.vertices for m in c.maximal_cells()),
        "lattice": _lattice_out(c.integral),
    }


def _conical_out(s: ConicalComplex, slicing: SlicingFunction | None = None) -> dict:
    out = {
        "rays": [{"id": r, "generator": [_q(x) for x in s.generator(r)]} for r in sorted_ids(s.rays)],
        "cones": _sorted_cells(m.vertices for m in s.maximal_cones() if m.vertices),
        "lattice": _lattice_out(s.integral),
    }
    if slicing is not None:
        out["slicing"] = [[r, _q(slicing[r])] for r in sorted_ids(slicing.ray_values)]
    return out


def _values_out(values: Mapping) -> list:
    return [[v, _q(values[v])] for v in sorted_ids(values)]


def _carrier_out(carrier: Mapping) -> list:
    rows = [[sorted_ids(c.vertices), sorted_ids(p.vertices)] for c, p in carrier.items() if c.vertices]
    return sorted(rows, key=lambda r: (len(r[0]), [str(v) for v in r[0]]))


def to_document(obj, **extra) -> Document:
    """Wrap a library object in a document."""
    if isinstance(obj, Document):
        return obj
    if isinstance(obj, PolyComplex):
        return Document("complex", VERSION, _complex_out(obj))
    if isinstance(obj, ConicalComplex):
        return Document("conical", VERSION, _conical_out(obj, extra.get("slicing")))
    if isinstance(obj, Subdivision):
        return Document("subdivision", VERSION, {
            "space": "compact",
            "parent": _complex_out(obj.parent),
            "refined": _complex_out(obj.refined),
            "carrier": _carrier_out(obj.carrier),
        })
    if isinstance(obj, ConicalSubdivision):
        return Document("subdivision", VERSION, {
            "space": "conical",
            "parent": _conical_out(obj.parent),
            "refined": _conical_out(obj.refined),
            "carrier": _carrier_out(obj.carrier),
        })
    if isinstance(obj, VerticialLifting):
        return Document("lifting", VERSION, {"type": "verticial", "values": _values_out(obj.values)})
    if isinstance(obj, PLLifting):
        return Document("lifting", VERSION, {
            "type": "pl",
            "linearity": to_document(obj.linearity).payload,
            "values": _values_out(obj.values.values),
        })
    if isinstance(obj, ConicalMorphism):
        payload: dict = {
            "source": _conical_out(obj.source),
            "target": {"n": obj.target.n, "multipliers": list(obj.target.multipliers)},
        }
        if obj.linear is not None:
            payload["matrix"] = [[_q(x) for x in row] for row in obj.linear]
        else:
            payload["matrices"] = [{"cone": sorted_ids(k), "matrix": [[_q(x) for x in row] for row in m]}
                                   for k, m in sorted(obj.matrices.items(), key=lambda kv: str(sorted_ids(kv[0])))]
        return Document("morphism", VERSION, payload)
    if isinstance(obj, SemistabilityReport):
        return Document("report", VERSION, {
            "type": "semistability",
            "equidimensional": obj.equidimensional,
            "reduced": obj.reduced,
            "codim1_semistable": obj.codim1_semistable,
            "simplicial": obj.simplicial,
            "base_nonsingular": obj.base_nonsingular,
            "all_maximal_index_one": obj.all_maximal_index_one,
            "verdict": obj.verdict,
            "witnesses": _jsonable(obj.witnesses),
        })
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _jsonable(x):
    if isinstance(x, Fraction):
        return _q(x)
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return [_jsonable(v) for v in sorted_ids(x)]
    return x


def report_document(payload: Mapping) -> Document:
    """A free-form report (regularity verdicts, enumerations) with rationals stringified."""
    return Document("report", VERSION, _jsonable(payload))


# -- payload readers -----------------------------------------------------------------

def _need(payload: Mapping, key: str):
    if not isinstance(payload, Mapping) or key not in payload:
        raise ParseError(f"missing field {key!r}")
    return payload[key]


def _complex_in(p: Mapping) -> PolyComplex:
    verts = {}
    for entry in _need(p, "vertices"):
        verts[_id(_need(entry, "id"))] = _vec(_need(entry, "coords"))
    cells = [_ids(c) for c in _need(p, "cells")]
    return build_complex(verts, cells, _lattice_in(p.get("lattice")))


def _conical_in(p: Mapping) -> tuple[ConicalComplex, SlicingFunction | None]:
    rays = {}
    for entry in _need(p, "rays"):
        rays[_id(_need(entry, "id"))] = _vec(_need(entry, "generator"))
    cones = [_ids(c) for c in _need(p, "cones")]
    sigma = build_conical(rays, cones, _lattice_in(p.get("lattice")))
    slicing = None
    if p.get("slicing") is not None:
        slicing = SlicingFunction({_id(r): _rational(x) for r, x in p["slicing"]})
    return sigma, slicing


def _values_in(rows) -> dict:
    if not isinstance(rows, list):
        raise ParseError("values must be a list of [id, value] pairs")
    out = {}
    for row in rows:
        if not isinstance(row, list) or len(row) != 2:
            raise ParseError(f"bad value entry {row!r}")
        out[_id(row[0])] = _rational(row[1])
    return out


def _carrier_in(rows, refined, parent, lookup) -> dict:
    by_set = {}
    for row in rows:
        by_set[frozenset(_ids(row[0]))] = frozenset(_ids(row[1]))
    out = {}
    for c in refined:
        if not c.vertices:
            out[c] = c
            continue
        key = by_set.get(c.vertices)
        if key is None:
            raise ParseError(f"no carrier for cell {sorted_ids(c.vertices)}")
        out[c] = lookup(key)
    return out


def from_document(doc: Document):
    """Rebuild the library object described by a document."""
    if doc.version != VERSION:
        raise ParseError(f"unsupported document version {doc.version}")
    p = doc.payload
    if doc.kind == "complex":
        return _complex_in(p)
    if doc.kind == "conical":
        return _conical_in(p)[0]
    if doc.kind == "subdivision":
        space = p.get("space", "compact")
        if space == "compact":
            parent, refined = _complex_in(_need(p, "parent")), _complex_in(_need(p, "refined"))
            carrier = _carrier_in(_need(p, "carrier"), refined.cells, parent, parent.cell)
            return Subdivision(refined, parent, carrier)
        if space == "conical":
            parent, refined = _conical_in(_need(p, "parent"))[0], _conical_in(_need(p, "refined"))[0]
            carrier = _carrier_in(_need(p, "carrier"), refined.cones, parent, parent.cone)
            return ConicalSubdivision(refined, parent, carrier)
        raise ParseError(f"unknown subdivision space {space!r}")
    if doc.kind == "lifting":
        kind = p.get("type", "verticial")
        values = _values_in(_need(p, "values"))
        if kind == "verticial":
            return VerticialLifting(values)
        if kind == "pl":
            linearity = from_document(Document("subdivision", VERSION, _need(p, "linearity")))
            return PLLifting(linearity, VerticialLifting(values))
        raise ParseError(f"unknown lifting type {kind!r}")
    if doc.kind == "morphism":
        source, _ = _conical_in(_need(p, "source"))
        t = _need(p, "target")
        target = orthant(int(_need(t, "n")), [int(k) for k in t.get("multipliers") or [1] * int(t["n"])])
        if "matrix" in p:
            return ConicalMorphism(source, target, [list(_vec(row)) for row in p["matrix"]])
        mats = {frozenset(_ids(_need(e, "cone"))): [list(_vec(row)) for row in _need(e, "matrix")]
                for e in _need(p, "matrices")}
        return ConicalMorphism(source, target, mats)
    if doc.kind == "report":
        if p.get("type") == "semistability":
            return SemistabilityReport(
                p["equidimensional"], p["reduced"], p["codim1_semistable"], p["simplicial"],
                p["base_nonsingular"], p["all_maximal_index_one"], p["verdict"], p.get("witnesses", {}))
        return dict(p)
    raise ParseError(f"unknown document kind {doc.kind!r}")


def loads_document(text: str) -> Document:
    try:
        raw = json.loads(text, parse_float=_no_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("a document must be a JSON object")
    kind = raw.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown document kind {kind!r}")
    version = raw.get("version")
    if not isinstance(version, int):
        raise ParseError("missing integer version")
    return Document(kind, version, _need(raw, "payload"))


def _no_float(text: str):
    raise ParseError(f"floating-point literal {text} is not allowed; write rationals as strings")


def dumps(obj, **extra) -> str:
    doc = to_document(obj, **extra)
    return json.dumps({"kind": doc.kind, "version": doc.version, "payload": doc.payload}, indent=1) + "\n"


def loads(text: str):
    return from_document(loads_document(text))


def read(path) -> Any:
    return loads(Path(path).read_text())


def read_document(path) -> Document:
    return loads_document(Path(path).read_text())


def write(obj, path, **extra) -> Path:
    path = Path(path)
    path.write_text(dumps(obj, **extra))
    return path
