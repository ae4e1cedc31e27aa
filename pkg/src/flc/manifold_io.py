"""JSON manifold files and report serialization.

Integers above 2**53 are written as decimal strings so that any JSON
reader can load them exactly; :func:`decode_bigints` turns them back.
"""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .classifier import ClassificationReport, ManifoldData
from .groups import (
    FGAbelianGroup,
    FiniteTableGroup,
    SelfCentralizingZ,
    ValidationError,
    trivial_group,
)
from .pi2mod import Pi2Module
from .spinclass import AlmostSpinAbelian, AlmostSpinCocycle, Spin, SpinType, TotallyNonspin

SAFE_INT = 2 ** 53

_int = {"type": "integer"}
_bits = {"type": "array", "items": {"enum": [0, 1]}}
_int_rows = {"type": "array", "items": {"type": "array", "items": _int}}

MANIFOLD_SCHEMA: dict = {
    "type": "object",
    "required": ["name", "pi1", "pi2", "w2"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "notes": {"type": "string"},
        "pi1": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": ["trivial", "finite_table", "fg_abelian", "self_centralizing_z"]}},
            "allOf": [
                {"if": {"properties": {"kind": {"const": "finite_table"}}},
                 "then": {"required": ["table"],
                          "properties": {"table": _int_rows,
                                         "names": {"type": "array", "items": {"type": "string"}}}}},
                {"if": {"properties": {"kind": {"const": "fg_abelian"}}},
                 "then": {"required": ["rank"],
                          "properties": {"rank": {"type": "integer", "minimum": 0},
                                         "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}}}}},
                {"if": {"properties": {"kind": {"const": "self_centralizing_z"}}},
                 "then": {"properties": {"label": {"type": "string"}}}},
            ],
        },
        "pi2": {
            "type": "object",
            "required": ["generators"],
            "additionalProperties": False,
            "properties": {
                "generators": {"type": "integer", "minimum": 0},
                "relations": _int_rows,
                "action": {"type": "object", "additionalProperties": _int_rows},
            },
        },
        "w2": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": ["spin", "almost_spin_cocycle", "almost_spin_abelian",
                                             "totally_nonspin"]}},
            "allOf": [
                {"if": {"properties": {"kind": {"const": "almost_spin_cocycle"}}},
                 "then": {"required": ["omega"], "properties": {"omega": _int_rows}}},
                {"if": {"properties": {"kind": {"const": "almost_spin_abelian"}}},
                 "then": {"required": ["ext_bits", "pairing"],
                          "properties": {"ext_bits": _int_rows["items"], "pairing": _int_rows,
                                         "declared": {"enum": ["h-spin", "h-nonspin"]}}}},
                {"if": {"properties": {"kind": {"const": "totally_nonspin"}}},
                 "then": {"required": ["w2s"], "properties": {"w2s": _int_rows["items"]}}},
            ],
        },
    },
}


def pointer(path) -> str:
    return "/" + "/".join(str(p).replace("~", "~0").replace("/", "~1") for p in path)


def schema_violations(doc: Any) -> list[str]:
    v = jsonschema.Draft202012Validator(MANIFOLD_SCHEMA)
    errs = sorted(v.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    return [f"{pointer(e.absolute_path)}: {e.message}" for e in errs]


def _build_pi1(d: dict):
    kind = d["kind"]
    if kind == "trivial":
        return trivial_group()
    if kind == "finite_table":
        try:
            return FiniteTableGroup(d["table"], d.get("names"))
        except ValidationError as exc:
            raise ValidationError([f"/pi1/table: {v}" for v in exc.violations], "pi1") from None
    if kind == "fg_abelian":
        return FGAbelianGroup(d["rank"], d.get("torsion", []))
    return SelfCentralizingZ(d.get("label", "pi1"))


def _action_key(G, key: str):
    if isinstance(G, FiniteTableGroup):
        if G.names and key in G.names:
            return G.names.index(key)
        if key.lstrip("-").isdigit():
            return int(key)
        raise ValidationError([f"/pi2/action/{key}: not an element index or name"], "pi2")
    if isinstance(G, FGAbelianGroup):
        if not key.isdigit():
            raise ValidationError([f"/pi2/action/{key}: abelian action keys are generator indices"], "pi2")
        return int(key)
    if key != "c":
        raise ValidationError([f"/pi2/action/{key}: the only key for an opaque pi1 is 'c'"], "pi2")
    return key


def _build_w2(d: dict):
    kind = d["kind"]
    if kind == "spin":
        return Spin()
    if kind == "almost_spin_cocycle":
        return AlmostSpinCocycle(tuple(tuple(r) for r in d["omega"]))
    if kind == "almost_spin_abelian":
        declared = SpinType(d["declared"]) if "declared" in d else None
        return AlmostSpinAbelian(tuple(d["ext_bits"]), tuple(tuple(r) for r in d["pairing"]), declared)
    return TotallyNonspin(tuple(d["w2s"]))


def manifold_from_dict(doc: Any, validate: bool = True) -> ManifoldData:
    """Build :class:`ManifoldData`; ValidationError lists every problem with a JSON pointer."""
    doc = decode_bigints(doc)
    bad = schema_violations(doc)
    if bad:
        raise ValidationError(bad, "manifold file")
    G = _build_pi1(doc["pi1"])
    p2 = doc["pi2"]
    n = p2["generators"]
    rel = p2.get("relations", [])
    shape = [f"/pi2/relations/{i}: expected {n} entries" for i, r in enumerate(rel) if len(r) != n]
    action = {}
    for key, m in p2.get("action", {}).items():
        if len(m) != n or any(len(r) != n for r in m):
            shape.append(f"/pi2/action/{key}: expected a {n}x{n} matrix")
        action[_action_key(G, key)] = m
    if shape:
        raise ValidationError(shape, "manifold file")
    M = Pi2Module(G, n, rel, action)
    X = ManifoldData(doc["name"], G, M, _build_w2(doc["w2"]), doc.get("notes", ""))
    if validate:
        X.validate()
    return X


def load_manifold(path: str, validate: bool = True) -> ManifoldData:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError([f"line {exc.lineno} column {exc.colno}: {exc.msg}"], path) from None
    return manifold_from_dict(doc, validate)


# -- big integers ---------------------------------------------------------------------

def encode_bigints(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > SAFE_INT else x
    if isinstance(x, dict):
        return {k: encode_bigints(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode_bigints(v) for v in x]
    return x


def _is_big_decimal(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return body.isdigit() and abs(int(s)) > SAFE_INT


def decode_bigints(x):
    if isinstance(x, str) and _is_big_decimal(x):
        return int(x)
    if isinstance(x, dict):
        return {k: decode_bigints(v) for k, v in x.items()}
    if isinstance(x, list):
        return [decode_bigints(v) for v in x]
    return x


def report_to_json(report: ClassificationReport) -> str:
    return json.dumps(encode_bigints(report.to_dict()), sort_keys=True, indent=2, ensure_ascii=False)


def report_from_json(text: str) -> ClassificationReport:
    return ClassificationReport.from_dict(decode_bigints(json.loads(text)))
