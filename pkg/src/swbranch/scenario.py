"""JSON scenario documents.

Every number in a document is a decimal string ("-3", "12"); JSON numbers
are rejected outright so that no float can leak into the exact pipeline.
Booleans are plain JSON booleans.  A document looks like::

    {
      "schema": 1,
      "name": "single sphere at the adjunction bound",
      "manifold": {
        "b_plus": "3", "sigma": "-13", "simple_type": true, "h1_coprime": ["2"],
        "basic_classes": [{"label": "s", "sw": "1", "d": "0", "pairings": ["8"]}]
      },
      "surfaces": {"kind": "spheres", "entries": [{"n": "8", "class": ["0"]}]},
      "cover": {"p": "2"}
    }
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Union

import jsonschema

from .constraints import (
    BasicClass,
    CoverSpec,
    CuspEntry,
    FourManifoldModel,
    RP2Entry,
    Scenario,
    SphereEntry,
    SurfaceConfig,
    validate_scenario,
)
from .errors import MalformedScenario

INT = {"type": "string", "pattern": r"^-?(0|[1-9][0-9]*)$"}
INT_LIST = {"type": "array", "items": INT}


def _obj(props: Dict[str, Any], required=()) -> Dict[str, Any]:
    return {"type": "object", "properties": props, "required": list(required), "additionalProperties": False}


SPHERE = _obj({"n": INT, "class": INT_LIST}, ["n"])
RP2 = _obj({"e": INT, "class": INT_LIST, "eps": INT}, ["e"])
CUSP = _obj({"handedness": {"enum": ["left", "right"]}, "square": INT, "class": INT_LIST}, ["handedness", "square"])

SCHEMA: Dict[str, Any] = _obj(
    {
        "schema": {"const": 1},
        "name": {"type": "string"},
        "manifold": _obj(
            {
                "b_plus": INT,
                "sigma": INT,
                "simple_type": {"type": "boolean"},
                "b1_zero": {"type": "boolean"},
                "spin": {"type": "boolean"},
                "w2": INT_LIST,
                "h1_coprime": INT_LIST,
                "basic_classes": {
                    "type": "array",
                    "items": _obj({"label": {"type": "string"}, "sw": INT, "d": INT, "pairings": INT_LIST},
                                  ["sw"]),
                },
            },
            ["b_plus", "sigma"],
        ),
        "surfaces": {
            "oneOf": [
                _obj({"kind": {"const": "none"}, "entries": {"type": "array", "maxItems": 0}}, ["kind"]),
                _obj({"kind": {"const": "spheres"}, "entries": {"type": "array", "items": SPHERE}}, ["kind", "entries"]),
                _obj({"kind": {"const": "rp2"}, "entries": {"type": "array", "items": RP2}}, ["kind", "entries"]),
                _obj({"kind": {"const": "cusps"}, "entries": {"type": "array", "items": CUSP}}, ["kind", "entries"]),
            ]
        },
        "cover": _obj({"p": INT, "weights": INT_LIST}, ["p"]),
    },
    ["schema", "manifold"],
)


def _reject_floats(text: str):
    def bad(value):
        raise MalformedScenario(f"JSON number {value} not allowed; write integers as strings")

    doc = json.loads(text, parse_float=bad, parse_constant=bad)
    _reject_bare_ints(doc, ())
    return doc


def _reject_bare_ints(node, path):
    """Only the top-level "schema" key may hold a JSON integer."""
    if isinstance(node, dict):
        for k, v in node.items():
            if path == () and k == "schema":
                continue
            _reject_bare_ints(v, path + (str(k),))
    elif isinstance(node, list):
        for i, v in enumerate(node):
            _reject_bare_ints(v, path + (str(i),))
    elif isinstance(node, int) and not isinstance(node, bool):
        raise MalformedScenario(f"JSON number {node} not allowed; write integers as strings", path)


def _ints(xs):
    return tuple(int(x) for x in xs)


def parse_document(doc: Dict[str, Any]) -> Scenario:
    """Validate a decoded document against :data:`SCHEMA` and build a :class:`Scenario`."""
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = errors[0]
        raise MalformedScenario(err.message, tuple(str(x) for x in err.absolute_path))
    m = doc["manifold"]
    manifold = FourManifoldModel(
        b_plus=int(m["b_plus"]),
        sigma=int(m["sigma"]),
        simple_type=m.get("simple_type", True),
        h1_coprime=frozenset(_ints(m.get("h1_coprime", []))),
        b1_zero=m.get("b1_zero", True),
        spin=m.get("spin"),
        w2=_ints(m["w2"]) if "w2" in m else None,
    )
    classes = tuple(
        BasicClass(bc.get("label", f"s{k}"), int(bc["sw"]), int(bc.get("d", "0")), _ints(bc.get("pairings", [])))
        for k, bc in enumerate(m.get("basic_classes", []))
    )
    s = doc.get("surfaces", {"kind": "none"})
    kind = s["kind"]
    entries = []
    for e in s.get("entries", []):
        if kind == "spheres":
            entries.append(SphereEntry(int(e["n"]), _ints(e.get("class", []))))
        elif kind == "rp2":
            entries.append(RP2Entry(int(e["e"]), _ints(e.get("class", [])), int(e["eps"]) if "eps" in e else None))
        else:
            entries.append(CuspEntry(e["handedness"], int(e["square"]), _ints(e.get("class", []))))
    cover = None
    if "cover" in doc:
        c = doc["cover"]
        cover = CoverSpec(int(c["p"]), _ints(c["weights"]) if "weights" in c else None)
    sc = Scenario(manifold, SurfaceConfig(kind, tuple(entries)), classes, cover, doc.get("name", ""))
    return validate_scenario(sc)


def loads(text: str) -> Scenario:
    try:
        doc = _reject_floats(text)
    except json.JSONDecodeError as exc:
        raise MalformedScenario(f"invalid JSON: {exc}") from exc
    return parse_document(doc)


def load(path: Union[str, Path]) -> Scenario:
    return loads(Path(path).read_text())
