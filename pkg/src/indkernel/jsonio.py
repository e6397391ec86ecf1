"""JSON instance formats for squares and families.

Square documents:

    {"kind": "square",
     "carriers": {"A": [...], "B": [...], "C": [...], "D": [...]},
     "maps": {"f": {b: a, ...}, "p": {c: a, ...},
              "g": {d: c, ...}, "q": {d: b, ...}}}

Surjection-family documents:

    {"kind": "surjection-family",
     "base": [...],
     "members": [{"domain": [...], "map": {y: x, ...}}, ...]}

Carrier-family documents (for the indexed refinement check):

    {"kind": "carrier-family", "carriers": [[...], [...], ...]}

Malformed documents raise SchemaError; name-level problems surface as
the usual carrier/map errors.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import SchemaError
from .finite import Carrier, FinMap
from .squares import Square, SurjectionFamily


def _require(data: dict, key: str, kind: type, where: str):
    if key not in data:
        raise SchemaError(f"{where}: missing {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise SchemaError(f"{where}: {key!r} must be a {kind.__name__}")
    return value


def _carrier(value, where: str) -> Carrier:
    if not isinstance(value, list) or not all(isinstance(n, str) for n in value):
        raise SchemaError(f"{where}: expected a list of element names")
    return Carrier(tuple(value))


def _finmap(value, dom: Carrier, cod: Carrier, where: str) -> FinMap:
    if not isinstance(value, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in value.items()
    ):
        raise SchemaError(f"{where}: expected an object of element -> element")
    return FinMap.from_mapping(dom, cod, value)


def square_from_json(data: dict) -> Square:
    carriers = _require(data, "carriers", dict, "square")
    maps = _require(data, "maps", dict, "square")
    corners = {}
    for corner in ("A", "B", "C", "D"):
        corners[corner] = _carrier(_require(carriers, corner, list, "square carriers"), f"carrier {corner}")
    legs = {}
    for name, (dom, cod) in {
        "f": ("B", "A"),
        "p": ("C", "A"),
        "g": ("D", "C"),
        "q": ("D", "B"),
    }.items():
        legs[name] = _finmap(
            _require(maps, name, dict, "square maps"),
            corners[dom],
            corners[cod],
            f"map {name}",
        )
    return Square(f=legs["f"], p=legs["p"], g=legs["g"], q=legs["q"])


def square_to_json(sq: Square) -> dict:
    return {
        "kind": "square",
        "carriers": {
            "A": list(sq.A.names),
            "B": list(sq.B.names),
            "C": list(sq.C.names),
            "D": list(sq.D.names),
        },
        "maps": {
            "f": sq.f.to_mapping(),
            "p": sq.p.to_mapping(),
            "g": sq.g.to_mapping(),
            "q": sq.q.to_mapping(),
        },
    }


def surjection_family_from_json(data: dict) -> SurjectionFamily:
    base = _carrier(_require(data, "base", list, "family"), "family base")
    members_data = _require(data, "members", list, "family")
    members = []
    for i, member in enumerate(members_data):
        if not isinstance(member, dict):
            raise SchemaError(f"family member {i}: expected an object")
        dom = _carrier(_require(member, "domain", list, f"family member {i}"), f"member {i} domain")
        members.append(_finmap(_require(member, "map", dict, f"family member {i}"), dom, base, f"member {i} map"))
    return SurjectionFamily(base, tuple(members))


def carrier_family_from_json(data: dict) -> list[Carrier]:
    carriers = _require(data, "carriers", list, "carrier family")
    return [_carrier(c, f"carrier {i}") for i, c in enumerate(carriers)]


def load_instance(path: str | Path):
    """Parse a JSON instance file into a Square, SurjectionFamily, or
    list of Carriers, according to its "kind"."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    kind = data.get("kind")
    if kind == "square":
        return square_from_json(data)
    if kind == "surjection-family":
        return surjection_family_from_json(data)
    if kind == "carrier-family":
        return carrier_family_from_json(data)
    raise SchemaError(f"{path}: unknown kind {kind!r}")
