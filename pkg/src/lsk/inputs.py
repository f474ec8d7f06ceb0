"""Input descriptors: named families, inline JSON and JSON files.

JSON schema (knot or two-component link):

    {"type": "knot" | "link2",
     "alexander": "<polynomial text>" | [[coeff, e1_doubled, (e2_doubled)], ...],
     "h_table": {"radius": R, "values": [...], "kind": "H" | "h"},
     "components": {"1": <knot descriptor>, "2": <knot descriptor>}}

Exactly one of "alexander" / "h_table". For links, "alexander" is the
normalized polynomial (integer exponents) or the symmetric one with
half-integer exponents, which is normalized here. Link tables are given in
figure orientation (first row s2 = R). A knot descriptor is either a family name
string or an object with "alexander" or "h_table".
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import InvalidInput
from .h_engine import (
    KnotHFunction,
    LinkHFunction2,
    h_from_alexander_knot,
    h_from_alexander_link,
    knot_from_table,
    link_from_table,
    unknot,
)
from .poly import (
    LaurentPoly,
    parse_poly,
    tilde_normalize,
    torus_knot_alexander,
    unlink_tilde,
    whitehead_tilde,
)

FAMILIES = ("unknot", "torus p q", "whitehead", "unlink2")


def family(name: str) -> KnotHFunction | LinkHFunction2:
    words = name.strip().lower().split()
    if words == ["unknot"]:
        return unknot()
    if words == ["whitehead"]:
        return h_from_alexander_link(whitehead_tilde())
    if words == ["unlink2"]:
        return h_from_alexander_link(unlink_tilde())
    if len(words) == 3 and words[0] == "torus":
        try:
            p, q = int(words[1]), int(words[2])
        except ValueError:
            raise InvalidInput(f"bad torus parameters in {name!r}") from None
        return h_from_alexander_knot(torus_knot_alexander(p, q))
    raise InvalidInput(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


def _poly(data, nvars: int) -> LaurentPoly:
    if isinstance(data, str):
        return parse_poly(data, nvars)
    return LaurentPoly.from_json(data, nvars)


def _knot(desc) -> KnotHFunction:
    if isinstance(desc, str):
        K = family(desc)
        if not isinstance(K, KnotHFunction):
            raise InvalidInput(f"{desc!r} is not a knot")
        return K
    obj = load_object(desc, default_type="knot")
    if not isinstance(obj, KnotHFunction):
        raise InvalidInput("component descriptor must describe a knot")
    return obj


def load_object(data: dict, default_type: str | None = None):
    if not isinstance(data, dict):
        raise InvalidInput("input JSON must be an object")
    kind = data.get("type", default_type)
    if kind not in ("knot", "link2"):
        raise InvalidInput('"type" must be "knot" or "link2"')
    if ("alexander" in data) == ("h_table" in data):
        raise InvalidInput('give exactly one of "alexander" and "h_table"')
    if kind == "knot":
        if "alexander" in data:
            return h_from_alexander_knot(_poly(data["alexander"], 1))
        table = data["h_table"]
        return knot_from_table(table["values"], int(table["radius"]), table.get("kind", "H"))

    comps = data.get("components", {})
    c1 = _knot(comps["1"]) if "1" in comps else None
    c2 = _knot(comps["2"]) if "2" in comps else None
    if "alexander" in data:
        delta = _poly(data["alexander"], 2)
        if not delta.has_integral_exponents():
            delta = tilde_normalize(delta, 2)
        return h_from_alexander_link(delta, c1 or unknot(), c2 or unknot())
    table = data["h_table"]
    try:
        return link_from_table(table["values"], int(table["radius"]), table.get("kind", "H"), c1, c2)
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"bad h_table: {exc}") from None


def load(family_name: str | None = None, inline: str | None = None, path: str | None = None):
    given = [x is not None for x in (family_name, inline, path)]
    if sum(given) != 1:
        raise ValueError("exactly one input source is required")
    if family_name is not None:
        return family(family_name)
    try:
        text = inline if inline is not None else Path(path).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read input: {exc}") from None
    try:
        return load_object(data)
    except KeyError as exc:
        raise InvalidInput(f"missing field {exc}") from None
