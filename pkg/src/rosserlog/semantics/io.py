"""JSON form of models.

World names in files may be arbitrary strings or integers; they are mapped
to dense integers on load, in order of first appearance under "worlds".
"""
from __future__ import annotations

import json
from typing import Any

from ..syntax import Formula, Indexed, Named, parse, sort_formulas
from .frames import GRoFrame, InvalidFrameError, validate_gro_frame
from .models import GRoModel


class ModelFormatError(ValueError):
    pass


def _pairs(rel) -> list[list[int]]:
    return [list(p) for p in sorted(rel)]


def _key_text(k) -> str:
    return k.name if isinstance(k, Named) else "#{" + k.payload.text + "}"


def model_to_json(m: GRoModel) -> dict[str, Any]:
    f = m.frame
    return {
        "worlds": list(f.worlds),
        "box": _pairs(f.box),
        "rosser": {
            "default": _pairs(f.rosser_default),
            "overrides": [{"formula": k.text, "rel": _pairs(f.rosser_overrides[k])}
                          for k in sort_formulas(f.rosser_overrides)],
        },
        "valuation": {str(w): sorted(_key_text(k) for k in m.valuation[w]) for w in f.worlds},
    }


def _atom_key(text: str):
    f = parse(text)
    from ..syntax import Atom
    if not isinstance(f, Atom):
        raise ModelFormatError(f"valuation entry {text!r} is not an atom")
    return f.key


def model_from_json(obj: dict[str, Any] | str, *, validate: bool = True) -> GRoModel:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        names = list(obj["worlds"])
    except (KeyError, TypeError) as e:
        raise ModelFormatError("model needs a 'worlds' list") from e
    ids: dict[str, int] = {}
    for w in names:
        ids.setdefault(str(w), len(ids))

    def wid(w) -> int:
        try:
            return ids[str(w)]
        except KeyError:
            raise ModelFormatError(f"unknown world {w!r}") from None

    def rel(pairs) -> frozenset:
        out = set()
        for p in pairs or ():
            if len(p) != 2:
                raise ModelFormatError(f"relation entries are pairs, got {p!r}")
            out.add((wid(p[0]), wid(p[1])))
        return frozenset(out)

    rosser = obj.get("rosser", {}) or {}
    overrides: dict[Formula, frozenset] = {}
    for entry in rosser.get("overrides", []) or []:
        overrides[parse(entry["formula"])] = rel(entry.get("rel"))
    frame = GRoFrame(tuple(ids.values()), rel(obj.get("box")), rel(rosser.get("default")), overrides)
    if validate:
        rep = validate_gro_frame(frame)
        if not rep.ok:
            raise InvalidFrameError(rep)
    val = {wid(w): {_atom_key(a) for a in atoms} for w, atoms in (obj.get("valuation") or {}).items()}
    return GRoModel(frame, val)


def world_id(obj: dict[str, Any], name) -> int:
    """Dense id of a world as named in a model file."""
    for i, w in enumerate(obj["worlds"]):
        if str(w) == str(name):
            return i
    raise ModelFormatError(f"unknown world {name!r}")
