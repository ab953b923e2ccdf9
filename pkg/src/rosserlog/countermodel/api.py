"""Countermodel entry points that first confirm the formula is unprovable."""
from __future__ import annotations

from ..decide import Decider, Logic, default_decider
from ..semantics.certificate import Certificate
from ..syntax import Formula
from .search import Unresolved, search_countermodel

DEFAULT_MAX_WORLDS = 8


class PreconditionError(ValueError):
    pass


def _require_unprovable(logic: Logic, f: Formula, decider: Decider | None):
    out = (decider or default_decider()).decide(logic, f)
    if out.provable:
        raise PreconditionError(f"{f.text} is {logic.label}-provable; it has no countermodel")
    return out


def gl_countermodel(f: Formula, decider: Decider | None = None) -> Certificate:
    out = _require_unprovable(Logic.GL, f, decider)
    return out.certificate


def gro_countermodel(f: Formula, max_worlds: int = DEFAULT_MAX_WORLDS,
                     decider: Decider | None = None) -> Certificate | Unresolved:
    _require_unprovable(Logic.GRCirc, f, decider)
    return search_countermodel(f, "grcirc", max_worlds)


def gr_countermodel(f: Formula, max_worlds: int = DEFAULT_MAX_WORLDS,
                    decider: Decider | None = None) -> Certificate | Unresolved:
    _require_unprovable(Logic.GR, f, decider)
    return search_countermodel(f, "gr", max_worlds)
