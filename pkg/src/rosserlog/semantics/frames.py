"""Finite GR-circ frames and their validation.

A frame carries the strict order ``box`` and a family of Rosser relations
indexed by formulas.  Only finitely many payloads can matter for a given
query, so the family is stored as a default relation plus overrides keyed
structurally by formula.

The four interaction conditions checked for every Rosser relation R:

    (i)   box is contained in R
    (ii)  x box y and y R z imply x box z
    (iii) x R y and x box z imply x box y
    (iv)  x box y implies y R z and x box z for some z
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping

from ..syntax import Formula, sort_formulas

Pair = tuple[int, int]
Relation = frozenset


def relation(pairs: Iterable) -> frozenset:
    return frozenset((int(a), int(b)) for a, b in pairs)


@dataclass(frozen=True, eq=False)
class GRoFrame:
    worlds: tuple[int, ...]
    box: frozenset
    rosser_default: frozenset
    rosser_overrides: Mapping[Formula, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(sorted(set(self.worlds))))
        object.__setattr__(self, "box", relation(self.box))
        object.__setattr__(self, "rosser_default", relation(self.rosser_default))
        ov = {k: relation(v) for k, v in self.rosser_overrides.items()}
        object.__setattr__(self, "rosser_overrides", MappingProxyType(ov))

    def __eq__(self, other):
        if not isinstance(other, GRoFrame):
            return NotImplemented
        return (self.worlds == other.worlds and self.box == other.box
                and self.rosser_default == other.rosser_default
                and dict(self.rosser_overrides) == dict(other.rosser_overrides))

    def __hash__(self):
        return hash((self.worlds, self.box, self.rosser_default, frozenset(self.rosser_overrides.items())))

    def rosser(self, payload: Formula) -> frozenset:
        """The effective relation for the Rosser box with this payload."""
        return self.rosser_overrides.get(payload, self.rosser_default)

    def relations(self) -> list[tuple[Formula | None, frozenset]]:
        """The default (key None) followed by overrides in canonical order."""
        out: list[tuple[Formula | None, frozenset]] = [(None, self.rosser_default)]
        for k in sort_formulas(self.rosser_overrides):
            out.append((k, self.rosser_overrides[k]))
        return out

    def with_relations(self, default, overrides) -> "GRoFrame":
        return GRoFrame(self.worlds, self.box, default, overrides)

    @cached_property
    def index(self) -> dict[int, int]:
        return {w: i for i, w in enumerate(self.worlds)}

    def masks(self, rel: frozenset) -> list[int]:
        """Successor sets as bitmasks over world indices."""
        idx = self.index
        out = [0] * len(self.worlds)
        for a, b in rel:
            out[idx[a]] |= 1 << idx[b]
        return out

    @cached_property
    def box_masks(self) -> list[int]:
        return self.masks(self.box)

    @cached_property
    def maximal(self) -> tuple[int, ...]:
        has_succ = {a for a, _ in self.box}
        return tuple(w for w in self.worlds if w not in has_succ)

    def predecessors(self, w: int) -> frozenset:
        return frozenset(a for a, b in self.box if b == w)


@dataclass(frozen=True)
class Check:
    condition: str
    relation: str
    passed: bool
    witness: tuple | None = None

    def describe(self) -> str:
        status = "ok" if self.passed else f"FAIL at {self.witness}"
        return f"{self.condition} [{self.relation}]: {status}"


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"condition": c.condition, "relation": c.relation, "passed": c.passed,
                 "witness": list(c.witness) if c.witness is not None else None}
                for c in self.checks
            ],
        }


def _find_intransitive(rel: frozenset):
    succ: dict[int, set] = {}
    for a, b in rel:
        succ.setdefault(a, set()).add(b)
    for a, b in sorted(rel):
        for c in sorted(succ.get(b, ())):
            if (a, c) not in rel:
                return (a, b, c)
    return None


def _rosser_failures(worlds, box: frozenset, rel: frozenset) -> dict[str, tuple | None]:
    """First witness for each of (i)-(iv), or None when it holds."""
    bsucc = {w: {b for a, b in box if a == w} for w in worlds}
    rsucc = {w: {b for a, b in rel if a == w} for w in worlds}
    out: dict[str, tuple | None] = {"(i)": None, "(ii)": None, "(iii)": None, "(iv)": None}
    for x, y in sorted(box):
        if (x, y) not in rel:
            out["(i)"] = (x, y)
            break
    for x, y in sorted(box):
        bad = sorted(z for z in rsucc[y] if z not in bsucc[x])
        if bad:
            out["(ii)"] = (x, y, bad[0])
            break
    for x, y in sorted(rel):
        if y not in bsucc[x] and bsucc[x]:
            out["(iii)"] = (x, y, min(bsucc[x]))
            break
    for x, y in sorted(box):
        if not (rsucc[y] & bsucc[x]):
            out["(iv)"] = (x, y)
            break
    return out


def validate_gro_frame(f: GRoFrame) -> ValidationReport:
    checks = []
    ws = set(f.worlds)
    checks.append(Check("nonempty", "worlds", bool(ws), None if ws else ()))
    rels = [("box", f.box)] + [("default" if k is None else f"override {k.text}", r) for k, r in f.relations()]
    for name, rel in rels:
        stray = sorted(p for p in rel if p[0] not in ws or p[1] not in ws)
        checks.append(Check("carrier", name, not stray, stray[0] if stray else None))
    if not all(c.passed for c in checks):
        return ValidationReport(tuple(checks))
    loops = sorted((a, b) for a, b in f.box if a == b)
    checks.append(Check("irreflexive", "box", not loops, loops[0] if loops else None))
    w = _find_intransitive(f.box)
    checks.append(Check("transitive", "box", w is None, w))
    for name, rel in rels[1:]:
        for cond, wit in _rosser_failures(f.worlds, f.box, rel).items():
            checks.append(Check(cond, name, wit is None, wit))
    return ValidationReport(tuple(checks))


def _serial(worlds, rel: frozenset) -> bool:
    has = {a for a, _ in rel}
    return all(w in has for w in worlds)


def is_serial(f: GRoFrame) -> bool:
    return all(_serial(f.worlds, r) for _, r in f.relations())


def is_nontrivial(f: GRoFrame) -> bool:
    if len(f.worlds) < 2:
        return False
    return root_of(f) is not None


def root_of(f: GRoFrame) -> int | None:
    for r in f.worlds:
        if all((r, w) in f.box for w in f.worlds if w != r):
            return r
    return None


def serial_completion(f: GRoFrame) -> GRoFrame:
    rep = validate_gro_frame(f)
    if not rep.ok:
        raise InvalidFrameError(rep)
    loops = {(y, y) for y in f.maximal}
    return f.with_relations(f.rosser_default | loops, {k: r | loops for k, r in f.rosser_overrides.items()})


def standard_relation(f_or_worlds, box: frozenset | None = None, *, only_with_predecessors=False) -> frozenset:
    """box plus loops at maximal worlds; always a valid Rosser relation."""
    if isinstance(f_or_worlds, GRoFrame):
        worlds, box = f_or_worlds.worlds, f_or_worlds.box
    else:
        worlds = f_or_worlds
    has_succ = {a for a, _ in box}
    has_pred = {b for _, b in box}
    loops = {(y, y) for y in worlds if y not in has_succ and (y in has_pred or not only_with_predecessors)}
    return frozenset(box) | loops


class InvalidFrameError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        c = report.first_failure
        super().__init__(f"frame fails validation: {c.describe() if c else 'unknown'}")
