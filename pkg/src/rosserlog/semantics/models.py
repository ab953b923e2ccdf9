"""Models and the model checker.

Truth is computed as a bitmask of worlds per formula and memoized per
model, so checking many formulas against one model shares work.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from types import MappingProxyType
from typing import Iterable, Mapping

from ..syntax import Atom, Box, Falsum, Formula, Named, Neg, Or, RBox, dia, has_box, implies
from ..syntax.formula import AtomKey
from .frames import GRoFrame, InvalidFrameError, is_serial, relation, validate_gro_frame


class UnknownWorldError(KeyError):
    pass


class FragmentError(ValueError):
    pass


def _key(k) -> AtomKey:
    return Named(k) if isinstance(k, str) else k


def _freeze_valuation(worlds, valuation) -> Mapping:
    val = {int(w): frozenset(_key(k) for k in ks) for w, ks in valuation.items()}
    stray = set(val) - set(worlds)
    if stray:
        raise UnknownWorldError(f"valuation mentions unknown worlds {sorted(stray)}")
    return MappingProxyType({w: val.get(w, frozenset()) for w in worlds})


@dataclass(frozen=True, eq=False)
class GRoModel:
    frame: GRoFrame
    valuation: Mapping[int, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "valuation", _freeze_valuation(self.frame.worlds, self.valuation))
        object.__setattr__(self, "_cache", {})
        object.__setattr__(self, "_checked", False)

    def __eq__(self, other):
        if not isinstance(other, GRoModel):
            return NotImplemented
        return self.frame == other.frame and dict(self.valuation) == dict(other.valuation)

    def __hash__(self):
        return hash((self.frame, frozenset(self.valuation.items())))

    @property
    def worlds(self) -> tuple[int, ...]:
        return self.frame.worlds

    @cached_property
    def _full(self) -> int:
        return (1 << len(self.frame.worlds)) - 1

    @cached_property
    def _rel_masks(self) -> dict:
        return {}

    def _masks_for(self, payload: Formula) -> list[int]:
        key = payload if payload in self.frame.rosser_overrides else None
        hit = self._rel_masks.get(key)
        if hit is None:
            hit = self.frame.masks(self.frame.rosser(payload))
            self._rel_masks[key] = hit
        return hit

    def ensure_valid(self):
        if not self._checked:
            rep = validate_gro_frame(self.frame)
            if not rep.ok:
                raise InvalidFrameError(rep)
            object.__setattr__(self, "_checked", True)

    def extension(self, f: Formula) -> int:
        """Bitmask (over world indices) of the worlds where f holds."""
        self.ensure_valid()
        return self._ext(f)

    def _ext(self, f: Formula) -> int:
        cache = self._cache
        hit = cache.get(f)
        if hit is not None:
            return hit
        match f:
            case Falsum():
                out = 0
            case Atom(key):
                out = 0
                for i, w in enumerate(self.frame.worlds):
                    if key in self.valuation[w]:
                        out |= 1 << i
            case Neg(a):
                out = self._full & ~self._ext(a)
            case Or(a, b):
                out = self._ext(a) | self._ext(b)
            case Box(a):
                out = _box_mask(self.frame.box_masks, self._ext(a))
            case RBox(a):
                out = _box_mask(self._masks_for(a), self._ext(a))
            case _:
                raise TypeError(f"not a formula: {f!r}")
        cache[f] = out
        return out

    def worlds_where(self, f: Formula) -> list[int]:
        e = self.extension(f)
        return [w for i, w in enumerate(self.frame.worlds) if e >> i & 1]

    def valid(self, f: Formula) -> bool:
        return self.extension(f) == self._full


def _box_mask(succ: list[int], target: int) -> int:
    out = 0
    miss = ~target
    for i, s in enumerate(succ):
        if not s & miss:
            out |= 1 << i
    return out


def evaluate(m: GRoModel, w: int, f: Formula) -> bool:
    """Truth of f at world w."""
    idx = m.frame.index.get(w)
    if idx is None:
        raise UnknownWorldError(f"unknown world {w!r}")
    return bool(m.extension(f) >> idx & 1)


def model(worlds, box, default, overrides=None, valuation=None) -> GRoModel:
    """Convenience constructor from plain Python data."""
    return GRoModel(GRoFrame(tuple(worlds), relation(box), relation(default), overrides or {}), valuation or {})


def add_root(m: GRoModel) -> GRoModel:
    """A fresh root seen by box and by every Rosser relation."""
    f = m.frame
    if not is_serial(f):
        raise ValueError("add_root needs a serial frame")
    r = max(f.worlds) + 1
    spokes = frozenset((r, x) for x in f.worlds)
    frame = GRoFrame(
        f.worlds + (r,),
        f.box | spokes,
        f.rosser_default | spokes,
        {k: rel | spokes for k, rel in f.rosser_overrides.items()},
    )
    return GRoModel(frame, dict(m.valuation))


# --- N-models: Rosser relations only ----------------------------------------

@dataclass(frozen=True, eq=False)
class NModel:
    worlds: tuple[int, ...]
    rosser_default: frozenset
    rosser_overrides: Mapping[Formula, frozenset] = field(default_factory=dict)
    valuation: Mapping[int, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        if not self.worlds:
            raise ValueError("an N-model needs at least one world")
        object.__setattr__(self, "worlds", tuple(sorted(set(self.worlds))))
        object.__setattr__(self, "rosser_default", relation(self.rosser_default))
        object.__setattr__(self, "rosser_overrides",
                           MappingProxyType({k: relation(v) for k, v in self.rosser_overrides.items()}))
        object.__setattr__(self, "valuation", _freeze_valuation(self.worlds, self.valuation))

    def rosser(self, payload: Formula) -> frozenset:
        return self.rosser_overrides.get(payload, self.rosser_default)


def eval_n(m: NModel, w: int, f: Formula) -> bool:
    if w not in m.valuation:
        raise UnknownWorldError(f"unknown world {w!r}")
    if has_box(f):
        raise FragmentError("N-models interpret only the Rosser box")
    return _eval_n(m, w, f)


def _eval_n(m: NModel, w: int, f: Formula) -> bool:
    match f:
        case Falsum():
            return False
        case Atom(key):
            return key in m.valuation[w]
        case Neg(a):
            return not _eval_n(m, w, a)
        case Or(a, b):
            return _eval_n(m, w, a) or _eval_n(m, w, b)
        case RBox(a):
            return all(_eval_n(m, y, a) for x, y in m.rosser(a) if x == w)
    raise TypeError(f"not a formula: {f!r}")


# --- GR- models: Rosser boxes read off as atoms ------------------------------

@dataclass(frozen=True, eq=False)
class GRMinusModel:
    worlds: tuple[int, ...]
    box: frozenset
    root: int
    rosser_atoms: Mapping[int, frozenset] = field(default_factory=dict)
    valuation: Mapping[int, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(sorted(set(self.worlds))))
        object.__setattr__(self, "box", relation(self.box))
        ra = {int(w): frozenset(v) for w, v in self.rosser_atoms.items()}
        object.__setattr__(self, "rosser_atoms", MappingProxyType({w: ra.get(w, frozenset()) for w in self.worlds}))
        object.__setattr__(self, "valuation", _freeze_valuation(self.worlds, self.valuation))


def eval_grminus(m: GRMinusModel, w: int, f: Formula) -> bool:
    if w not in m.valuation:
        raise UnknownWorldError(f"unknown world {w!r}")
    match f:
        case Falsum():
            return False
        case Atom(key):
            return key in m.valuation[w]
        case Neg(a):
            return not eval_grminus(m, w, a)
        case Or(a, b):
            return eval_grminus(m, w, a) or eval_grminus(m, w, b)
        case Box(a):
            return all(eval_grminus(m, y, a) for x, y in m.box if x == w)
        case RBox(_):
            return f in m.rosser_atoms[w]
    raise TypeError(f"not a formula: {f!r}")


def axiom_instances(letters: Iterable[Formula]) -> list[tuple[str, Formula]]:
    """Instances of the six GR- schemes with letters from the given set."""
    from ..syntax import BOT
    ls = sorted(set(letters), key=lambda g: (g.size, g.text))
    out = []
    for a, b in product(ls, ls):
        out.append(("K", implies(Box(implies(a, b)), implies(Box(a), Box(b)))))
    for a in ls:
        out.append(("Lob", implies(Box(implies(Box(a), a)), Box(a))))
        out.append(("RB->B", implies(RBox(a), Box(a))))
        out.append(("B->BRB", implies(Box(a), Box(RBox(a)))))
        out.append(("B->BbotRB", implies(Box(a), Or(Box(BOT), RBox(a)))))
        out.append(("DRB->D", implies(dia(RBox(a)), dia(a))))
    return out


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    checked: int
    failure: tuple | None = None  # (scheme, instance, world)


def validate_grminus_model(m: GRMinusModel, axioms_over: Iterable[Formula]) -> AxiomReport:
    loops = [p for p in m.box if p[0] == p[1]]
    if loops:
        return AxiomReport(False, 0, ("irreflexive", None, loops[0][0]))
    for a, b in m.box:
        for c, d in m.box:
            if b == c and (a, d) not in m.box:
                return AxiomReport(False, 0, ("transitive", None, a))
    if m.root not in m.worlds or any((m.root, w) not in m.box for w in m.worlds if w != m.root):
        return AxiomReport(False, 0, ("root", None, m.root))
    n = 0
    for name, inst in axiom_instances(axioms_over):
        for w in m.worlds:
            n += 1
            if not eval_grminus(m, w, inst):
                return AxiomReport(False, n, (name, inst, w))
    return AxiomReport(True, n)
