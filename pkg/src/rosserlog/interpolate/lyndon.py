"""Lyndon and Craig interpolants by verified enumeration.

Candidates are enumerated in increasing size over the shared signature:
bot, the shared variables, the Rosser subformulas shared by A and B (as
leaves), closed under ~, | and [].  Each candidate is first filtered by the
syntactic scope conditions, then by a pool of small models, and only then
checked with the decision procedure on both implications.  The first
candidate that passes everything is returned.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..countermodel.search import Unresolved
from ..decide import Decider, Logic, default_decider
from ..syntax import (
    BOT, Atom, Formula, RBox, craig_ddag_holds, craig_scope_holds, ddag_holds,
    implies, lyndon_scope_holds, signed_subformulas, subformulas, tau,
)
from .enumeration import Enumerator
from .pool import pool_for

DEFAULT_BUDGET = 10_000
LOGICS = (Logic.GL, Logic.GRCirc, Logic.GR)


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Obligation:
    description: str
    verdict: str          # "provable" / "holds" on success
    passed: bool


@dataclass(frozen=True, eq=False)
class InterpolantReport:
    logic: Logic
    mode: str
    left: Formula
    right: Formula
    interpolant: Formula
    obligations: tuple[Obligation, ...]
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(o.passed for o in self.obligations)

    def to_json(self) -> dict[str, Any]:
        return {
            "logic": self.logic.value, "mode": self.mode,
            "A": self.left.text, "B": self.right.text, "interpolant": self.interpolant.text,
            "obligations": [{"description": o.description, "verdict": o.verdict, "passed": o.passed}
                            for o in self.obligations],
            "stats": dict(self.stats),
        }


def _leaves(a: Formula, b: Formula, mode: str) -> list[Formula]:
    if mode == "lyndon":
        ta, tb = tau(a), tau(b)
        shared = (ta & tb).unsigned()
        pa, na = signed_subformulas(a)
        pb, nb = signed_subformulas(b)
        rbs = {g for g in (pa & pb) | (na & nb) if isinstance(g, RBox)}
    else:
        from ..syntax import variables
        shared = variables(a) & variables(b)
        rbs = {g for g in subformulas(a) & subformulas(b) if isinstance(g, RBox)}
    return [BOT] + [Atom(k) for k in shared] + list(rbs)


def lyndon_interpolant(logic, a: Formula, b: Formula, budget: int = DEFAULT_BUDGET, mode: str = "lyndon",
                       decider: Decider | None = None, max_size: int = 25) -> InterpolantReport | Unresolved:
    logic = Logic.parse(logic)
    if logic not in LOGICS:
        raise ValueError(f"interpolation is implemented for {[lg.value for lg in LOGICS]}")
    if mode not in ("lyndon", "craig"):
        raise ValueError("mode is 'lyndon' or 'craig'")
    dec = decider or default_decider()
    if not dec.provable(logic, implies(a, b)):
        raise PreconditionError(f"{logic.label} does not prove {implies(a, b).text}")
    scope = lyndon_scope_holds if mode == "lyndon" else craig_scope_holds
    ddag = ddag_holds if mode == "lyndon" else craig_ddag_holds
    pool = pool_for(logic.value, [a, b])
    stats = {"enumerated": 0, "scope_rejected": 0, "pool_rejected": 0, "decider_calls": 0}
    for size, c in Enumerator(_leaves(a, b, mode), max_size):
        if stats["enumerated"] >= budget:
            break
        stats["enumerated"] += 1
        if not (scope(c, a, b) and ddag(c, a, b)):
            stats["scope_rejected"] += 1
            continue
        if pool.refutes(a, c) or pool.refutes(c, b):
            stats["pool_rejected"] += 1
            continue
        stats["decider_calls"] += 1
        left = dec.decide(logic, implies(a, c))
        if not left.provable:
            if logic is Logic.GL and left.certificate is not None:
                pool.add(left.certificate.model)
            continue
        stats["decider_calls"] += 1
        right = dec.decide(logic, implies(c, b))
        if not right.provable:
            if logic is Logic.GL and right.certificate is not None:
                pool.add(right.certificate.model)
            continue
        stats["construction_size"] = size
        obligations = (
            Obligation(f"{logic.label} |- A -> C", left.verdict.value, True),
            Obligation(f"{logic.label} |- C -> B", right.verdict.value, True),
            Obligation("tau-scope" if mode == "lyndon" else "variable scope", "holds", scope(c, a, b)),
            Obligation("ddag-scope" if mode == "lyndon" else "shared Rosser subformulas", "holds", ddag(c, a, b)),
        )
        return InterpolantReport(logic, mode, a, b, c, obligations, stats)
    return Unresolved(implies(a, b), logic.value,
                      f"no interpolant among the first {stats['enumerated']} candidates", stats)
