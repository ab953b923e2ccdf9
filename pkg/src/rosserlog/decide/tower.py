r"""The decision tower.

    GL       SAT-backed tableau (``gl.py``)
    GR-      GL on  /\ boxdot(Psi_D)  ->  A-dagger
    GR-circ  GR- on A-top, whose oracle is GR-circ itself on proper subformulas
    GR       GR-circ on []A
    N, NR    GR-circ and GR on Rosser-only input (conservativity)

Everything goes through one :class:`Decider`, whose cache is keyed by
(logic, formula) and shared by the recursive oracle calls.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Any

from ..semantics.certificate import Certificate, certify
from ..semantics.frames import GRoFrame, standard_relation
from ..semantics.models import FragmentError, GRoModel
from ..syntax import Box, Formula, Neg, has_box, has_rbox, top_translation
from ..syntax.translate import grminus_reduction, psi_payloads
from .gl import BudgetExhausted, GLProver, witness_model


class Logic(enum.Enum):
    GL = "gl"
    N = "n"
    NR = "nr"
    GRMinus = "grminus"
    GRCirc = "grcirc"
    GR = "gr"

    @classmethod
    def parse(cls, text: "str | Logic") -> "Logic":
        if isinstance(text, Logic):
            return text
        t = text.strip().lower()
        if t.endswith(("-", "⁻")):
            t = t[:-1] + "minus"
        t = t.replace("-", "").replace("_", "").replace("°", "o").replace("∘", "o")
        aliases = {"grm": "grminus", "gro": "grcirc", "grcircle": "grcirc", "grc": "grcirc"}
        t = aliases.get(t, t)
        for lg in cls:
            if lg.value == t:
                return lg
        raise ValueError(f"unknown logic {text!r}; expected one of {[lg.value for lg in cls]}")

    @property
    def label(self) -> str:
        return {"gl": "GL", "n": "N", "nr": "NR", "grminus": "GR-", "grcirc": "GRo", "gr": "GR"}[self.value]


class Verdict(enum.Enum):
    PROVABLE = "provable"
    UNPROVABLE = "unprovable"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True, eq=False)
class DecisionOutcome:
    logic: Logic
    formula: Formula
    verdict: Verdict
    certificate: Certificate | None = None
    trace: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    @property
    def provable(self) -> bool:
        return self.verdict is Verdict.PROVABLE

    @property
    def unprovable(self) -> bool:
        return self.verdict is Verdict.UNPROVABLE

    def same_verdict(self, other: "DecisionOutcome") -> bool:
        return self.verdict is other.verdict

    def to_json(self) -> dict[str, Any]:
        out = {"logic": self.logic.value, "formula": self.formula.text,
               "verdict": self.verdict.value, "stats": dict(self.stats)}
        if self.trace:
            out["trace"] = {k: (v.text if isinstance(v, Formula) else v) for k, v in self.trace.items()}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


class Decider:
    """A decision session: one GL prover and one outcome cache.

    ``psi_scope`` selects which Rosser payloads get a Psi conjunct in the
    GR- reduction ("all" or "outermost"); see ``syntax.translate``.
    ``budget`` caps fresh GL tableau nodes per top-level call.
    """

    def __init__(self, budget: int | None = None, psi_scope: str = "all", solver: str = "m22"):
        self.prover = GLProver(solver)
        self.psi_scope = psi_scope
        self.budget = budget
        self._cache: dict[tuple[Logic, Formula], DecisionOutcome] = {}
        self.cache_hits = 0
        self.oracle_calls = 0
        self._depth = 0

    # -- public surface --------------------------------------------------

    def decide(self, logic, f: Formula, budget: int | None = None) -> DecisionOutcome:
        logic = Logic.parse(logic)
        check_fragment(logic, f)
        limit = self.budget if budget is None else budget
        start = (self.cache_hits, self.oracle_calls, self.prover.nodes, self.prover.sat_calls, time.perf_counter())
        if self._depth == 0:
            self.prover.set_budget(limit)
        self._depth += 1
        try:
            out = self._route(logic, f)
        except BudgetExhausted as e:
            if self._depth > 1:
                raise
            out = DecisionOutcome(logic, f, Verdict.UNRESOLVED, trace={"reason": str(e)})
        finally:
            self._depth -= 1
            if self._depth == 0:
                self.prover.set_budget(None)
        stats = {
            "cache_hits": self.cache_hits - start[0],
            "oracle_calls": self.oracle_calls - start[1],
            "gl_nodes": self.prover.nodes - start[2],
            "sat_calls": self.prover.sat_calls - start[3],
            "seconds": round(time.perf_counter() - start[4], 6),
        }
        return DecisionOutcome(out.logic, out.formula, out.verdict, out.certificate, out.trace, stats)

    def provable(self, logic, f: Formula) -> bool:
        out = self.decide(logic, f)
        if out.verdict is Verdict.UNRESOLVED:
            raise BudgetExhausted(out.trace.get("reason", "budget exhausted"))
        return out.provable

    def gr_circ_oracle(self, d: Formula) -> bool:
        self.oracle_calls += 1
        return self._route(Logic.GRCirc, d).provable

    def gr_oracle(self, d: Formula) -> bool:
        self.oracle_calls += 1
        return self._route(Logic.GR, d).provable

    def top(self, f: Formula) -> Formula:
        return top_translation(f, self.gr_circ_oracle)

    def theta(self, f: Formula) -> Formula:
        from ..syntax import theta
        return theta(f, self.gr_oracle)

    def reduction(self, f: Formula) -> Formula:
        return grminus_reduction(f, self.psi_scope)

    def clear(self):
        self._cache.clear()

    # -- routing -----------------------------------------------------------

    def _route(self, logic: Logic, f: Formula) -> DecisionOutcome:
        key = (logic, f)
        hit = self._cache.get(key)
        if hit is not None:
            self.cache_hits += 1
            return hit
        if logic is Logic.GL:
            out = self._gl(f)
        elif logic is Logic.GRMinus:
            g = self.reduction(f)
            base = self._route(Logic.GL, g)
            trace = {"gl_formula": g, "payloads": [d.text for d in psi_payloads(f, self.psi_scope)]}
            out = DecisionOutcome(logic, f, base.verdict, base.certificate, trace)
        elif logic in (Logic.GRCirc, Logic.N):
            t = self.top(f)
            base = self._route(Logic.GRMinus, t)
            trace = {"top": t, **base.trace}
            out = DecisionOutcome(logic, f, base.verdict, base.certificate, trace)
        elif logic in (Logic.GR, Logic.NR):
            base = self._route(Logic.GRCirc, Box(f))
            trace = {"boxed": Box(f), **base.trace}
            out = DecisionOutcome(logic, f, base.verdict, base.certificate, trace)
        else:
            raise ValueError(logic)
        self._cache[key] = out
        return out

    def _gl(self, f: Formula) -> DecisionOutcome:
        w = self.prover.countermodel(f)
        if w is None:
            return DecisionOutcome(Logic.GL, f, Verdict.PROVABLE, None, {"engine": "gl-tableau"})
        return DecisionOutcome(Logic.GL, f, Verdict.UNPROVABLE, gl_certificate(f, w), {"engine": "gl-tableau"})


def gl_certificate(f: Formula, w) -> Certificate:
    worlds, box, valuation = witness_model(w)
    frame = GRoFrame(worlds, box, standard_relation(worlds, box))
    return certify(GRoModel(frame, valuation), 0, f, "gl")


def check_fragment(logic: Logic, f: Formula):
    if logic is Logic.GL and has_rbox(f):
        raise FragmentError("GL input must not contain the Rosser box [R]")
    if logic in (Logic.N, Logic.NR) and has_box(f):
        raise FragmentError(f"{logic.label} input must not contain the box []")


_default: Decider | None = None


def default_decider() -> Decider:
    global _default
    if _default is None:
        _default = Decider()
    return _default


def decide(logic, f: Formula) -> DecisionOutcome:
    return default_decider().decide(logic, f)


def decide_gl(f: Formula) -> DecisionOutcome:
    return decide(Logic.GL, f)


def decide_gr_minus(f: Formula) -> DecisionOutcome:
    return decide(Logic.GRMinus, f)


def decide_gr_circ(f: Formula) -> DecisionOutcome:
    return decide(Logic.GRCirc, f)


def decide_gr(f: Formula) -> DecisionOutcome:
    return decide(Logic.GR, f)


def decide_n(f: Formula) -> DecisionOutcome:
    return decide(Logic.N, f)


def decide_nr(f: Formula) -> DecisionOutcome:
    return decide(Logic.NR, f)
