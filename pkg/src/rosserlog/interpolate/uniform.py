r"""Bounded uniform interpolation.

The GL engine computes, for a formula A and a set P of variables to forget,
the conjunction of every P-free GL-consequence of A within a modal depth
and size bound.  One sweep over the enumerated formulas B (in canonical
order) suffices: B is added as a conjunct exactly when A proves B and the
conjunction so far does not.  Redundant conjuncts are pruned at the end.
Nothing beyond the bound is claimed; the report carries the bound.

The Rosser pipelines reduce to the GL engine:

    GR-      Q = P + {q_D : D mentions P};  run GL on /\ boxdot(Psi_D) & A-dagger,
             forgetting Q, then substitute [R]D for q_D
    GR-circ  the GR- pipeline on A-top
    GR       the GR-circ pipeline on Theta_A & A

and each result is re-verified against the logic's own decision procedure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from ..decide import Decider, Logic, default_decider
from ..syntax import (
    BOT, TOP, Atom, Formula, Indexed, Named, Or, RBox, conj, has_rbox, implies, modal_depth,
    psi_payloads, q, sort_formulas, substitute, variables,
)
from ..syntax.translate import dagger, psi_context
from .enumeration import Enumerator, _disjuncts
from .pool import ModelPool, pool_for

DEFAULT_SIZE_CAP = 9


def _forget_keys(p: Iterable) -> frozenset:
    out = set()
    for x in p:
        if isinstance(x, str):
            out.add(Named(x))
        elif isinstance(x, Atom):
            out.add(x.key)
        else:
            out.add(x)
    return frozenset(out)


def _key_text(k) -> str:
    return k.name if isinstance(k, Named) else "#{" + k.payload.text + "}"


@dataclass
class Evidence:
    """Bounded clause-3 evidence plus the exact clauses 1 and 2."""
    logic: Logic
    depth: int
    size_cap: int
    clause1: bool
    clause2: bool
    tested: int = 0
    consequences: int = 0
    failures: list = field(default_factory=list)

    @property
    def clause3(self) -> bool:
        return not self.failures

    @property
    def ok(self) -> bool:
        return self.clause1 and self.clause2 and self.clause3

    @property
    def counterexample(self) -> Formula | None:
        return self.failures[0] if self.failures else None

    def to_json(self) -> dict[str, Any]:
        return {"logic": self.logic.value, "depth_bound": self.depth, "size_cap": self.size_cap,
                "clause1_scope": self.clause1, "clause2_implied": self.clause2,
                "clause3_tested": self.tested, "clause3_consequences": self.consequences,
                "clause3_failures": [b.text for b in self.failures],
                "clause3_scope": f"P-free formulas of modal depth <= {self.depth} and construction size <= {self.size_cap}"}


@dataclass
class UniformReport:
    logic: Logic
    formula: Formula
    forget: frozenset
    candidate: Formula
    obligations: list
    evidence: Evidence | None
    trace: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    @property
    def exact_ok(self) -> bool:
        return all(ok for _, ok in self.obligations)

    @property
    def ok(self) -> bool:
        return self.exact_ok and (self.evidence is None or self.evidence.ok)

    def to_json(self) -> dict[str, Any]:
        tr = {}
        for k, v in self.trace.items():
            if isinstance(v, Formula):
                tr[k] = v.text
            elif isinstance(v, (list, tuple, set, frozenset)):
                tr[k] = sorted(_key_text(x) if isinstance(x, (Named, Indexed)) else
                               (x.text if isinstance(x, Formula) else str(x)) for x in v)
            elif isinstance(v, dict):
                tr[k] = {(_key_text(a) if isinstance(a, (Named, Indexed)) else str(a)):
                         (b.text if isinstance(b, Formula) else b) for a, b in v.items()}
            else:
                tr[k] = v
        return {"logic": self.logic.value, "formula": self.formula.text,
                "forget": sorted(_key_text(k) for k in self.forget), "candidate": self.candidate.text,
                "obligations": [{"description": d, "passed": ok} for d, ok in self.obligations],
                "evidence": self.evidence.to_json() if self.evidence else None,
                "trace": tr, "stats": self.stats}


def _language(logic: Logic) -> dict:
    return {"box": True, "rbox": logic is not Logic.GL}


def _signature(a: Formula, forget: frozenset) -> list[Formula]:
    keys = sorted(variables(a) - forget, key=_key_text)
    return [BOT] + [Atom(k) for k in keys]


class _Prover:
    """Decider plus a model pool; only the decider ever says 'provable'."""

    def __init__(self, logic: Logic, decider: Decider, pool: ModelPool):
        self.logic = logic
        self.decider = decider
        self.pool = pool
        self.calls = 0

    def entails(self, premise: Formula, conclusion: Formula) -> bool:
        if self.pool.refutes(premise, conclusion):
            return False
        self.calls += 1
        out = self.decider.decide(self.logic, implies(premise, conclusion))
        if out.unprovable and self.logic is Logic.GL and out.certificate is not None:
            self.pool.add(out.certificate.model)
        if not (out.provable or out.unprovable):
            raise RuntimeError(f"decision unresolved for {implies(premise, conclusion).text}")
        return out.provable


def _sweep(a: Formula, forget: frozenset, logic: Logic, depth: int, size_cap: int, prover: _Prover,
           candidate: Formula | None = None):
    """Shared loop for construction (candidate None) and verification.

    Yields nothing; returns (conjuncts, tested, consequences, failures).
    """
    lang = _language(logic)
    parts: list[Formula] = []
    current = TOP if candidate is None else candidate
    implied: set[Formula] = set()
    tested = consequences = 0
    failures: list[Formula] = []
    for _, b in Enumerator(_signature(a, forget), size_cap, depth, **lang):
        tested += 1
        if isinstance(b, Or) and any(d in implied for d in _disjuncts(b)):
            implied.add(b)
            consequences += 1
            continue
        if not prover.entails(a, b):
            continue
        consequences += 1
        if current is not None and prover.entails(current, b):
            implied.add(b)
            continue
        if candidate is not None:
            failures.append(b)
            continue
        parts.append(b)
        implied.add(b)
        current = conj(*parts)
    return parts, tested, consequences, failures


def _prune(parts: list[Formula], prover: _Prover) -> list[Formula]:
    keep = list(parts)
    for i in range(len(keep) - 1, -1, -1):
        rest = keep[:i] + keep[i + 1:]
        if rest and prover.entails(conj(*rest), keep[i]):
            keep = rest
    return keep


def _default_depth(a: Formula, depth: int | None) -> int:
    return modal_depth(a) if depth is None else depth


def verify_uniform(candidate: Formula, a: Formula, forget, logic, depth: int | None = None,
                   size_cap: int = DEFAULT_SIZE_CAP, decider: Decider | None = None,
                   pool: ModelPool | None = None) -> Evidence:
    """Check clauses 1-2 exactly and clause 3 over the bounded enumeration."""
    logic = Logic.parse(logic)
    fk = _forget_keys(forget)
    d = _default_depth(a, depth)
    dec = decider or default_decider()
    prover = _Prover(logic, dec, pool or pool_for(logic.value, [a, candidate], seed=1))
    clause1 = variables(candidate) <= (variables(a) - fk)
    clause2 = dec.provable(logic, implies(a, candidate))
    _, tested, cons, failures = _sweep(a, fk, logic, d, size_cap, prover, candidate)
    return Evidence(logic, d, size_cap, clause1, clause2, tested, cons, failures)


def gl_uniform(a: Formula, forget, depth: int | None = None, size_cap: int = DEFAULT_SIZE_CAP,
               decider: Decider | None = None, verify: bool = True) -> UniformReport:
    if has_rbox(a):
        from ..semantics.models import FragmentError
        raise FragmentError("gl_uniform takes formulas without the Rosser box")
    fk = _forget_keys(forget)
    d = _default_depth(a, depth)
    dec = decider or default_decider()
    prover = _Prover(Logic.GL, dec, pool_for("gl", [a]))
    parts, tested, cons, _ = _sweep(a, fk, Logic.GL, d, size_cap, prover)
    parts = _prune(parts, prover)
    cand = conj(*parts)
    obligations = [
        ("v(C) within v(A) minus P", variables(cand) <= variables(a) - fk),
        ("GL |- A -> C", dec.provable(Logic.GL, implies(a, cand))),
    ]
    ev = None
    if verify:
        ev = verify_uniform(cand, a, fk, Logic.GL, d, size_cap, dec, prover.pool)
    stats = {"construction_tested": tested, "construction_consequences": cons,
             "decider_calls": prover.calls, "conjuncts": len(parts)}
    return UniformReport(Logic.GL, a, fk, cand, obligations, ev, {"conjuncts": parts}, stats)


def grminus_uniform(a: Formula, forget, depth: int | None = None, size_cap: int = DEFAULT_SIZE_CAP,
                    decider: Decider | None = None, verify: bool = True, *, _logic: Logic = Logic.GRMinus,
                    _original: Formula | None = None, _trace: dict | None = None) -> UniformReport:
    fk = _forget_keys(forget)
    d = _default_depth(a if _original is None else _original, depth)
    dec = decider or default_decider()
    payloads = psi_payloads(a, dec.psi_scope)
    qset = set(fk) | {Indexed(p) for p in payloads if variables(p) & fk}
    ctx = psi_context(a, dec.psi_scope)
    g = conj(ctx, dagger(a)) if payloads else dagger(a)
    inner = gl_uniform(g, qset, d, size_cap, dec, verify=False)
    sigma = {Indexed(p): RBox(p) for p in payloads}
    cand = substitute(inner.candidate, sigma)
    target = a if _original is None else _original
    obligations = [
        ("v(C) within v(A) minus P", variables(cand) <= variables(target) - fk),
        (f"{_logic.label} |- A -> C", dec.provable(_logic, implies(target, cand))),
    ]
    ev = verify_uniform(cand, target, fk, _logic, d, size_cap, dec) if verify else None
    trace = dict(_trace or {})
    trace.update({"Q": sorted(qset, key=_key_text), "psi_conjunction": ctx, "gl_input": g,
                  "gl_candidate": inner.candidate, "sigma": sigma})
    stats = {"inner": inner.stats}
    return UniformReport(_logic, target, fk, cand, obligations, ev, trace, stats)


def grcirc_uniform(a: Formula, forget, depth: int | None = None, size_cap: int = DEFAULT_SIZE_CAP,
                   decider: Decider | None = None, verify: bool = True, *, _logic: Logic = Logic.GRCirc,
                   _original: Formula | None = None, _trace: dict | None = None) -> UniformReport:
    dec = decider or default_decider()
    t = dec.top(a)
    trace = dict(_trace or {})
    trace["A_top"] = t
    return grminus_uniform(t, forget, _default_depth(a if _original is None else _original, depth),
                           size_cap, dec, verify, _logic=_logic,
                           _original=a if _original is None else _original, _trace=trace)


def gr_uniform(a: Formula, forget, depth: int | None = None, size_cap: int = DEFAULT_SIZE_CAP,
               decider: Decider | None = None, verify: bool = True) -> UniformReport:
    dec = decider or default_decider()
    th = dec.theta(a)
    src = conj(th, a)
    return grcirc_uniform(src, forget, _default_depth(a, depth), size_cap, dec, verify,
                          _logic=Logic.GR, _original=a, _trace={"theta": th, "pipeline_input": src})


def uniform(logic, a: Formula, forget, depth: int | None = None, size_cap: int = DEFAULT_SIZE_CAP,
            decider: Decider | None = None, verify: bool = True) -> UniformReport:
    logic = Logic.parse(logic)
    fn = {Logic.GL: gl_uniform, Logic.GRMinus: grminus_uniform, Logic.GRCirc: grcirc_uniform,
          Logic.GR: gr_uniform}.get(logic)
    if fn is None:
        raise ValueError(f"uniform interpolation is implemented for gl, grminus, grcirc, gr; not {logic.value}")
    return fn(a, forget, depth, size_cap, decider, verify)
