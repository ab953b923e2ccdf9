"""Finite countermodel search for GR-circ and GR.

For a world count n the whole question "is there a valid n-world frame and
valuation refuting A?" is one SAT instance:

* box[i][j] only for i < j (worlds are numbered in a topological order of
  the strict order, which loses nothing and breaks symmetry), closed under
  transitivity;
* one Rosser relation per payload D of an [R]D in S(A), constrained by the
  four interaction conditions; every other payload shares a default that is
  filled in afterwards and is irrelevant to A's truth value;
* truth variables per subformula per world, tied to the relations;
* some world falsifies A.

For GR we additionally ask for a root (world 0 sees every other world) and
at least two worlds, which makes the frame non-trivial and hence serial.

World counts are tried in increasing order; within the first satisfiable
count the number of relation pairs is minimized by iterated cardinality
bounds, so certificates are small and reproducible.  Every model found is
re-verified by the semantics module before it is returned.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from pysat.card import CardEnc, EncType
from pysat.solvers import Solver

from ..semantics.certificate import Certificate, certify
from ..semantics.frames import GRoFrame, standard_relation
from ..semantics.models import GRoModel
from ..syntax import Atom, Box, Falsum, Formula, Neg, Or, RBox, phi_closure, sort_formulas, subformulas


@dataclass(frozen=True)
class Unresolved:
    """The search bound was reached without a verdict."""
    formula: Formula
    logic: str
    reason: str
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"formula": self.formula.text, "logic": self.logic, "verdict": "unresolved",
                "reason": self.reason, "stats": self.stats}


def theoretical_bound(f: Formula) -> dict:
    """Size data for the chain construction behind the finite frame property.

    Worlds of that construction are chains of at most b+1 subsets of
    Phi(~A), where b counts the boxed formulas of Phi(~A).
    """
    phi = phi_closure(Neg(f))
    m = len(phi)
    b = sum(1 for g in phi if isinstance(g, Box))
    exponent = m * (b + 1)
    return {"phi_size": m, "phi_boxes": b, "max_chain_length": b + 1,
            "log2_world_bound": exponent + math.log2(b + 1)}


class _Encoding:
    def __init__(self, f: Formula, n: int, nontrivial: bool):
        self.n = n
        self.f = f
        self.top = 0
        self.clauses: list[list[int]] = []
        self.false = self._new()
        self.clauses.append([-self.false])
        W = range(n)
        self.b = {}
        for i in W:
            for j in W:
                self.b[i, j] = self._new() if i < j else self.false
        for i, j, k in product(W, W, W):
            if i < j < k:
                self.clauses.append([-self.b[i, j], -self.b[j, k], self.b[i, k]])
        self.keys = sort_formulas({g.child for g in subformulas(f) if isinstance(g, RBox)})
        self.r = {}
        for key in self.keys:
            r = {(i, j): self._new() for i in W for j in W}
            self.r[key] = r
            self._rosser_conditions(r)
            if nontrivial:
                for i in W:
                    self.clauses.append([r[i, j] for j in W])
        if nontrivial:
            for j in range(1, n):
                self.clauses.append([self.b[0, j]])
        self.t: dict[Formula, list[int]] = {}
        self.atoms: dict = {}
        for g in sort_formulas(subformulas(f)):
            self._truth(g)
        self.clauses.append([-self.t[f][w] for w in W])
        self.cost_lits = [v for (i, j), v in sorted(self.b.items()) if i < j]
        for key in self.keys:
            self.cost_lits.extend(v for _, v in sorted(self.r[key].items()))

    def _new(self) -> int:
        self.top += 1
        return self.top

    def _rosser_conditions(self, r):
        b, W, cl = self.b, range(self.n), self.clauses
        for x, y in product(W, W):
            if x < y:
                cl.append([-b[x, y], r[x, y]])                      # (i)
            for z in W:
                if x < y:
                    cl.append([-b[x, y], -r[y, z], b[x, z]])        # (ii)
                if x < z:
                    cl.append([-r[x, y], -b[x, z], b[x, y]])        # (iii)
        for x, y in product(W, W):
            if x < y:                                               # (iv)
                aux = []
                for z in W:
                    if x < z:
                        a = self._new()
                        cl.append([-a, r[y, z]])
                        cl.append([-a, b[x, z]])
                        aux.append(a)
                cl.append([-b[x, y]] + aux)

    def _modal(self, rel, child: list[int]) -> list[int]:
        out = []
        W = range(self.n)
        for w in W:
            t = self._new()
            witnesses = []
            for v in W:
                e = rel(w, v)
                if e == self.false:
                    continue
                self.clauses.append([-t, -e, child[v]])
                c = self._new()
                self.clauses.append([-c, e])
                self.clauses.append([-c, -child[v]])
                witnesses.append(c)
            self.clauses.append([t] + witnesses)
            out.append(t)
        return out

    def _truth(self, g: Formula) -> list[int]:
        hit = self.t.get(g)
        if hit is not None:
            return hit
        W = range(self.n)
        match g:
            case Falsum():
                out = [self.false] * self.n
            case Atom(key):
                out = [self._new() for _ in W]
                self.atoms[key] = out
            case Neg(a):
                out = [-x for x in self._truth(a)]
            case Or(a, c):
                ta, tc = self._truth(a), self._truth(c)
                out = []
                for w in W:
                    v = self._new()
                    self.clauses.extend(([-v, ta[w], tc[w]], [v, -ta[w]], [v, -tc[w]]))
                    out.append(v)
            case Box(a):
                out = self._modal(lambda w, v: self.b[w, v], self._truth(a))
            case RBox(a):
                r = self.r[a]
                out = self._modal(lambda w, v: r[w, v], self._truth(a))
        self.t[g] = out
        return out

    def decode(self, model: list[int], logic: str) -> tuple[GRoModel, int]:
        val = {abs(x): x > 0 for x in model}

        def on(v: int) -> bool:
            return val.get(v, False) if v > 0 else not val.get(-v, False)
        W = tuple(range(self.n))
        box = frozenset((i, j) for (i, j), v in self.b.items() if on(v))
        overrides = {k: frozenset(p for p, v in r.items() if on(v)) for k, r in self.r.items()}
        default = standard_relation(W, box, only_with_predecessors=(logic != "gr"))
        valuation = {w: {key for key, vs in self.atoms.items() if on(vs[w])} for w in W}
        m = GRoModel(GRoFrame(W, box, default, overrides), valuation)
        focus = next(w for w in W if not on(self.t[self.f][w]))
        return m, focus


def search_countermodel(f: Formula, logic: str = "grcirc", max_worlds: int = 8, min_worlds: int = 1,
                        minimize: bool = True, solver: str = "m22") -> Certificate | Unresolved:
    """Smallest-world-count verified countermodel, or Unresolved past max_worlds.

    This does not consult the decision procedure; callers that need the
    precondition checked use ``gro_countermodel`` / ``gr_countermodel``.
    """
    if logic not in ("grcirc", "gr"):
        raise ValueError("search_countermodel handles grcirc and gr")
    nontrivial = logic == "gr"
    start = max(min_worlds, 2 if nontrivial else 1)
    tried = []
    for n in range(start, max_worlds + 1):
        enc = _Encoding(f, n, nontrivial)
        with Solver(name=solver, bootstrap_with=enc.clauses) as s:
            # prefer a refutation at the root when one exists at this size
            root = -enc.t[f][0]
            if s.solve(assumptions=[root]):
                s.add_clause([root])
            elif not s.solve():
                tried.append(n)
                continue
            model = s.get_model()
            if minimize:
                model = _minimize(s, enc, model)
        m, focus = enc.decode(model, logic)
        meta = {"worlds_tried": tried + [n], "theoretical_bound": theoretical_bound(f)}
        return certify(m, focus, f, logic, meta)
    return Unresolved(f, logic, f"no countermodel with at most {max_worlds} worlds",
                      {"worlds_tried": tried, "theoretical_bound": theoretical_bound(f)})


def _minimize(s: Solver, enc: _Encoding, model: list[int]) -> list[int]:
    lits = enc.cost_lits
    if not lits:
        return model
    top = enc.top
    val = {abs(x): x > 0 for x in model}
    cost = sum(1 for v in lits if val.get(v, False))
    while cost > 0:
        card = CardEnc.atmost(lits=lits, bound=cost - 1, top_id=top, encoding=EncType.seqcounter)
        top = max(top, card.nv)
        for c in card.clauses:
            s.add_clause(c)
        if not s.solve():
            break
        model = s.get_model()
        val = {abs(x): x > 0 for x in model}
        cost = sum(1 for v in lits if val.get(v, False))
    return model
