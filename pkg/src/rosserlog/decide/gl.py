"""Satisfiability for GL, as a tableau driven by a SAT solver.

A node is a finite set of formulas.  Its propositional skeleton (atoms and
boxed formulas as opaque letters) goes to the SAT solver.  For every boxed
formula []B that the propositional model makes false, the node needs a
successor satisfying

    {C, []C : []C true at the node} + {~B, []B}

which is the Loeb rule: the demanded formula []B itself is carried into the
successor, so the set of true boxes grows strictly along every branch and the
search terminates.  When a successor is unsatisfiable, the set of true boxes
responsible is shrunk by deletion and the clause "one of these boxes is
false, or []B is true" is added to the node's solver.  Should the solver then
run out of models, the node is unsatisfiable.

Satisfiable nodes return a witness: the atoms true at the node plus one
witness per false box.  Witnesses are memoized on the node's formula set, so
they form a DAG; its transitive closure is a finite irreflexive transitive
countermodel.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from pysat.solvers import Solver

from ..syntax import Atom, Box, Falsum, Formula, Neg, Or, RBox, canonical_key


class BudgetExhausted(Exception):
    """Raised when a caller-imposed node budget runs out."""


@dataclass(frozen=True, eq=False)
class Witness:
    atoms: frozenset          # atom keys true at this node
    children: tuple["Witness", ...]


class _Skeleton:
    """Tseitin encoding of a set of formulas into one solver."""

    def __init__(self, formulas: Iterable[Formula], solver_name: str):
        self.var: dict[Formula, int] = {}
        self.letters: list[Formula] = []      # atoms and boxes, in creation order
        self.boxes: list[Formula] = []
        self.clauses: list[list[int]] = []
        self.top = 0
        self.false_var = self._fresh()
        self.clauses.append([-self.false_var])
        roots = sorted(set(formulas), key=canonical_key)
        units = [self.lit(f) for f in roots]
        self.clauses.extend([u] for u in units)
        self.solver = Solver(name=solver_name, bootstrap_with=self.clauses)

    def _fresh(self) -> int:
        self.top += 1
        return self.top

    def lit(self, f: Formula) -> int:
        v = self.var.get(f)
        if v is not None:
            return v
        match f:
            case Falsum():
                return self.false_var
            case Neg(a):
                return -self.lit(a)
            case Atom(_):
                v = self._fresh()
                self.letters.append(f)
            case Box(_):
                v = self._fresh()
                self.letters.append(f)
                self.boxes.append(f)
            case Or(a, b):
                la, lb = self.lit(a), self.lit(b)
                v = self._fresh()
                self.clauses.extend(([-v, la, lb], [v, -la], [v, -lb]))
            case RBox(_):
                raise ValueError("the GL engine does not accept the Rosser box")
            case _:
                raise TypeError(f"not a formula: {f!r}")
        self.var[f] = v
        return v


class GLProver:
    """Memoizing GL satisfiability checker.

    ``node_budget`` bounds the number of fresh (non-memoized) tableau nodes
    expanded over the prover's lifetime window set by :meth:`set_budget`.
    """

    def __init__(self, solver_name: str = "m22"):
        self.solver_name = solver_name
        self._memo: dict[frozenset, Witness | None] = {}
        # learned facts: for []B, a list of box sets T with GL |- /\[]C (C in T) -> []B
        self._lemmas: dict[Formula, list[frozenset]] = {}
        self.nodes = 0
        self.sat_calls = 0
        self.memo_hits = 0
        self._limit: int | None = None

    def set_budget(self, extra_nodes: int | None):
        self._limit = None if extra_nodes is None else self.nodes + extra_nodes

    def satisfiable(self, formulas: Iterable[Formula]) -> Witness | None:
        return self._sat(frozenset(formulas))

    def valid(self, f: Formula) -> bool:
        return self._sat(frozenset((Neg(f),))) is None

    def countermodel(self, f: Formula) -> Witness | None:
        return self._sat(frozenset((Neg(f),)))

    def _sat(self, node: frozenset) -> Witness | None:
        if node in self._memo:
            self.memo_hits += 1
            return self._memo[node]
        if self._limit is not None and self.nodes >= self._limit:
            raise BudgetExhausted(f"GL node budget exhausted after {self.nodes} nodes")
        self.nodes += 1
        sk = _Skeleton(node, self.solver_name)
        try:
            out = self._expand(sk, node)
        finally:
            sk.solver.delete()
        self._memo[node] = out
        return out

    def _expand(self, sk: _Skeleton, node: frozenset) -> Witness | None:
        solver = sk.solver
        forced = frozenset(f for f in node if isinstance(f, Box))
        boxes = sorted(sk.boxes, key=canonical_key)
        box_set = set(boxes)
        for b in boxes:
            for t in self._lemmas.get(b, ()):
                if t <= box_set:
                    solver.add_clause([-sk.var[c] for c in t] + [sk.var[b]])
        while True:
            self.sat_calls += 1
            if not solver.solve():
                return None
            model = solver.get_model()
            value = {abs(x): x > 0 for x in model}
            true_boxes = [b for b in boxes if value.get(sk.var[b], False)]
            false_boxes = [b for b in boxes if not value.get(sk.var[b], False)]
            children = []
            learned = False
            for b in false_boxes:
                w = self._sat(_successor(true_boxes, b))
                if w is None:
                    core = self._shrink(true_boxes, b, forced)
                    self._lemmas.setdefault(b, []).append(frozenset(core))
                    solver.add_clause([-sk.var[c] for c in core] + [sk.var[b]])
                    learned = True
                    break
                children.append(w)
            if learned:
                continue
            atoms = frozenset(f.key for f in sk.letters if isinstance(f, Atom) and value.get(sk.var[f], False))
            return Witness(atoms, tuple(children))

    def _shrink(self, true_boxes: list[Formula], b: Formula, forced: frozenset) -> list[Formula]:
        """Deletion-minimal subset T of the true boxes whose successor for b is unsatisfiable.

        Boxes asserted by the node itself are never dropped: every query then
        still carries them plus []b, which keeps the recursion well founded.
        """
        core = list(true_boxes)
        i = 0
        while i < len(core):
            if core[i] in forced:
                i += 1
                continue
            trial = core[:i] + core[i + 1:]
            if self._sat(_successor(trial, b)) is None:
                core = trial
            else:
                i += 1
        return core


def _successor(true_boxes: Iterable[Formula], demand: Formula) -> frozenset:
    out = {Neg(demand.child), demand}
    for c in true_boxes:
        out.add(c)
        out.add(c.child)
    return frozenset(out)


def witness_model(w: Witness):
    """Flatten a witness DAG into the transitive closure on dense world ids.

    Returns (worlds, box pairs, valuation) with the root at world 0.
    """
    ids: dict[int, int] = {}
    order: list[Witness] = []

    def visit(x: Witness):
        if id(x) in ids:
            return
        ids[id(x)] = len(order)
        order.append(x)
        for c in x.children:
            visit(c)

    visit(w)
    reach: dict[int, set] = {}

    def below(x: Witness) -> set:
        i = ids[id(x)]
        if i in reach:
            return reach[i]
        out = set()
        for c in x.children:
            out.add(ids[id(c)])
            out |= below(c)
        reach[i] = out
        return out

    box = set()
    for x in order:
        i = ids[id(x)]
        box.update((i, j) for j in below(x))
    worlds = tuple(range(len(order)))
    valuation = {ids[id(x)]: set(x.atoms) for x in order}
    return worlds, frozenset(box), valuation
