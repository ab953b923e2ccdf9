"""A pool of small valid models used to refute implications cheaply.

A pool only ever answers "definitely not provable": every model in it is a
model of the logic in question, so a world where the premise holds and the
conclusion fails is a genuine refutation.  Anything the pool cannot refute
goes to the decision procedure.
"""
from __future__ import annotations

import random
from typing import Iterable

from ..semantics.frames import GRoFrame
from ..semantics.generate import random_frame
from ..semantics.models import GRoModel
from ..syntax import Formula, RBox, sort_formulas, subformulas, variables


class ModelPool:
    def __init__(self, models: Iterable[GRoModel] = (), limit: int = 200):
        self.models: list[GRoModel] = list(models)
        self.limit = limit
        self.refutations = 0

    def add(self, m: GRoModel):
        if len(self.models) >= self.limit:
            self.models.pop(1 if len(self.models) > 1 else 0)
        # fresh models go to the front: they tend to refute the next queries too
        self.models.insert(0, m)

    def refutes(self, premise: Formula, conclusion: Formula) -> bool:
        for i, m in enumerate(self.models):
            if m.extension(premise) & ~m.extension(conclusion):
                if i > 4:
                    self.models.insert(0, self.models.pop(i))
                self.refutations += 1
                return True
        return False

    def refutes_formula(self, f: Formula) -> bool:
        for m in self.models:
            if m.extension(f) != m._full:
                return True
        return False


def random_pool(atoms: Iterable, payloads: Iterable[Formula] = (), *, count: int = 40, max_worlds: int = 5,
                serial: bool = False, box_only: bool = False, seed: int = 0) -> ModelPool:
    """Random valid models over the given atom keys.

    ``atoms`` may hold atom keys of either sort; ``payloads`` become
    Rosser override keys.  ``box_only`` models carry the standard Rosser
    relation and suit the GL engine.
    """
    rng = random.Random(seed)
    keys = sorted(set(atoms), key=str)
    pk = [] if box_only else sort_formulas(set(payloads))
    out = []
    for i in range(count):
        n = 1 + i % max_worlds
        frame = random_frame(rng, n, pk, serial=serial)
        val = {w: {k for k in keys if rng.random() < 0.5} for w in frame.worlds}
        out.append(GRoModel(frame, val))
    return ModelPool(out)


def pool_for(logic: str, formulas: Iterable[Formula], seed: int = 0, count: int = 40) -> ModelPool:
    fs = list(formulas)
    atoms = set()
    payloads = set()
    for f in fs:
        atoms |= variables(f)
        payloads |= {g.child for g in subformulas(f) if isinstance(g, RBox)}
    if logic == "gl":
        return random_pool(atoms, box_only=True, seed=seed, count=count)
    return random_pool(atoms, payloads, serial=(logic in ("gr", "nr")), seed=seed, count=count)
