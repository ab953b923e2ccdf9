"""Canonical enumeration of formulas by size, modulo cheap normalization.

Normalization only applies equivalences valid in every logic here:
double negation, flattening/sorting/deduplicating disjunctions, folding
``bot`` and ``~bot`` out of disjunctions, ``X | ~X`` to ``~bot`` and
``[]~bot`` to ``~bot``.  Rosser payloads are never touched, since the
semantics keys Rosser relations on the exact payload.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from ..syntax import BOT, TOP, Atom, Box, Falsum, Formula, Neg, Or, RBox, canonical_key

_MAX_CACHE = 1 << 18


@lru_cache(maxsize=_MAX_CACHE)
def normalize(f: Formula) -> Formula:
    match f:
        case Falsum() | Atom(_) | RBox(_):
            return f
        case Neg(a):
            na = normalize(a)
            if isinstance(na, Neg):
                return na.child
            return Neg(na)
        case Box(a):
            na = normalize(a)
            if na == TOP:
                return TOP
            return Box(na)
        case Or(_, _):
            return _join(_disjuncts(f))
    raise TypeError(f"not a formula: {f!r}")


def _disjuncts(f: Formula) -> list[Formula]:
    out = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Or):
            stack.append(g.right)
            stack.append(g.left)
        else:
            n = normalize(g)
            if isinstance(n, Or):
                stack.append(n)
            else:
                out.append(n)
    return out


def _join(parts: Iterable[Formula]) -> Formula:
    uniq = set()
    for p in parts:
        if p == BOT:
            continue
        if p == TOP:
            return TOP
        uniq.add(p)
    for p in uniq:
        if isinstance(p, Neg) and p.child in uniq:
            return TOP
    if not uniq:
        return BOT
    ordered = sorted(uniq, key=canonical_key)
    out = ordered[0]
    for p in ordered[1:]:
        out = Or(out, p)
    return out


def modal_depth_of(f: Formula) -> int:
    """Modal depth counting a Rosser leaf by its real depth."""
    from ..syntax import modal_depth
    return modal_depth(f)


class Enumerator:
    """Formulas over ``leaves`` ordered by construction size.

    Construction size counts every leaf (including a Rosser-box leaf
    supplied in ``leaves``) as one node.  ``rbox`` additionally allows the
    Rosser box as a connective.  Each normal form is produced once, at the
    first size where it is reachable; within a size, canonical order.
    """

    def __init__(self, leaves: Sequence[Formula], max_size: int, max_depth: int | None = None,
                 box: bool = True, rbox: bool = False):
        self.leaves = sorted({normalize(x) for x in leaves}, key=canonical_key)
        self.max_size = max_size
        self.max_depth = max_depth
        self.box = box
        self.rbox = rbox
        self.levels: list[list[Formula]] = [[]]
        self.depth: dict[Formula, int] = {}
        self.seen: set[Formula] = set()

    def _depth(self, f: Formula) -> int:
        d = self.depth.get(f)
        if d is None:
            d = modal_depth_of(f)
            self.depth[f] = d
        return d

    def _admit(self, f: Formula, bucket: list):
        if f in self.seen:
            return
        if self.max_depth is not None and self._depth(f) > self.max_depth:
            return
        self.seen.add(f)
        bucket.append(f)

    def _build(self, s: int) -> list[Formula]:
        bucket: list[Formula] = []
        if s == 1:
            for x in self.leaves:
                self._admit(x, bucket)
            return sorted(bucket, key=canonical_key)
        below = self.levels[s - 1]
        deep_ok = self.max_depth is None
        for x in below:
            self._admit(normalize(Neg(x)), bucket)
            if self.box and (deep_ok or self._depth(x) < self.max_depth):
                self._admit(normalize(Box(x)), bucket)
            if self.rbox and (deep_ok or self._depth(x) < self.max_depth):
                self._admit(RBox(x), bucket)
        for i in range(1, s - 1):
            j = s - 1 - i
            if i > j:
                break
            for x in self.levels[i]:
                for y in self.levels[j]:
                    if i == j and canonical_key(y) < canonical_key(x):
                        continue
                    self._admit(normalize(Or(x, y)), bucket)
        return sorted(bucket, key=canonical_key)

    def __iter__(self) -> Iterator[tuple[int, Formula]]:
        for s in range(1, self.max_size + 1):
            if len(self.levels) <= s:
                self.levels.append(self._build(s))
            for f in self.levels[s]:
                yield s, f

    def all(self) -> list[Formula]:
        return [f for _, f in self]
