"""Subformula sets, polarity, and the interpolation scope conditions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .formula import BOT, TOP, Atom, Box, Falsum, Formula, Neg, Or, RBox, dia, variables


def subformulas(f: Formula) -> frozenset[Formula]:
    """S(A), by plain structural recursion (indexed atoms are leaves)."""
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        stack.extend(g.children())
    return frozenset(out)


@lru_cache(maxsize=1 << 16)
def signed_subformulas(f: Formula) -> tuple[frozenset[Formula], frozenset[Formula]]:
    """(S+(A), S-(A)).

    Atoms and bot are positive subformulas of themselves and have no
    negative subformulas.
    """
    match f:
        case Falsum() | Atom(_):
            return frozenset((f,)), frozenset()
        case Or(a, b):
            pa, na = signed_subformulas(a)
            pb, nb = signed_subformulas(b)
            return pa | pb | {f}, na | nb
        case Neg(a):
            pa, na = signed_subformulas(a)
            return na | {f}, pa
        case Box(a) | RBox(a):
            pa, na = signed_subformulas(a)
            return pa | {f}, na
    raise TypeError(f"not a formula: {f!r}")


def positive_subformulas(f: Formula) -> frozenset[Formula]:
    return signed_subformulas(f)[0]


def negative_subformulas(f: Formula) -> frozenset[Formula]:
    return signed_subformulas(f)[1]


@dataclass(frozen=True)
class SignedLiteralSet:
    """tau(A): which variables occur positively and which negatively."""
    positives: frozenset
    negatives: frozenset

    def __le__(self, other: "SignedLiteralSet") -> bool:
        return self.positives <= other.positives and self.negatives <= other.negatives

    def __and__(self, other: "SignedLiteralSet") -> "SignedLiteralSet":
        return SignedLiteralSet(self.positives & other.positives, self.negatives & other.negatives)

    def swapped(self) -> "SignedLiteralSet":
        return SignedLiteralSet(self.negatives, self.positives)

    def unsigned(self) -> frozenset:
        return self.positives | self.negatives


def _keys(fs) -> frozenset:
    return frozenset(g.key for g in fs if isinstance(g, Atom))


def tau(f: Formula) -> SignedLiteralSet:
    pos, neg = signed_subformulas(f)
    return SignedLiteralSet(_keys(pos), _keys(neg))


def mu(f: Formula) -> frozenset[Formula]:
    pos, neg = signed_subformulas(f)
    return pos | frozenset(Neg(d) for d in neg)


def complement(f: Formula) -> Formula:
    """The complement ~B: strip one top-level negation, else add one."""
    return f.child if isinstance(f, Neg) else Neg(f)


def phi_closure(f: Formula) -> frozenset[Formula]:
    s = subformulas(f)
    out = set(s)
    out.update(complement(b) for b in s)
    out.update((BOT, TOP, Box(BOT), Neg(Box(BOT))))
    for g in s:
        if isinstance(g, RBox):
            d = g.child
            out.update((Box(d), Neg(Box(d)), Box(Neg(g)), dia(g), Box(g), Neg(Box(g))))
    return frozenset(out)


def rbox_subformulas(f: Formula) -> frozenset[Formula]:
    """All subformulas of the form [R]D."""
    return frozenset(g for g in subformulas(f) if isinstance(g, RBox))


def ddag_holds(c: Formula, a: Formula, b: Formula) -> bool:
    """Every [R]D in S*(C) lies in S*(A) and S*(B), per polarity."""
    for sc, sa, sb in zip(signed_subformulas(c), signed_subformulas(a), signed_subformulas(b)):
        for g in sc:
            if isinstance(g, RBox) and not (g in sa and g in sb):
                return False
    return True


def lyndon_scope_holds(c: Formula, a: Formula, b: Formula) -> bool:
    return tau(c) <= (tau(a) & tau(b))


def craig_scope_holds(c: Formula, a: Formula, b: Formula) -> bool:
    return variables(c) <= (variables(a) & variables(b))


def craig_ddag_holds(c: Formula, a: Formula, b: Formula) -> bool:
    sa, sb = subformulas(a), subformulas(b)
    return all(g in sa and g in sb for g in rbox_subformulas(c))
