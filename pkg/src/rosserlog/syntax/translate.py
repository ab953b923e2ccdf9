"""Translations that reduce the Rosser box to ordinary GL material.

``dagger`` replaces each outermost ``[R]D`` by the indexed atom q_D and
``psi(D)`` axiomatizes how q_D must behave.  ``top_translation`` and
``theta`` need a provability oracle; they take it as an argument so this
module stays purely syntactic.
"""
from __future__ import annotations

from typing import Callable, Mapping

from .formula import (
    BOT, TOP, Atom, Box, Falsum, Formula, Indexed, Neg, Or, RBox,
    boxdot, conj, dia, implies, q, sort_formulas,
)
from .polarity import subformulas

Oracle = Callable[[Formula], bool]


def s0(f: Formula) -> frozenset[Formula]:
    """S_0(A): subformulas reachable without entering a Rosser box."""
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        if not isinstance(g, RBox):
            stack.extend(g.children())
    return frozenset(out)


def outermost_rosser(f: Formula) -> tuple[Formula, ...]:
    """Payloads D of the [R]D in S_0(A), in canonical order."""
    return tuple(sort_formulas({g.child for g in s0(f) if isinstance(g, RBox)}))


def rosser_payloads(f: Formula) -> tuple[Formula, ...]:
    """Payloads D of every [R]D in S(A), nested ones included."""
    return tuple(sort_formulas({g.child for g in subformulas(f) if isinstance(g, RBox)}))


def dagger(f: Formula) -> Formula:
    """Replace each outermost [R]D by q_D; the payload keeps its [R]s."""
    match f:
        case RBox(d):
            return q(d)
        case Falsum() | Atom(_):
            return f
        case Neg(a):
            return Neg(dagger(a))
        case Or(a, b):
            return Or(dagger(a), dagger(b))
        case Box(a):
            return Box(dagger(a))
    raise TypeError(f"not a formula: {f!r}")


def psi(d: Formula) -> Formula:
    qd = q(d)
    dd = dagger(d)
    return conj(
        implies(qd, Box(dd)),
        implies(qd, Box(qd)),
        implies(Box(dd), Or(Box(BOT), qd)),
        implies(dia(qd), dia(dd)),
    )


def psi_payloads(f: Formula, scope: str = "all") -> tuple[Formula, ...]:
    """Payloads that receive a Psi conjunct.

    ``scope="outermost"`` uses S_0(A) only.  ``scope="all"`` (the default)
    also covers [R]-subformulas nested inside another [R]; without them the
    atom standing for an inner [R]D is unconstrained and the reduction
    misses theorems such as ``[R][R]p -> [][]p``.
    """
    if scope == "all":
        return rosser_payloads(f)
    if scope == "outermost":
        return outermost_rosser(f)
    raise ValueError(f"unknown psi scope {scope!r}")


def psi_context(f: Formula, scope: str = "all") -> Formula:
    """The conjunction of boxdot(psi(D)) over the chosen payloads."""
    return conj(*(boxdot(psi(d)) for d in psi_payloads(f, scope)))


def grminus_reduction(f: Formula, scope: str = "all") -> Formula:
    """The GL formula whose provability is equivalent to GR- |- A."""
    payloads = psi_payloads(f, scope)
    if not payloads:
        return dagger(f)
    return implies(psi_context(f, scope), dagger(f))


def top_translation(f: Formula, oracle: Oracle) -> Formula:
    """A^T: outermost [R]D with GR-circ |- D becomes ~bot."""
    match f:
        case RBox(d):
            return TOP if oracle(d) else f
        case Falsum() | Atom(_):
            return f
        case Neg(a):
            return Neg(top_translation(a, oracle))
        case Or(a, b):
            return Or(top_translation(a, oracle), top_translation(b, oracle))
        case Box(a):
            return Box(top_translation(a, oracle))
    raise TypeError(f"not a formula: {f!r}")


def theta(f: Formula, oracle: Oracle) -> Formula:
    """Theta_A: the conjunction of ~[R]C for [R]C in S(A) with GR |- ~C."""
    refuted = [d for d in rosser_payloads(f) if oracle(Neg(d))]
    return conj(*(Neg(RBox(d)) for d in refuted))


def substitute(f: Formula, s: Mapping) -> Formula:
    """Simultaneous substitution of formulas for atom keys.

    Keys may be atom keys or ``Atom`` formulas.  Indexed atoms are replaced
    as units; their payloads are never rewritten.
    """
    table = {(k.key if isinstance(k, Atom) else k): v for k, v in s.items()}
    if not table:
        return f
    cache: dict[Formula, Formula] = {}

    def go(g: Formula) -> Formula:
        hit = cache.get(g)
        if hit is not None:
            return hit
        match g:
            case Atom(key):
                out = table.get(key, g)
            case Falsum():
                out = g
            case Neg(a):
                out = Neg(go(a))
            case Or(a, b):
                out = Or(go(a), go(b))
            case Box(a):
                out = Box(go(a))
            case RBox(a):
                out = RBox(go(a))
        cache[g] = out
        return out

    return go(f)


def undagger_map(f: Formula) -> dict:
    """sigma: q_D maps to [R]D for every indexed atom in the formula."""
    out = {}
    for g in subformulas(f):
        if isinstance(g, Atom) and isinstance(g.key, Indexed):
            out[g.key] = RBox(g.key.payload)
    return out
