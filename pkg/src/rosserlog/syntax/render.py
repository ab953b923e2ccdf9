"""Canonical ASCII printing.

Only three pieces of sugar are ever printed: ``&`` (for ``~(~a | ~b)``),
``->`` (for ``~a | b``) and the diamonds ``<>``/``<R>``.  ``~bot`` is kept
as is so that printed translations show exactly which constants appeared.
"""
from __future__ import annotations

from .formula import Atom, Box, Falsum, Formula, Indexed, Neg, Or, RBox

# binding levels: 0 arrows, 1 disjunction, 2 conjunction, 3 prefix
_IMP, _OR, _AND, _UNARY = 0, 1, 2, 3


def render(f: Formula) -> str:
    text, _ = _render(f)
    return text


def _wrap(part: tuple[str, int], level: int) -> str:
    text, prec = part
    return text if prec >= level else f"({text})"


def _render(f: Formula) -> tuple[str, int]:
    if f._text is not None:
        return f._text, _prec(f)
    match f:
        case Falsum():
            return "bot", _UNARY
        case Atom(key):
            if isinstance(key, Indexed):
                return "#{" + key.payload.text + "}", _UNARY
            return key.name, _UNARY
        case Neg(Or(Neg(a), Neg(b))):
            return f"{_wrap(_render(a), _AND)} & {_wrap(_render(b), _UNARY)}", _AND
        case Neg(Box(Neg(a))):
            return "<>" + _wrap(_render(a), _UNARY), _UNARY
        case Neg(RBox(Neg(a))):
            return "<R>" + _wrap(_render(a), _UNARY), _UNARY
        case Neg(a):
            return "~" + _wrap(_render(a), _UNARY), _UNARY
        case Or(Neg(a), b):
            return f"{_wrap(_render(a), _OR)} -> {_wrap(_render(b), _IMP)}", _IMP
        case Or(a, b):
            return f"{_wrap(_render(a), _OR)} | {_wrap(_render(b), _AND)}", _OR
        case Box(a):
            return "[]" + _wrap(_render(a), _UNARY), _UNARY
        case RBox(a):
            return "[R]" + _wrap(_render(a), _UNARY), _UNARY
    raise TypeError(f"not a formula: {f!r}")


def _prec(f: Formula) -> int:
    match f:
        case Neg(Or(Neg(_), Neg(_))):
            return _AND
        case Or(Neg(_), _):
            return _IMP
        case Or(_, _):
            return _OR
    return _UNARY
