"""Immutable bimodal formulas.

There are exactly six constructors: ``Falsum``, ``Atom``, ``Neg``, ``Or``,
``Box`` (the ordinary provability box) and ``RBox`` (the Rosser box).  All
other connectives are sugar built from these, so every recursion in the
library only ever has to handle six cases.

Formulas are hash-consed: constructing a node that already exists returns
the existing object, so equality is identity.  Each node also caches its
size and rendering.
"""
from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass
from typing import Iterable, Union


@dataclass(frozen=True, slots=True)
class Named:
    """An ordinary propositional variable."""
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Indexed:
    """The reserved variable q_D attached to a Rosser payload D.

    Indexed keys live in their own sort, so they can never clash with a
    user-supplied variable name.
    """
    payload: "Formula"

    def __str__(self) -> str:
        return "#{" + self.payload.text + "}"


AtomKey = Union[Named, Indexed]


class Formula:
    """Base class.  Nodes are interned: structurally equal formulas are the
    same object, so equality is identity and hashing is O(1)."""
    __slots__ = ("_hash", "_size", "_text", "__weakref__")
    _fields: tuple = ()
    _table: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()
    _lock = threading.Lock()

    def __new__(cls, *args):
        key = (cls,) + args
        hit = Formula._table.get(key)
        if hit is not None:
            return hit
        with Formula._lock:
            hit = Formula._table.get(key)
            if hit is not None:
                return hit
            self = object.__new__(cls)
            for f, a in zip(cls._fields, args):
                object.__setattr__(self, f, a)
            object.__setattr__(self, "_hash", hash((cls.__name__,) + args))
            object.__setattr__(self, "_size", None)
            object.__setattr__(self, "_text", None)
            Formula._table[key] = self
            return self

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    def args(self) -> tuple:
        return tuple(getattr(self, f) for f in self._fields)

    def __eq__(self, other):
        return self is other

    def __ne__(self, other):
        return self is not other

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (type(self), self.args())

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self.args()))})"

    def __str__(self):
        return self.text

    @property
    def text(self) -> str:
        """Canonical ASCII rendering (cached)."""
        t = self._text
        if t is None:
            from .render import render
            t = render(self)
            object.__setattr__(self, "_text", t)
        return t

    @property
    def size(self) -> int:
        """Number of constructor nodes; indexed atoms count as one node."""
        s = self._size
        if s is None:
            s = 1 + sum(c.size for c in self.children())
            object.__setattr__(self, "_size", s)
        return s

    def children(self) -> tuple["Formula", ...]:
        return ()

    # sugar, so tests and callers can write formulas directly
    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __and__(self, other: "Formula") -> "Formula":
        return conj(self, other)

    def __invert__(self) -> "Formula":
        return Neg(self)

    def __rshift__(self, other: "Formula") -> "Formula":
        return implies(self, other)


def _check(f):
    if not isinstance(f, Formula):
        raise TypeError(f"expected a formula, got {f!r}")
    return f


class Falsum(Formula):
    __slots__ = ()
    __match_args__ = ()


class Atom(Formula):
    __slots__ = ("key",)
    _fields = ("key",)
    __match_args__ = ("key",)

    def __new__(cls, key: AtomKey | str):
        if isinstance(key, str):
            key = Named(key)
        if not isinstance(key, (Named, Indexed)):
            raise TypeError(f"bad atom key {key!r}")
        return super().__new__(cls, key)


class Neg(Formula):
    __slots__ = ("child",)
    _fields = ("child",)
    __match_args__ = ("child",)

    def __new__(cls, child: Formula):
        return super().__new__(cls, _check(child))

    def children(self):
        return (self.child,)


class Or(Formula):
    __slots__ = ("left", "right")
    _fields = ("left", "right")
    __match_args__ = ("left", "right")

    def __new__(cls, left: Formula, right: Formula):
        return super().__new__(cls, _check(left), _check(right))

    def children(self):
        return (self.left, self.right)


class Box(Formula):
    __slots__ = ("child",)
    _fields = ("child",)
    __match_args__ = ("child",)

    def __new__(cls, child: Formula):
        return super().__new__(cls, _check(child))

    def children(self):
        return (self.child,)


class RBox(Formula):
    __slots__ = ("child",)
    _fields = ("child",)
    __match_args__ = ("child",)

    def __new__(cls, child: Formula):
        return super().__new__(cls, _check(child))

    def children(self):
        return (self.child,)


BOT = Falsum()
TOP = Neg(BOT)


def atom(name: str) -> Atom:
    return Atom(Named(name))


def q(payload: Formula) -> Atom:
    """The indexed atom q_D."""
    return Atom(Indexed(payload))


def atoms(names: str) -> tuple[Atom, ...]:
    return tuple(atom(n) for n in names.split())


def conj(*fs: Formula) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``~bot``."""
    if not fs:
        return TOP
    out = fs[0]
    for f in fs[1:]:
        out = Neg(Or(Neg(out), Neg(f)))
    return out


def disj(*fs: Formula) -> Formula:
    if not fs:
        return BOT
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def big_conj(fs: Iterable[Formula]) -> Formula:
    return conj(*fs)


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Neg(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return conj(implies(a, b), implies(b, a))


def dia(a: Formula) -> Formula:
    return Neg(Box(Neg(a)))


def rdia(a: Formula) -> Formula:
    return Neg(RBox(Neg(a)))


def boxdot(a: Formula) -> Formula:
    """The reflexive box: ``[]A & A``."""
    return conj(Box(a), a)


def canonical_key(f: Formula) -> tuple[int, str]:
    """Total order used wherever output order must be deterministic."""
    return (f.size, f.text)


def sort_formulas(fs: Iterable[Formula]) -> list[Formula]:
    return sorted(fs, key=canonical_key)


def has_box(f: Formula) -> bool:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Box):
            return True
        if isinstance(g, Atom) and isinstance(g.key, Indexed):
            continue
        stack.extend(g.children())
    return False


def has_rbox(f: Formula) -> bool:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, RBox):
            return True
        stack.extend(g.children())
    return False


def modal_depth(f: Formula) -> int:
    """Nesting depth of both boxes together."""
    match f:
        case Box(c) | RBox(c):
            return 1 + modal_depth(c)
        case Neg(c):
            return modal_depth(c)
        case Or(a, b):
            return max(modal_depth(a), modal_depth(b))
    return 0


def rbox_depth(f: Formula) -> int:
    """Nesting depth of the Rosser box alone."""
    match f:
        case RBox(c):
            return 1 + rbox_depth(c)
        case Box(c) | Neg(c):
            return rbox_depth(c)
        case Or(a, b):
            return max(rbox_depth(a), rbox_depth(b))
    return 0


def variables(f: Formula) -> frozenset:
    """v(A): the atom keys occurring in A (indexed atoms are opaque)."""
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            out.add(g.key)
        else:
            stack.extend(g.children())
    return frozenset(out)
