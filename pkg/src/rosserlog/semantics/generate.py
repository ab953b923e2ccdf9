"""Seeded generators for frames, models and formulas.

Valid Rosser relations have a rigid shape: at a world with box-successors
R must coincide with box, and at a box-maximal world y any R-successor z
must satisfy preds(y) <= preds(z), with at least one successor when y has
a predecessor.  The frame generator samples exactly that space.
"""
from __future__ import annotations

import random
from typing import Iterable, Sequence

from ..syntax import BOT, Atom, Box, Formula, Named, Neg, Or, RBox
from .frames import GRoFrame, validate_gro_frame
from .models import GRoModel


def _closure(n: int, edges: set) -> frozenset:
    reach = [set() for _ in range(n)]
    for a, b in edges:
        reach[a].add(b)
    for k in range(n):
        for i in range(n):
            if k in reach[i]:
                reach[i] |= reach[k]
    return frozenset((i, j) for i in range(n) for j in reach[i])


def random_box(rng: random.Random, n: int, density: float | None = None) -> frozenset:
    p = rng.uniform(0.2, 0.7) if density is None else density
    # a random permutation keeps the order from always following ids
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p}
    return _closure(n, edges)


def admissible_targets(worlds: Sequence[int], box: frozenset, y: int) -> list[int]:
    """Worlds z allowed as R-successors of a box-maximal world y."""
    preds = {w: frozenset(a for a, b in box if b == w) for w in worlds}
    return [z for z in worlds if preds[y] <= preds[z]]


def random_rosser(rng: random.Random, worlds: Sequence[int], box: frozenset, serial: bool = False) -> frozenset:
    has_succ = {a for a, _ in box}
    has_pred = {b for _, b in box}
    out = set(box)
    for y in worlds:
        if y in has_succ:
            continue
        targets = admissible_targets(worlds, box, y)
        chosen = [z for z in targets if rng.random() < (0.8 if z == y else 0.3)]
        if not chosen and (serial or y in has_pred or rng.random() < 0.5):
            chosen = [rng.choice(targets)]
        out.update((y, z) for z in chosen)
    return frozenset(out)


def random_frame(seed, n: int, override_keys: Iterable[Formula] = (), *, serial: bool = False) -> GRoFrame:
    """A random frame on worlds 0..n-1 that passes validation."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    worlds = tuple(range(n))
    box = random_box(rng, n)
    default = random_rosser(rng, worlds, box, serial)
    keys = sorted(set(override_keys), key=lambda f: (f.size, f.text))
    overrides = {k: random_rosser(rng, worlds, box, serial) for k in keys if rng.random() < 0.7}
    f = GRoFrame(worlds, box, default, overrides)
    assert validate_gro_frame(f).ok
    return f


def random_model(seed, n: int, atoms: Iterable[str], override_keys: Iterable[Formula] = (), *,
                 serial: bool = False) -> GRoModel:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    frame = random_frame(rng, n, override_keys, serial=serial)
    names = sorted(set(atoms))
    val = {w: {a for a in names if rng.random() < 0.5} for w in frame.worlds}
    return GRoModel(frame, val)


_OPS = ("neg", "or", "box", "rbox")


def random_formula(seed, size: int, signature: Sequence[str] = ("p", "q"), max_rbox_depth: int = 2,
                   ops: Sequence[str] = _OPS, bot_weight: float = 0.15) -> Formula:
    """A random formula with exactly ``size`` constructor nodes."""
    if size < 1:
        raise ValueError("size must be positive")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    letters = [Atom(Named(s)) for s in signature]
    unary = [o for o in ops if o != "or"]
    if not letters and not unary and size > 1:
        raise ValueError("no way to build a formula of that size")

    def leaf() -> Formula:
        if not letters or rng.random() < bot_weight:
            return BOT
        return rng.choice(letters)

    def go(n: int, rdepth: int) -> Formula:
        if n == 1:
            return leaf()
        choices = [o for o in unary if o != "rbox" or rdepth > 0]
        if n >= 3 and "or" in ops:
            choices = choices + ["or", "or"]
        if not choices:
            raise ValueError(f"cannot build a formula of size {n} from {tuple(ops)}")
        op = rng.choice(choices)
        if op == "or":
            k = rng.randint(1, n - 2)
            return Or(go(k, rdepth), go(n - 1 - k, rdepth))
        if op == "neg":
            return Neg(go(n - 1, rdepth))
        if op == "box":
            return Box(go(n - 1, rdepth))
        return RBox(go(n - 1, rdepth - 1))

    return go(size, max_rbox_depth)
