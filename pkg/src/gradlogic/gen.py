"""Formula generators for property checks: random, random-UCE and exhaustive."""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator, Sequence

from gradlogic.core import (
    BOT,
    TOP,
    And,
    Elem,
    Formula,
    Grad,
    Not,
    Or,
    SElem,
    chain,
    lit,
)

DEFAULT_ATOMS = ("a", "b", "c", "d")


def leaves(names: Sequence[str], constants: bool = True) -> tuple[SElem, ...]:
    out = [TOP, BOT] if constants else []
    for n in names:
        out += [lit(n), lit(n, True)]
    return tuple(out)


def _leaf(rng: random.Random, names: Sequence[str]) -> Elem:
    # Constants are kept rare; they short-circuit too much to be interesting.
    if rng.random() < 0.1:
        return Elem(rng.choice((TOP, BOT)))
    return Elem(lit(rng.choice(names), rng.random() < 0.5))


def random_formula(
    rng: random.Random,
    names: Sequence[str] = DEFAULT_ATOMS,
    max_size: int = 25,
    max_neg: int = 3,
    grad: bool = True,
) -> Formula:
    """A random formula with f_size <= max_size and neg_max <= max_neg."""
    size = rng.randint(1, max_size)
    ops = [And, Or, Grad] if grad else [And, Or]

    def build(n: int, negs: int) -> Formula:
        if n == 1:
            return _leaf(rng, names)
        if n == 2:
            if negs < max_neg:
                return Not(build(1, negs + 1))
            return _leaf(rng, names)
        if negs < max_neg and rng.random() < 0.2:
            return Not(build(n - 1, negs + 1))
        k = rng.randint(1, n - 2)
        return rng.choice(ops)(build(k, negs), build(n - 1 - k, negs))

    return build(size, 0)


def random_uce(
    rng: random.Random,
    names: Sequence[str] = DEFAULT_ATOMS,
    max_units: int = 5,
    max_level: int = 2,
    constants: bool = True,
) -> Formula:
    """A random And/Or tree of unit chains of length at most max_level + 1."""
    pool = leaves(names, constants)

    def unit() -> Formula:
        length = rng.randint(1, max_level + 1)
        return chain(*(rng.choice(pool) for _ in range(length)))

    def build(k: int) -> Formula:
        if k == 1:
            return unit()
        j = rng.randint(1, k - 1)
        return rng.choice((And, Or))(build(j), build(k - j))

    return build(rng.randint(1, max_units))


@lru_cache(maxsize=None)
def _all_of_size(n: int, pool: tuple[SElem, ...]) -> tuple[Formula, ...]:
    if n == 1:
        return tuple(Elem(s) for s in pool)
    out = [Not(f) for f in _all_of_size(n - 1, pool)]
    for k in range(1, n - 1):
        lefts = _all_of_size(k, pool)
        rights = _all_of_size(n - 1 - k, pool)
        for op in (And, Or, Grad):
            out.extend(op(l, r) for l in lefts for r in rights)
    return tuple(out)


def all_formulas(names: Sequence[str], max_size: int) -> Iterator[Formula]:
    """Every formula over ``names`` (both polarities, top, bot) with f_size <= max_size."""
    pool = leaves(names)
    for n in range(1, max_size + 1):
        yield from _all_of_size(n, pool)
