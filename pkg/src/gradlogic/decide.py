"""Level-by-level validity decision with two engines.

Both engines reduce the input to unit chain expansion, then walk object
levels depth-first.  At level ``l`` the formula is *squashed* (chains cut
after position ``l``), every assignment to the atoms occurring there is
tried, and the formula is *residuated* for the next level.

Elements of already-resolved positions are kept in place as ``top``, so
position ``p`` of a chain is always read at object level ``p``.

``faithful``
    Literal transcription of the published procedure, including its removal
    of satisfied non-chain disjuncts.  Unsound: it rejects ``top | (b > c)``.
    Kept for study only.
``levelwise``
    Replaces removal by truth-value substitution and constant folding.  Its
    result agrees with :func:`gradlogic.semantics.classify_oracle`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from gradlogic.core import (
    TOP,
    And,
    EBOT,
    Formula,
    Or,
    SElem,
    atoms,
    chain,
    is_unit_chain_expansion,
    iter_units,
    require_uce,
    unit_chain_elems,
)
from gradlogic.reduce import normal_form
from gradlogic.semantics import ValuationFrame

ENGINES = ("levelwise", "faithful")

EMPTY = None
"""Residual with no remaining obligation (everything resolved true)."""


@dataclass(frozen=True)
class LevelInterpretation:
    level: int
    assignment: Mapping[str, int]

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be non-negative")
        object.__setattr__(
            self, "assignment", MappingProxyType({k: int(bool(v)) for k, v in self.assignment.items()})
        )

    def value(self, s: SElem) -> int:
        if s.kind == "top":
            return 1
        if s.kind == "bot":
            return 0
        v = self.assignment[s.name]
        return 1 - v if s.negated else v


@dataclass(frozen=True)
class DecideReport:
    result: int
    engine: str
    frames_examined: int
    recursion_depth_max: int
    witness_false: ValuationFrame | None = field(default=None, compare=False)

    @property
    def valid(self) -> bool:
        return self.result == 1


def squash(f: Formula, level: int) -> Formula:
    """Cut every chain after position ``level``."""
    require_uce(f, "squash")
    return _squash(f, level)


def _squash(f: Formula, level: int) -> Formula:
    if isinstance(f, (And, Or)):
        return type(f)(_squash(f.left, level), _squash(f.right, level))
    elems = unit_chain_elems(f)
    if len(elems) <= level + 1:
        return f
    return chain(*elems[: level + 1])


def count_distinct(f: Formula) -> int:
    return len(atoms(f))


def _resolved(s: SElem, pos: int) -> int:
    # Positions in front of the current level were rewritten to constants.
    if s.is_lit:
        raise ValueError(f"unresolved literal {s} at position {pos} below the current level")
    return 1 if s.kind == "top" else 0


def _unit_value(elems: tuple[SElem, ...], I: LevelInterpretation) -> int:
    if len(elems) - 1 > I.level:
        raise ValueError("chain reaches beyond the interpretation level; squash first")
    for p, s in enumerate(elems):
        v = I.value(s) if p == I.level else _resolved(s, p)
        if not v:
            return 0
    return 1


def falsified_at(f: Formula, I: LevelInterpretation) -> bool:
    """True iff the squashed formula ``f`` evaluates to 0 under ``I``."""
    return not _value(f, I)


def _value(f: Formula, I: LevelInterpretation) -> int:
    if isinstance(f, And):
        return _value(f.left, I) and _value(f.right, I)
    if isinstance(f, Or):
        return _value(f.left, I) or _value(f.right, I)
    elems = unit_chain_elems(f)
    if elems is None:
        require_uce(f, "falsified_at")
    return _unit_value(elems, I)


# -- residuation --------------------------------------------------------------


def _mark(elems: tuple[SElem, ...], level: int) -> Formula:
    return chain(*elems[:level], TOP, *elems[level + 1:])


def _prune(f: Formula, drop) -> Formula | None:
    """Delete units matching ``drop``; a deleted operand leaves its sibling in place."""
    if isinstance(f, (And, Or)):
        left = _prune(f.left, drop)
        right = _prune(f.right, drop)
        if left is None:
            return right
        if right is None:
            return left
        if left is f.left and right is f.right:
            return f
        return type(f)(left, right)
    return None if drop(unit_chain_elems(f)) else f


def _rewrite_heads(f: Formula, I: LevelInterpretation) -> Formula | None:
    level = I.level
    f = _prune(f, lambda e: not I.value(e[level]))
    if f is None:
        return None
    return _map_units(f, lambda e: _mark(e, level))


def _map_units(f: Formula, fn) -> Formula:
    if isinstance(f, (And, Or)):
        return type(f)(_map_units(f.left, fn), _map_units(f.right, fn))
    return fn(unit_chain_elems(f))


_T, _F = object(), object()


def _fold(op, left, right):
    if op is And:
        if left is _F or right is _F:
            return _F
        if left is _T:
            return right
        if right is _T:
            return left
    else:
        if left is _T or right is _T:
            return _T
        if left is _F:
            return right
        if right is _F:
            return left
    return op(left, right)


def _substitute(f: Formula, I: LevelInterpretation):
    if isinstance(f, (And, Or)):
        return _fold(type(f), _substitute(f.left, I), _substitute(f.right, I))
    elems = unit_chain_elems(f)
    level = I.level
    if len(elems) - 1 <= level:
        return _T if _unit_value(elems, I) else _F
    for p in range(level):
        if not _resolved(elems[p], p):
            return _F
    if not I.value(elems[level]):
        return _F
    return _mark(elems, level)


def residual(f: Formula, I: LevelInterpretation, mode: str = "levelwise") -> Formula | None:
    """Obligation left for level ``I.level + 1`` once level ``I.level`` is fixed by ``I``.

    Returns ``EMPTY`` (None) when nothing remains.  In ``levelwise`` mode a
    residual that is already false comes back as ``bot``.
    """
    require_uce(f, "residual")
    level = I.level
    if mode == "faithful":
        f = _prune(f, lambda e: len(e) == 1 or len(e) - 1 <= level)
        return None if f is None else _rewrite_heads(f, I)
    if mode == "levelwise":
        out = _substitute(f, I)
        if out is _T:
            return EMPTY
        if out is _F:
            return EBOT
        return out
    raise ValueError(f"unknown residual mode {mode!r}")


# -- engines ------------------------------------------------------------------


class _Run:
    def __init__(self, engine: str):
        self.engine = engine
        self.frames = 0
        self.depth = 0
        self.path: list[dict[str, int]] = []
        self.failed_path: list[dict[str, int]] | None = None

    def interpretations(self, f_b: Formula, level: int):
        names = sorted(atoms(f_b))
        for bits in itertools.product((0, 1), repeat=len(names)):
            self.frames += 1
            yield LevelInterpretation(level, dict(zip(names, bits)))

    def fail(self, I: LevelInterpretation) -> int:
        if self.failed_path is None:
            self.failed_path = [*self.path, dict(I.assignment)]
        return 0

    def faithful(self, f_a: Formula, level: int) -> int:
        self.depth = max(self.depth, level + 1)
        f_b = _squash(f_a, level)
        chains_left = any(len(u) > 1 for u in iter_units(f_a))
        for I in self.interpretations(f_b, level):
            if not _value(f_b, I):
                return self.fail(I)
            if not chains_left:
                continue
            rest = residual(f_a, I, "faithful")
            if rest is EMPTY:
                continue  # nothing left to refute
            self.path.append(dict(I.assignment))
            o = self.faithful(rest, level + 1)
            self.path.pop()
            if o == 0:
                return 0
        return 1

    def levelwise(self, f: Formula, level: int) -> int:
        self.depth = max(self.depth, level + 1)
        f_b = _squash(f, level)
        for I in self.interpretations(f_b, level):
            if not _value(f_b, I):
                return self.fail(I)
            rest = residual(f, I, "levelwise")
            if rest is EMPTY:
                continue
            if rest == EBOT:
                return self.fail(I)
            self.path.append(dict(I.assignment))
            o = self.levelwise(rest, level + 1)
            self.path.pop()
            if o == 0:
                return 0
        return 1


def decide_valid(f: Formula, engine: str = "levelwise") -> DecideReport:
    """Decide validity of ``f``; see the module docstring for the engines."""
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    g = f if is_unit_chain_expansion(f) else normal_form(f)
    run = _Run(engine)
    result = getattr(run, engine)(g, 0)
    witness = None
    if result == 0 and engine == "levelwise":
        witness = _path_frame(run.failed_path, g)
    return DecideReport(result, engine, run.frames, run.depth, witness)


def _path_frame(path: list[dict[str, int]], g: Formula) -> ValuationFrame:
    # Levels the run never fixed are irrelevant to the refutation; read them as false.
    names = atoms(g)
    depth = max(len(u) - 1 for u in iter_units(g))
    levels = []
    for lv in range(depth + 1):
        fixed = path[lv] if lv < len(path) else {}
        levels.append({a: fixed.get(a, 0) for a in names})
    return ValuationFrame(tuple(levels))


def _atoms_per_level(f: Formula) -> list[set[str]]:
    g = f if is_unit_chain_expansion(f) else normal_form(f)
    per_level: list[set[str]] = []
    for u in iter_units(g):
        for p, s in enumerate(u):
            if p == len(per_level):
                per_level.append(set())
            if s.is_lit:
                per_level[p].add(s.name)
    return per_level


def level_bound(f: Formula) -> int:
    """Sum over object levels of 2 ** (distinct atoms at that position) in the UCE reduct."""
    return sum(2 ** len(names) for names in _atoms_per_level(f))


def tree_bound(f: Formula) -> int:
    """Worst case of the depth-first walk: sum over levels l of prod_{j<=l} 2 ** n_j."""
    total, prod = 0, 1
    for names in _atoms_per_level(f):
        prod *= 2 ** len(names)
        total += prod
    return total
