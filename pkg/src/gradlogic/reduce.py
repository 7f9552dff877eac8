"""Reduction rules, normalisation to unit chain expansion, negation and DNF/CNF.

The nine rewrite rules::

    NEG1   !s            =>  s^c                       (s an S-element)
    NEG2   !(A & B)      =>  !A | !B
    NEG3   !(A | B)      =>  !A & !B
    NEG4   !(s > B)      =>  s^c | (s > !B)            (s an S-element)
    GRAD1  (A > B) > C   =>  (A > C) & ((A > B) | (A > (B > C)))
    GRAD2  (A & B) > C   =>  (A > C) & (B > C)
    GRAD3  (A | B) > C   =>  (A > C) | (B > C)
    GRAD4  A > (B & C)   =>  (A > B) & (A > C)
    GRAD5  A > (B | C)   =>  (A > B) | (A > C)

Positions are paths of child indices from the root (0 = left or only child,
1 = right child).
"""
from __future__ import annotations

import contextlib
import enum
import gc
import random
from dataclasses import dataclass, field

from gradlogic.core import (
    And,
    Elem,
    Formula,
    Grad,
    Not,
    Or,
    is_unit_chain_expansion,
    require_uce,
    unit_chain_elems,
)

Position = tuple[int, ...]


class Rule(enum.Enum):
    NEG1 = "NEG1"
    NEG2 = "NEG2"
    NEG3 = "NEG3"
    NEG4 = "NEG4"
    GRAD1 = "GRAD1"
    GRAD2 = "GRAD2"
    GRAD3 = "GRAD3"
    GRAD4 = "GRAD4"
    GRAD5 = "GRAD5"

    def __str__(self):
        return self.value


class NotARedexError(ValueError):
    pass


def own_rules(f: Formula) -> tuple[Rule, ...]:
    """Rules whose left-hand side matches ``f`` at its root."""
    if isinstance(f, Not):
        arg = f.arg
        if isinstance(arg, Elem):
            return (Rule.NEG1,)
        if isinstance(arg, And):
            return (Rule.NEG2,)
        if isinstance(arg, Or):
            return (Rule.NEG3,)
        if isinstance(arg, Grad) and isinstance(arg.left, Elem):
            return (Rule.NEG4,)
        return ()
    if isinstance(f, Grad):
        out = []
        left, right = f.left, f.right
        if isinstance(left, Grad):
            out.append(Rule.GRAD1)
        elif isinstance(left, And):
            out.append(Rule.GRAD2)
        elif isinstance(left, Or):
            out.append(Rule.GRAD3)
        if isinstance(right, And):
            out.append(Rule.GRAD4)
        elif isinstance(right, Or):
            out.append(Rule.GRAD5)
        return tuple(out)
    return ()


def redex_count(f: Formula) -> int:
    # Cached on the node itself; nodes are immutable so the count never changes.
    cache = f.__dict__
    n = cache.get("_redexes")
    if n is None:
        n = len(own_rules(f)) + sum(redex_count(c) for c in f.children())
        cache["_redexes"] = n
    return n


def applicable_rules(f: Formula) -> set[tuple[Rule, Position]]:
    """Every (rule, position) pair at which a rule's left-hand side matches."""
    out = set()
    stack: list[tuple[Formula, Position]] = [(f, ())]
    while stack:
        node, pos = stack.pop()
        if not redex_count(node):
            continue
        out.update((r, pos) for r in own_rules(node))
        stack.extend((c, pos + (i,)) for i, c in enumerate(node.children()))
    return out


def subterm(f: Formula, pos: Position) -> Formula:
    for i in pos:
        f = f.children()[i]
    return f


def replace_at(f: Formula, pos: Position, new: Formula) -> Formula:
    if not pos:
        return new
    head, rest = pos[0], pos[1:]
    if isinstance(f, Not):
        if head != 0:
            raise IndexError(pos)
        return Not(replace_at(f.arg, rest, new))
    if isinstance(f, (And, Or, Grad)):
        if head == 0:
            return type(f)(replace_at(f.left, rest, new), f.right)
        if head == 1:
            return type(f)(f.left, replace_at(f.right, rest, new))
    raise IndexError(pos)


def rewrite(rule: Rule, node: Formula) -> Formula:
    """Right-hand side of ``rule`` applied at the root of ``node``."""
    if rule not in own_rules(node):
        raise NotARedexError(f"{rule} does not apply here")
    if rule is Rule.NEG1:
        return Elem(node.arg.s.complement())
    if rule is Rule.NEG2:
        a, b = node.arg.left, node.arg.right
        return Or(Not(a), Not(b))
    if rule is Rule.NEG3:
        a, b = node.arg.left, node.arg.right
        return And(Not(a), Not(b))
    if rule is Rule.NEG4:
        s, b = node.arg.left, node.arg.right
        return Or(Elem(s.s.complement()), Grad(s, Not(b)))
    left, right = node.left, node.right
    if rule is Rule.GRAD1:
        a, b = left.left, left.right
        return And(Grad(a, right), Or(Grad(a, b), Grad(a, Grad(b, right))))
    if rule is Rule.GRAD2:
        return And(Grad(left.left, right), Grad(left.right, right))
    if rule is Rule.GRAD3:
        return Or(Grad(left.left, right), Grad(left.right, right))
    if rule is Rule.GRAD4:
        return And(Grad(left, right.left), Grad(left, right.right))
    return Or(Grad(left, right.left), Grad(left, right.right))


def apply_rule(f: Formula, rule: Rule, pos: Position) -> Formula:
    try:
        node = subterm(f, pos)
    except IndexError:
        raise NotARedexError(f"no subterm at {pos}") from None
    return replace_at(f, pos, rewrite(rule, node))


# -- traces -------------------------------------------------------------------


def format_position(pos: Position) -> str:
    return ".".join(map(str, pos)) if pos else "root"


@dataclass(frozen=True)
class ReductionStep:
    rule: Rule
    position: Position
    before: Formula
    after: Formula

    def render(self) -> str:
        from gradlogic.parser import pretty

        old = pretty(subterm(self.before, self.position))
        new = pretty(subterm(self.after, self.position))
        return f"{self.rule} @ {format_position(self.position)}: {old} => {new}"


@dataclass(frozen=True)
class Trace:
    initial: Formula
    steps: tuple[ReductionStep, ...]
    final: Formula

    def render(self) -> list[str]:
        return [s.render() for s in self.steps]


@dataclass
class _Recorder:
    current: Formula
    steps: list[ReductionStep] = field(default_factory=list)

    def apply(self, rule: Rule, pos: Position) -> Formula:
        node = subterm(self.current, pos)
        new = rewrite(rule, node)
        after = replace_at(self.current, pos, new)
        self.steps.append(ReductionStep(rule, pos, self.current, after))
        self.current = after
        return new

    def at(self, pos: Position) -> Formula:
        return subterm(self.current, pos)


# -- deterministic strategy ---------------------------------------------------


def _normalize(rec: _Recorder, pos: Position) -> None:
    node = rec.at(pos)
    if isinstance(node, Elem):
        return
    if isinstance(node, Not):
        _normalize(rec, pos + (0,))
        _negate(rec, pos)
        return
    _normalize(rec, pos + (0,))
    _normalize(rec, pos + (1,))
    if isinstance(node, Grad):
        _link(rec, pos)


def _link(rec: _Recorder, pos: Position) -> None:
    """Bring ``A > B`` with A, B in UCE into UCE, in three phases."""
    sites = _spread(rec, pos, left=True)
    chains = [p for site in sites for p in _spread(rec, site, left=False)]
    for p in chains:
        _expand(rec, p)


def _spread(rec: _Recorder, pos: Position, left: bool) -> list[Position]:
    # GRAD2/3 over the object side, or GRAD4/5 over the attribute side.
    node = rec.at(pos)
    side = node.left if left else node.right
    if isinstance(side, And):
        rule = Rule.GRAD2 if left else Rule.GRAD4
    elif isinstance(side, Or):
        rule = Rule.GRAD3 if left else Rule.GRAD5
    else:
        return [pos]
    rec.apply(rule, pos)
    return _spread(rec, pos + (0,), left) + _spread(rec, pos + (1,), left)


def _expand(rec: _Recorder, pos: Position) -> None:
    # node is (unit chain or s) > (unit chain or s)
    node = rec.at(pos)
    if isinstance(node.left, Elem):
        return
    rec.apply(Rule.GRAD1, pos)
    # (x > g) & ((x > rest) | (x > (rest > g))): the innermost link goes first
    _link(rec, pos + (1, 1, 1))
    _link(rec, pos + (1, 1))


def _negate(rec: _Recorder, pos: Position) -> None:
    arg = rec.at(pos).arg
    if isinstance(arg, Elem):
        rec.apply(Rule.NEG1, pos)
    elif isinstance(arg, (And, Or)):
        rec.apply(Rule.NEG2 if isinstance(arg, And) else Rule.NEG3, pos)
        _negate(rec, pos + (0,))
        _negate(rec, pos + (1,))
    else:
        rec.apply(Rule.NEG4, pos)
        _negate(rec, pos + (1, 1))
        _link(rec, pos + (1,))


@contextlib.contextmanager
def _paused_gc():
    # Formula trees are acyclic, so refcounting frees them; the cyclic
    # collector would only rescan the growing trace on every generation sweep.
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


# -- random strategy ----------------------------------------------------------


def _nth_redex(f: Formula, k: int) -> tuple[Rule, Position]:
    pos: list[int] = []
    while True:
        own = own_rules(f)
        if k < len(own):
            return own[k], tuple(pos)
        k -= len(own)
        for i, c in enumerate(f.children()):
            n = redex_count(c)
            if k < n:
                pos.append(i)
                f = c
                break
            k -= n
        else:
            raise IndexError("redex index out of range")


def _random_walk(rec: _Recorder, rng: random.Random, max_steps: int | None) -> None:
    while True:
        n = redex_count(rec.current)
        if n == 0:
            return
        if max_steps is not None and len(rec.steps) >= max_steps:
            raise RuntimeError(f"no normal form within {max_steps} steps")
        rule, pos = _nth_redex(rec.current, rng.randrange(n))
        rec.apply(rule, pos)


def reduce_to_uce(
    f: Formula,
    strategy: str = "deterministic",
    seed: int | None = None,
    rng: random.Random | None = None,
    max_steps: int | None = None,
) -> Trace:
    """Reduce ``f`` to unit chain expansion, recording every step.

    ``strategy`` is ``"deterministic"`` (innermost arguments first, negations
    pushed only through UCE arguments) or ``"random"``, which picks uniformly
    among all current redexes using ``rng`` or ``random.Random(seed)``.
    """
    if strategy not in ("deterministic", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rec = _Recorder(f)
    with _paused_gc():
        if strategy == "deterministic":
            _normalize(rec, ())
        else:
            _random_walk(rec, rng or random.Random(seed), max_steps)
    return Trace(f, tuple(rec.steps), rec.current)


def normal_form(f: Formula) -> Formula:
    """Deterministic UCE reduct of ``f`` without recording a trace."""
    match f:
        case Elem():
            return f
        case Not(arg):
            return negate_uce(normal_form(arg))
        case And(l, r):
            return And(normal_form(l), normal_form(r))
        case Or(l, r):
            return Or(normal_form(l), normal_form(r))
        case Grad(l, r):
            return link(normal_form(l), normal_form(r))
    raise TypeError(f"not a formula: {f!r}")


def link(left: Formula, right: Formula) -> Formula:
    """UCE reduct of ``left > right`` for ``left``, ``right`` in UCE."""
    if isinstance(left, And):
        return And(link(left.left, right), link(left.right, right))
    if isinstance(left, Or):
        return Or(link(left.left, right), link(left.right, right))
    if isinstance(right, And):
        return And(link(left, right.left), link(left, right.right))
    if isinstance(right, Or):
        return Or(link(left, right.left), link(left, right.right))
    if isinstance(left, Elem):
        return Grad(left, right)
    head, rest = left.left, left.right
    return And(Grad(head, right), Or(Grad(head, rest), link(head, link(rest, right))))


# -- negation of UCE formulas -------------------------------------------------


def recursive_reduce(f: Formula) -> Formula:
    """Canonical UCE form of the negation of a UCE formula.

    Swaps & and |, complements non-chain S-elements, turns each chain
    ``s > tail`` into ``s^c | (s > recursive_reduce(tail))`` and distributes
    the new chains back into unit chain expansion.
    """
    require_uce(f, "recursive_reduce")
    return negate_uce(f)


def negate_uce(f: Formula) -> Formula:
    if isinstance(f, And):
        return Or(negate_uce(f.left), negate_uce(f.right))
    if isinstance(f, Or):
        return And(negate_uce(f.left), negate_uce(f.right))
    if isinstance(f, Elem):
        return Elem(f.s.complement())
    head = f.left
    return Or(Elem(head.s.complement()), link(head, negate_uce(f.right)))


# -- normal forms -------------------------------------------------------------


def _clauses(f: Formula, outer: type, inner: type) -> list[list[Formula]]:
    if isinstance(f, outer):
        return _clauses(f.left, outer, inner) + _clauses(f.right, outer, inner)
    if isinstance(f, inner):
        lhs = _clauses(f.left, outer, inner)
        rhs = _clauses(f.right, outer, inner)
        return [a + b for a in lhs for b in rhs]
    return [[f]]


def _fold(items: list[Formula], op: type) -> Formula:
    out = items[0]
    for x in items[1:]:
        out = op(out, x)
    return out


def to_dnf(f: Formula) -> Formula:
    """Distribute & over |, treating unit chains as atoms. No simplification."""
    require_uce(f, "to_dnf")
    return _fold([_fold(c, And) for c in _clauses(f, Or, And)], Or)


def to_cnf(f: Formula) -> Formula:
    require_uce(f, "to_cnf")
    return _fold([_fold(c, Or) for c in _clauses(f, And, Or)], And)


def _flat(f: Formula, op: type) -> list[Formula]:
    if isinstance(f, op):
        return _flat(f.left, op) + _flat(f.right, op)
    return [f]


def _is_normal(f: Formula, outer: type, inner: type) -> bool:
    for clause in _flat(f, outer):
        for unit in _flat(clause, inner):
            if isinstance(unit, (And, Or, Not)) or unit_chain_elems(unit) is None:
                return False
    return True


def is_dnf(f: Formula) -> bool:
    return _is_normal(f, Or, And)


def is_cnf(f: Formula) -> bool:
    return _is_normal(f, And, Or)


__all__ = [
    "Rule",
    "NotARedexError",
    "ReductionStep",
    "Trace",
    "applicable_rules",
    "apply_rule",
    "reduce_to_uce",
    "normal_form",
    "recursive_reduce",
    "to_dnf",
    "to_cnf",
    "is_dnf",
    "is_cnf",
    "is_unit_chain_expansion",
]
