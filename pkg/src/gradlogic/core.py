"""Formula syntax: S-elements, the formula tree, unit chains and metrics.

Formulas are immutable trees built from five node types::

    Elem(s)        a leaf holding an S-element (atom, complemented atom, top, bot)
    And(l, r)      conjunction
    Or(l, r)       disjunction
    Not(f)         negation
    Grad(l, r)     the gradual connective: ``l`` is the object, ``r`` its attribute

A chain ``s0 > s1 > s2`` is stored right-nested as ``Grad(s0, Grad(s1, s2))``.
Equality is purely structural; no associativity or commutativity is applied.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

RESERVED = frozenset({"top", "bot"})
_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True)
class SElem:
    """An element of S: a literal with polarity, or one of top/bot."""

    kind: str  # "top" | "bot" | "lit"
    name: str | None = None
    negated: bool = False

    def __post_init__(self):
        if self.kind == "lit":
            if not self.name or not _NAME_RE.match(self.name):
                raise ValueError(f"invalid atom name {self.name!r}")
            if self.name in RESERVED:
                raise ValueError(f"atom name {self.name!r} is reserved")
        elif self.kind in ("top", "bot"):
            if self.name is not None or self.negated:
                raise ValueError(f"{self.kind} carries no name or polarity")
        else:
            raise ValueError(f"unknown S-element kind {self.kind!r}")

    @property
    def is_lit(self) -> bool:
        return self.kind == "lit"

    def complement(self) -> SElem:
        if self.kind == "top":
            return BOT
        if self.kind == "bot":
            return TOP
        return SElem("lit", self.name, not self.negated)

    def __str__(self):
        if self.kind != "lit":
            return self.kind
        return self.name + ("'" if self.negated else "")


TOP = SElem("top")
BOT = SElem("bot")


def lit(name: str, negated: bool = False) -> SElem:
    return SElem("lit", name, negated)


def complement(s: SElem) -> SElem:
    return s.complement()


class Formula:
    """Base class of formula nodes."""

    __slots__ = ()

    def children(self) -> tuple[Formula, ...]:
        raise NotImplementedError

    def __str__(self):
        from gradlogic.parser import pretty

        return pretty(self)


@dataclass(frozen=True, eq=True)
class Elem(Formula):
    s: SElem

    def children(self):
        return ()

    @cached_property
    def size(self) -> int:
        return 1

    @cached_property
    def _hash(self) -> int:
        return hash(("elem", self.s))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    @cached_property
    def size(self) -> int:
        return self.left.size + self.right.size + 1

    @cached_property
    def _hash(self) -> int:
        return hash((type(self).__name__, self.left, self.right))

    def __hash__(self):
        return self._hash


# Subclasses are not re-decorated so they keep the cached hash of _Binary.
class And(_Binary):
    __slots__ = ()


class Or(_Binary):
    __slots__ = ()


class Grad(_Binary):
    __slots__ = ()


@dataclass(frozen=True, eq=True)
class Not(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)

    @cached_property
    def size(self) -> int:
        return self.arg.size + 1

    @cached_property
    def _hash(self) -> int:
        return hash(("not", self.arg))

    def __hash__(self):
        return self._hash


# Leaf shorthands; handy in tests and at the REPL.
def atom(name: str) -> Elem:
    return Elem(lit(name))


def natom(name: str) -> Elem:
    return Elem(lit(name, True))


ETOP = Elem(TOP)
EBOT = Elem(BOT)


def chain(*parts: Formula | SElem) -> Formula:
    """Right-nested ``Grad`` over the given parts: ``chain(a, b, c) = a > (b > c)``."""
    nodes = [Elem(p) if isinstance(p, SElem) else p for p in parts]
    if not nodes:
        raise ValueError("chain needs at least one part")
    out = nodes[-1]
    for n in reversed(nodes[:-1]):
        out = Grad(n, out)
    return out


# -- unit chains and prefixes -------------------------------------------------


@dataclass(frozen=True)
class UnitChain:
    elems: tuple[SElem, ...]

    def __post_init__(self):
        if not self.elems:
            raise ValueError("a unit chain has at least one element")

    def to_formula(self) -> Formula:
        return chain(*self.elems)

    @classmethod
    def from_formula(cls, f: Formula) -> UnitChain:
        out = []
        while isinstance(f, Grad):
            if not isinstance(f.left, Elem):
                raise ValueError("not a unit chain: head is not an S-element")
            out.append(f.left.s)
            f = f.right
        if not isinstance(f, Elem):
            raise ValueError("not a unit chain: tail is not an S-element")
        out.append(f.s)
        return cls(tuple(out))

    def __len__(self):
        return len(self.elems)


@dataclass(frozen=True)
class Prefix:
    """A finite, possibly empty, sequence of S-elements (the empty one is epsilon)."""

    elems: tuple[SElem, ...] = ()

    def __len__(self):
        return len(self.elems)


def unit_chain_elems(f: Formula) -> tuple[SElem, ...] | None:
    """Elements of ``f`` if it is a unit chain or a single S-element, else None."""
    out = []
    while isinstance(f, Grad):
        if not isinstance(f.left, Elem):
            return None
        out.append(f.left.s)
        f = f.right
    if not isinstance(f, Elem):
        return None
    out.append(f.s)
    return tuple(out)


# -- metrics ------------------------------------------------------------------


def f_size(f: Formula) -> int:
    return f.size


def neg_max(f: Formula) -> int:
    match f:
        case Elem():
            return 0
        case Not(arg):
            return 1 + neg_max(arg)
        case _Binary(left, right):
            return max(neg_max(left), neg_max(right))
    raise TypeError(f"not a formula: {f!r}")


def is_unit_chain_expansion(f: Formula) -> bool:
    """True iff ``f`` is negation-free and every chain in it is a unit chain."""
    match f:
        case Elem():
            return True
        case Not():
            return False
        case And(l, r) | Or(l, r):
            return is_unit_chain_expansion(l) and is_unit_chain_expansion(r)
        case Grad():
            return unit_chain_elems(f) is not None
    raise TypeError(f"not a formula: {f!r}")


class NotUCEError(ValueError):
    """Raised when an operation needing unit chain expansion gets other input."""


def require_uce(f: Formula, op: str = "operation") -> None:
    if not is_unit_chain_expansion(f):
        raise NotUCEError(f"{op} requires a formula in unit chain expansion")


def iter_units(f: Formula) -> Iterator[tuple[SElem, ...]]:
    """Yield the element tuple of every leaf and unit chain of a UCE formula."""
    match f:
        case And(l, r) | Or(l, r):
            yield from iter_units(l)
            yield from iter_units(r)
        case _:
            elems = unit_chain_elems(f)
            if elems is None:
                raise NotUCEError("formula is not in unit chain expansion")
            yield elems


def max_object_level(f: Formula) -> int:
    require_uce(f, "max_object_level")
    return max(len(u) - 1 for u in iter_units(f))


def has_grad(f: Formula) -> bool:
    match f:
        case Grad():
            return True
        case Elem():
            return False
    return any(has_grad(c) for c in f.children())


def selems(f: Formula) -> Iterator[SElem]:
    """All S-elements of ``f`` in left-to-right order."""
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Elem):
            yield node.s
        else:
            stack.extend(reversed(node.children()))


def atoms(f: Formula) -> frozenset[str]:
    """Distinct atom names of ``f``, polarity collapsed."""
    return frozenset(s.name for s in selems(f) if s.is_lit)
