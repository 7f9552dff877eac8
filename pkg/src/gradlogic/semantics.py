"""Valuation frames, evaluation of UCE formulas, and the frame-enumeration oracle.

The local interpretation of an S-element depends only on the length of the
prefix in front of it, so a frame is stored as one truth table per object
level.  Only positive atoms are stored: a complemented literal reads as the
complement of its atom, top always reads 1 and bot always reads 0.

Restricting frames to the atoms of the formula is sound: evaluation is
homomorphic, so atoms that do not occur in a formula cannot change its value,
and validity over all frames equals validity over the restricted ones.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from gradlogic.core import (
    RESERVED,
    And,
    Elem,
    Formula,
    Or,
    SElem,
    UnitChain,
    atoms as formula_atoms,
    iter_units,
    max_object_level,
    require_uce,
    unit_chain_elems,
)
from gradlogic.core import _NAME_RE
from gradlogic.reduce import normal_form

MAX_FRAME_BITS = 24


class DepthError(ValueError):
    """E_DEPTH: the formula reaches deeper than the frame has levels."""

    code = "E_DEPTH"


class TooLargeError(ValueError):
    """E_TOO_LARGE: frame enumeration would exceed the bit cap."""

    code = "E_TOO_LARGE"


class FrameFormatError(ValueError):
    code = "E_FORMAT"


@dataclass(frozen=True)
class ValuationFrame:
    levels: tuple[Mapping[str, int], ...]

    def __post_init__(self):
        if not self.levels:
            raise ValueError("a frame has at least one level")
        frozen = tuple(MappingProxyType({k: int(bool(v)) for k, v in lv.items()}) for lv in self.levels)
        object.__setattr__(self, "levels", frozen)

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def value(self, level: int, s: SElem) -> int:
        """Local interpretation of ``s`` at object level ``level``."""
        if level > self.depth:
            raise DepthError(f"level {level} is beyond frame depth {self.depth}")
        if s.kind == "top":
            return 1
        if s.kind == "bot":
            return 0
        try:
            v = self.levels[level][s.name]
        except KeyError:
            raise KeyError(f"atom {s.name!r} has no value at level {level}") from None
        return 1 - v if s.negated else v

    def to_json(self) -> str:
        levels = [{k: bool(v) for k, v in sorted(lv.items())} for lv in self.levels]
        return json.dumps({"levels": levels}, separators=(",", ":"))

    def __eq__(self, other):
        if not isinstance(other, ValuationFrame):
            return NotImplemented
        return [dict(x) for x in self.levels] == [dict(x) for x in other.levels]

    def __hash__(self):
        return hash(tuple(frozenset(x.items()) for x in self.levels))


def frame_from_json(text: str, atoms: Iterable[str] = ()) -> ValuationFrame:
    """Load a frame file; atoms absent from a level (among ``atoms``) read as false."""
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise FrameFormatError(f"frame is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("levels"), list) or not doc["levels"]:
        raise FrameFormatError('frame must be an object with a non-empty "levels" list')
    universe = set(atoms)
    levels = []
    for i, lv in enumerate(doc["levels"]):
        if not isinstance(lv, dict):
            raise FrameFormatError(f"level {i} is not an object")
        for k, v in lv.items():
            if k in RESERVED or not _NAME_RE.match(k):
                raise FrameFormatError(f"level {i}: {k!r} is not a positive atom name")
            if not isinstance(v, bool):
                raise FrameFormatError(f"level {i}: value of {k!r} must be true or false")
        levels.append({**{a: 0 for a in universe}, **{k: int(v) for k, v in lv.items()}})
    return ValuationFrame(tuple(levels))


def eval_chain(frame: ValuationFrame, u: UnitChain | Sequence[SElem]) -> int:
    """1 iff every position of the chain reads 1 at its own level."""
    elems = u.elems if isinstance(u, UnitChain) else u
    if len(elems) - 1 > frame.depth:
        raise DepthError(f"chain of length {len(elems)} needs frame depth {len(elems) - 1}")
    return int(all(frame.value(i, s) for i, s in enumerate(elems)))


def evaluate(frame: ValuationFrame, f: Formula) -> int:
    """Value of a UCE formula under ``frame``; And/Or map to meta-level and/or."""
    require_uce(f, "evaluate")
    if max_object_level(f) > frame.depth:
        raise DepthError(f"formula reaches level {max_object_level(f)}, frame depth is {frame.depth}")
    return _eval(frame, f)


def _eval(frame: ValuationFrame, f: Formula) -> int:
    if isinstance(f, And):
        return _eval(frame, f.left) and _eval(frame, f.right)
    if isinstance(f, Or):
        return _eval(frame, f.left) or _eval(frame, f.right)
    return eval_chain(frame, unit_chain_elems(f))


def _check_size(n_atoms: int, depth: int) -> int:
    bits = n_atoms * (depth + 1)
    if bits > MAX_FRAME_BITS:
        raise TooLargeError(f"{bits} frame bits exceed the cap of {MAX_FRAME_BITS}")
    return bits


def enumerate_frames(atoms: Iterable[str], depth: int) -> Iterator[ValuationFrame]:
    """All frames over ``atoms`` with ``depth + 1`` levels.

    Order is lexicographic over the bit vector (level 0 atoms sorted, then
    level 1, ...), first bit most significant, starting from all-false.
    """
    names = sorted(set(atoms))
    _check_size(len(names), depth)
    width = len(names)
    for bits in itertools.product((0, 1), repeat=width * (depth + 1)):
        yield ValuationFrame(
            tuple(dict(zip(names, bits[lv * width:(lv + 1) * width])) for lv in range(depth + 1))
        )


def frame_at(atoms: Iterable[str], depth: int, index: int) -> ValuationFrame:
    """The ``index``-th frame of :func:`enumerate_frames`."""
    names = sorted(set(atoms))
    n = _check_size(len(names), depth)
    levels = []
    for lv in range(depth + 1):
        level = {}
        for i, a in enumerate(names):
            j = lv * len(names) + i
            level[a] = (index >> (n - 1 - j)) & 1
        levels.append(level)
    return ValuationFrame(tuple(levels))


class TruthTable:
    """Bit-parallel evaluation of a UCE formula under every enumerated frame.

    Bit ``i`` of a mask is the value under the ``i``-th frame of
    :func:`enumerate_frames` for the same atoms and depth.
    """

    def __init__(self, atoms: Iterable[str], depth: int):
        self.names = sorted(set(atoms))
        self.depth = depth
        self.bits = _check_size(len(self.names), depth)
        self.n_frames = 1 << self.bits
        self.full = (1 << self.n_frames) - 1
        self._index = {a: i for i, a in enumerate(self.names)}
        self._masks: dict[int, int] = {}

    def _var(self, j: int) -> int:
        mask = self._masks.get(j)
        if mask is None:
            k = self.bits - 1 - j
            half = 1 << k
            period = half << 1
            unit = ((1 << half) - 1) << half
            mask = unit * (self.full // ((1 << period) - 1))
            self._masks[j] = mask
        return mask

    def selem(self, level: int, s: SElem) -> int:
        if level > self.depth:
            raise DepthError(f"level {level} is beyond depth {self.depth}")
        if s.kind == "top":
            return self.full
        if s.kind == "bot":
            return 0
        mask = self._var(level * len(self.names) + self._index[s.name])
        return self.full ^ mask if s.negated else mask

    def of(self, f: Formula) -> int:
        if isinstance(f, And):
            return self.of(f.left) & self.of(f.right)
        if isinstance(f, Or):
            return self.of(f.left) | self.of(f.right)
        elems = unit_chain_elems(f)
        if elems is None:
            require_uce(f, "truth table")
        out = self.full
        for i, s in enumerate(elems):
            out &= self.selem(i, s)
        return out


def truth_table(f: Formula, atoms: Iterable[str] | None = None, depth: int | None = None) -> int:
    require_uce(f, "truth_table")
    if atoms is None:
        atoms = formula_atoms(f)
    if depth is None:
        depth = max_object_level(f)
    return TruthTable(atoms, depth).of(f)


@dataclass(frozen=True)
class Verdict:
    kind: str  # "valid" | "unsatisfiable" | "contingent"
    witness_true: ValuationFrame | None = None
    witness_false: ValuationFrame | None = None

    def __post_init__(self):
        if self.kind not in ("valid", "unsatisfiable", "contingent"):
            raise ValueError(f"unknown verdict {self.kind!r}")
        if self.kind == "valid" and self.witness_false is not None:
            raise ValueError("a valid verdict has no falsifying witness")
        if self.kind == "unsatisfiable" and self.witness_true is not None:
            raise ValueError("an unsatisfiable verdict has no satisfying witness")
        if self.kind == "contingent" and (self.witness_true is None or self.witness_false is None):
            raise ValueError("a contingent verdict carries both witnesses")

    @property
    def valid(self) -> bool:
        return self.kind == "valid"

    @property
    def satisfiable(self) -> bool:
        return self.kind != "unsatisfiable"


def _lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def classify_oracle(f: Formula) -> Verdict:
    """Classify ``f`` by evaluating its UCE reduct under every frame.

    Witnesses are the lexicographically first satisfying / falsifying frames.
    """
    g = normal_form(f)
    names = sorted(formula_atoms(g))
    depth = max(len(u) - 1 for u in iter_units(g))
    table = TruthTable(names, depth)
    tt = table.of(g)
    sat_mask = tt
    unsat_mask = table.full ^ tt
    w_true = frame_at(names, depth, _lowest_bit(sat_mask)) if sat_mask else None
    w_false = frame_at(names, depth, _lowest_bit(unsat_mask)) if unsat_mask else None
    if not unsat_mask:
        return Verdict("valid", witness_true=w_true)
    if not sat_mask:
        return Verdict("unsatisfiable", witness_false=w_false)
    return Verdict("contingent", w_true, w_false)


def classify_by_enumeration(f: Formula) -> Verdict:
    """Slow reference path for :func:`classify_oracle`: one evaluation per frame."""
    g = normal_form(f)
    names = formula_atoms(g)
    depth = max_object_level(g)
    w_true = w_false = None
    for frame in enumerate_frames(names, depth):
        if evaluate(frame, g):
            w_true = w_true or frame
        else:
            w_false = w_false or frame
        if w_true and w_false:
            return Verdict("contingent", w_true, w_false)
    if w_false is None:
        return Verdict("valid", witness_true=w_true)
    return Verdict("unsatisfiable", witness_false=w_false)
