"""Randomised property checks for reduction, evaluation and decision.

Each law takes ``(rng, cfg)`` and returns ``None`` when the sampled instance
satisfies it, or a short counterexample description.  ``run_laws`` drives
them all; the CLI ``check-laws`` command and the test suite share it.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from gradlogic.core import (
    And,
    EBOT,
    ETOP,
    Elem,
    Formula,
    Grad,
    Not,
    Or,
    atoms,
    has_grad,
    is_unit_chain_expansion,
    max_object_level,
    unit_chain_elems,
)
from gradlogic.decide import LevelInterpretation, _squash, decide_valid, falsified_at, tree_bound
from gradlogic.gen import random_formula, random_uce
from gradlogic.reduce import normal_form, recursive_reduce, reduce_to_uce
from gradlogic.semantics import (
    TruthTable,
    ValuationFrame,
    classify_oracle,
    evaluate,
)

ATOM_NAMES = "abcdefghij"


@dataclass(frozen=True)
class LawConfig:
    max_atoms: int = 3
    max_depth: int = 2
    seeds: tuple[int, ...] = (0, 1, 2, 3, 4)

    @property
    def names(self) -> str:
        return ATOM_NAMES[: self.max_atoms]


def random_frame(rng: random.Random, names: Iterable[str], depth: int) -> ValuationFrame:
    names = sorted(set(names))
    return ValuationFrame(tuple({a: rng.getrandbits(1) for a in names} for _ in range(depth + 1)))


def frame_for(rng: random.Random, *fs: Formula) -> ValuationFrame:
    """A random frame deep and wide enough for every UCE formula in ``fs``."""
    names = set().union(*(atoms(f) for f in fs))
    return random_frame(rng, names, max(max_object_level(f) for f in fs))


def same_table(*fs: Formula) -> bool:
    """True iff the UCE formulas agree under every frame over their joint atoms and depth."""
    names = set().union(*(atoms(f) for f in fs))
    table = TruthTable(names, max(max_object_level(f) for f in fs))
    first = table.of(fs[0])
    return all(table.of(g) == first for g in fs[1:])


def propositional_classify(f: Formula) -> str:
    """Plain truth-table classification of a Grad-free formula.

    ``a`` and ``a'`` are complementary propositional literals; nothing from
    the reduction or evaluation modules is used.
    """
    if has_grad(f):
        raise ValueError("formula contains the gradual connective")
    names = sorted(atoms(f))

    def value(g: Formula, env: dict[str, bool]) -> bool:
        if isinstance(g, Elem):
            s = g.s
            if s.kind == "top":
                return True
            if s.kind == "bot":
                return False
            return env[s.name] != s.negated
        if isinstance(g, Not):
            return not value(g.arg, env)
        if isinstance(g, And):
            return value(g.left, env) and value(g.right, env)
        return value(g.left, env) or value(g.right, env)

    seen = {value(f, dict(zip(names, bits))) for bits in itertools.product((False, True), repeat=len(names))}
    if seen == {True}:
        return "valid"
    if seen == {False}:
        return "unsatisfiable"
    return "contingent"


def _uce(rng: random.Random, cfg: LawConfig) -> Formula:
    return random_uce(rng, cfg.names, max_units=4, max_level=cfg.max_depth)


def _bounded(rng: random.Random, cfg: LawConfig, max_size: int = 12) -> tuple[Formula, Formula]:
    # Rejection-sample a formula whose reduct stays within the depth limit.
    while True:
        f = random_formula(rng, cfg.names, max_size=max_size, max_neg=3)
        g = normal_form(f)
        if max_object_level(g) <= cfg.max_depth:
            return f, g


# -- reduce -------------------------------------------------------------------


def law_totality(rng, cfg):
    f = random_formula(rng, cfg.names, max_size=25, max_neg=3)
    for seed in (None, *cfg.seeds):
        strategy = "deterministic" if seed is None else "random"
        final = reduce_to_uce(f, strategy, seed=seed).final
        if not is_unit_chain_expansion(final):
            return f"{f}: {strategy} seed={seed} stopped outside UCE"
    return None


def law_confluence(rng, cfg):
    f, g = _bounded(rng, cfg)
    reducts = [g] + [reduce_to_uce(f, "random", seed=s).final for s in cfg.seeds]
    if not same_table(*reducts):
        return f"{f}: reducts differ in value"
    return None


def law_negation_canonical(rng, cfg):
    f = _uce(rng, cfg)
    expected = recursive_reduce(f)
    for seed in (None, *cfg.seeds):
        strategy = "deterministic" if seed is None else "random"
        got = reduce_to_uce(Not(f), strategy, seed=seed).final
        if got != expected:
            return f"!({f}) via {strategy} seed={seed}: {got} != {expected}"
    return None


def _hole_context(rng, cfg, negation: bool):
    # A random context with one hole, up to two binary layers deep.
    layers = []
    for _ in range(rng.randint(0, 2)):
        if negation and rng.random() < 0.2:
            layers.append((Not, None, 0))
            continue
        sibling = random_formula(rng, cfg.names, max_size=3, max_neg=1 if negation else 0)
        layers.append((rng.choice((And, Or, Grad)), sibling, rng.randint(0, 1)))

    def fill(f: Formula) -> Formula:
        for op, sibling, side in layers:
            if op is Not:
                f = Not(f)
            else:
                f = op(f, sibling) if side == 0 else op(sibling, f)
        return f

    return fill


_GRAD_PAIRS = [
    lambda a, b, c: (Grad(And(a, b), c), And(Grad(a, c), Grad(b, c))),
    lambda a, b, c: (Grad(Or(a, b), c), Or(Grad(a, c), Grad(b, c))),
    lambda a, b, c: (Grad(a, And(b, c)), And(Grad(a, b), Grad(a, c))),
    lambda a, b, c: (Grad(a, Or(b, c)), Or(Grad(a, b), Grad(a, c))),
    lambda a, b, c: (Grad(Grad(a, b), c), And(Grad(a, c), Or(Grad(a, b), Grad(a, Grad(b, c))))),
]


def _other_pairs(s: Formula):
    return [
        lambda a, b: (Not(And(a, b)), Or(Not(a), Not(b))),
        lambda a, b: (Not(Or(a, b)), And(Not(a), Not(b))),
        lambda a, b: (Or(s, s), s),
        lambda a, b: (Or(Or(s, a), s), Or(s, a)),
        lambda a, b: (And(s, s), s),
        lambda a, b: (And(And(s, a), s), And(s, a)),
        lambda a, b: (Elem(s.s.complement()), Not(s)),
    ]


def law_bisimulation(rng, cfg):
    """Both sides of a bisimulation pair, in a random context, have reducts of equal value."""
    while True:
        if rng.random() < 0.5:
            parts = [random_formula(rng, cfg.names, max_size=4, max_neg=0) for _ in range(3)]
            lhs, rhs = rng.choice(_GRAD_PAIRS)(*parts)
            fill = _hole_context(rng, cfg, negation=False)
        else:
            parts = [random_formula(rng, cfg.names, max_size=4, max_neg=2) for _ in range(2)]
            s = random_uce(rng, cfg.names, max_units=1, max_level=0)
            lhs, rhs = rng.choice(_other_pairs(s))(*parts)
            fill = _hole_context(rng, cfg, negation=True)
        f, f2 = fill(lhs), fill(rhs)
        reducts = [normal_form(f), normal_form(f2)]
        reducts += [reduce_to_uce(g, "random", seed=rng.randrange(1 << 30)).final for g in (f, f2)]
        bits = len(set().union(*(atoms(r) for r in reducts))) * (1 + max(map(max_object_level, reducts)))
        if bits <= 16:
            break
    if not same_table(*reducts):
        return f"{f} vs {f2}: reducts differ in value"
    return None


# -- semantics ----------------------------------------------------------------


def _pointwise(rng, cfg, build: Callable[..., tuple[Formula, Formula]], arity: int, label: str):
    fs = [_uce(rng, cfg) for _ in range(arity)]
    lhs, rhs = build(*fs)
    frame = frame_for(rng, lhs, rhs)
    if evaluate(frame, lhs) != evaluate(frame, rhs):
        return f"{label}: {lhs} vs {rhs} under {frame.to_json()}"
    return None


def _law(build, arity, label):
    def law(rng, cfg):
        return _pointwise(rng, cfg, build, arity, label)

    law.__name__ = f"law_{label}"
    return law


def law_complementation(rng, cfg):
    f = _uce(rng, cfg)
    nf = recursive_reduce(f)
    frame = frame_for(rng, f, nf)
    if evaluate(frame, Or(f, nf)) != 1 or evaluate(frame, And(f, nf)) != 0:
        return f"{f} and its negation {nf} under {frame.to_json()}"
    return None


def law_elementary_complementation(rng, cfg):
    unit = random_uce(rng, cfg.names, max_units=1, max_level=cfg.max_depth)
    nf = recursive_reduce(unit)
    frame = frame_for(rng, unit, nf)
    if evaluate(frame, unit) + evaluate(frame, nf) != 1:
        return f"unit {unit} under {frame.to_json()}"
    return None


def law_double_negation(rng, cfg):
    f = _uce(rng, cfg)
    back = recursive_reduce(recursive_reduce(f))
    frame = frame_for(rng, f, back)
    if evaluate(frame, back) != evaluate(frame, f):
        return f"{f} under {frame.to_json()}"
    return None


def law_non_paraconsistency(rng, cfg):
    f = _uce(rng, cfg)
    nf = recursive_reduce(f)
    frame = frame_for(rng, f, nf)
    if evaluate(frame, f) == evaluate(frame, nf):
        return f"{f} and {nf} agree under {frame.to_json()}"
    return None


def law_classical_fragment(rng, cfg):
    f = random_formula(rng, cfg.names, max_size=15, max_neg=3, grad=False)
    want = propositional_classify(f)
    got = classify_oracle(f).kind
    if got != want:
        return f"{f}: oracle {got}, truth table {want}"
    return None


# -- decide -------------------------------------------------------------------


def law_decide_agreement(rng, cfg):
    f, g = _bounded(rng, cfg)
    want = classify_oracle(g).kind == "valid"
    got = decide_valid(g, "levelwise").result == 1
    if got != want:
        return f"{f}: levelwise {int(got)}, oracle valid={want}"
    return None


def law_termination(rng, cfg):
    f, g = _bounded(rng, cfg)
    for engine in ("levelwise", "faithful"):
        report = decide_valid(g, engine)
        if report.recursion_depth_max > max_object_level(g) + 1:
            return f"{f}: {engine} recursed {report.recursion_depth_max} levels"
    return None


def law_shared_early_exit(rng, cfg):
    f, g = _bounded(rng, cfg)
    top = _squash(g, 0)
    names = sorted(atoms(top))
    for bits in itertools.product((0, 1), repeat=len(names)):
        if falsified_at(top, LevelInterpretation(0, dict(zip(names, bits)))):
            for engine in ("levelwise", "faithful"):
                if decide_valid(g, engine).result != 0:
                    return f"{f}: level 0 is refutable but {engine} accepts"
            break
    return None


def law_cost_bound(rng, cfg):
    f, g = _bounded(rng, cfg)
    report = decide_valid(g, "levelwise")
    if report.frames_examined > tree_bound(g):
        return f"{f}: {report.frames_examined} frames, bound {tree_bound(g)}"
    return None


def law_witness(rng, cfg):
    f, g = _bounded(rng, cfg)
    report = decide_valid(g, "levelwise")
    if report.result == 0 and evaluate(report.witness_false, g) != 0:
        return f"{f}: witness {report.witness_false.to_json()} does not falsify"
    return None


LAWS: dict[str, Callable[[random.Random, LawConfig], str | None]] = {
    "reduce.totality": law_totality,
    "reduce.confluence": law_confluence,
    "reduce.negation_canonical": law_negation_canonical,
    "reduce.bisimulation": law_bisimulation,
    "semantics.complementation": law_complementation,
    "semantics.elementary_complementation": law_elementary_complementation,
    "semantics.double_negation": law_double_negation,
    "semantics.non_paraconsistency": law_non_paraconsistency,
    "semantics.associativity_and": _law(lambda a, b, c: (And(And(a, b), c), And(a, And(b, c))), 3, "associativity_and"),
    "semantics.associativity_or": _law(lambda a, b, c: (Or(Or(a, b), c), Or(a, Or(b, c))), 3, "associativity_or"),
    "semantics.commutativity_and": _law(lambda a, b: (And(a, b), And(b, a)), 2, "commutativity_and"),
    "semantics.commutativity_or": _law(lambda a, b: (Or(a, b), Or(b, a)), 2, "commutativity_or"),
    "semantics.distributivity_and": _law(
        lambda a, b, c: (And(a, Or(b, c)), Or(And(a, b), And(a, c))), 3, "distributivity_and"
    ),
    "semantics.distributivity_or": _law(
        lambda a, b, c: (Or(a, And(b, c)), And(Or(a, b), Or(a, c))), 3, "distributivity_or"
    ),
    "semantics.idempotence_and": _law(lambda a: (And(a, a), a), 1, "idempotence_and"),
    "semantics.idempotence_or": _law(lambda a: (Or(a, a), a), 1, "idempotence_or"),
    "semantics.absorption_and": _law(lambda a, b: (And(a, Or(a, b)), a), 2, "absorption_and"),
    "semantics.absorption_or": _law(lambda a, b: (Or(a, And(a, b)), a), 2, "absorption_or"),
    "semantics.annihilation_and": _law(lambda a: (And(a, EBOT), EBOT), 1, "annihilation_and"),
    "semantics.annihilation_or": _law(lambda a: (Or(a, ETOP), ETOP), 1, "annihilation_or"),
    "semantics.identity_and": _law(lambda a: (And(a, ETOP), a), 1, "identity_and"),
    "semantics.identity_or": _law(lambda a: (Or(a, EBOT), a), 1, "identity_or"),
    "semantics.classical_fragment": law_classical_fragment,
    "decide.agreement": law_decide_agreement,
    "decide.termination": law_termination,
    "decide.shared_early_exit": law_shared_early_exit,
    "decide.cost_bound": law_cost_bound,
    "decide.witness": law_witness,
}


@dataclass
class LawResult:
    name: str
    passed: int = 0
    failed: int = 0
    examples: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def run_laws(
    iters: int = 100,
    seed: int = 0,
    cfg: LawConfig = LawConfig(),
    names: Iterable[str] | None = None,
) -> list[LawResult]:
    """Run each selected law ``iters`` times from one seeded generator."""
    rng = random.Random(seed)
    out = []
    for name in names or LAWS:
        law = LAWS[name]
        res = LawResult(name)
        for _ in range(iters):
            problem = law(rng, cfg)
            if problem is None:
                res.passed += 1
            else:
                res.failed += 1
                if len(res.examples) < 3:
                    res.examples.append(problem)
        out.append(res)
    return out
