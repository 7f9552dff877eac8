import pytest

from gradlogic.core import EBOT, NotUCEError, Not, atom, max_object_level
from gradlogic.decide import (
    EMPTY,
    LevelInterpretation,
    count_distinct,
    decide_valid,
    falsified_at,
    level_bound,
    residual,
    squash,
    tree_bound,
)
from gradlogic.gen import all_formulas
from gradlogic.parser import parse
from gradlogic.reduce import normal_form
from gradlogic.semantics import classify_oracle, evaluate


def I(level=0, **assignment):
    return LevelInterpretation(level, assignment)


class TestHelpers:
    def test_squash(self):
        assert squash(parse("a > b > c"), 0) == parse("a")
        assert squash(parse("a | (b > c)"), 0) == parse("a | b")
        assert squash(parse("a > b"), 5) == parse("a > b")

    def test_squash_rejects_non_uce(self):
        with pytest.raises(NotUCEError):
            squash(Not(atom("a")), 0)

    def test_count_distinct(self):
        assert count_distinct(parse("a | a'")) == 1
        assert count_distinct(parse("top | bot")) == 0
        assert count_distinct(parse("(a > b) & c")) == 3

    def test_falsified_at(self):
        assert falsified_at(parse("a | b"), I(a=0, b=0))
        assert not falsified_at(parse("top"), I())
        assert all(falsified_at(parse("a & a'"), I(a=v)) for v in (0, 1))

    def test_falsified_at_reads_resolved_prefix(self):
        assert not falsified_at(parse("top > c"), I(1, c=1))
        assert falsified_at(parse("bot > c"), I(1, c=1))
        with pytest.raises(ValueError):
            falsified_at(parse("a > c"), I(1, c=1))

    def test_interpretation_forces_constants(self):
        i = I(a=1)
        assert i.value(parse("top").s) == 1
        assert i.value(parse("bot").s) == 0
        assert i.value(parse("a'").s) == 0


class TestResidual:
    def test_faithful_drops_the_satisfied_disjunct(self):
        assert residual(parse("top | (b > c)"), I(b=1), "faithful") == parse("top > c")

    def test_levelwise_resolves_it(self):
        assert residual(parse("top | (b > c)"), I(b=1), "levelwise") is EMPTY

    def test_levelwise_false_residual(self):
        assert residual(parse("a & (b > c)"), I(a=1, b=0), "levelwise") == EBOT

    def test_levelwise_keeps_open_chains(self):
        got = residual(parse("(a > b > c) & (d | (a > b'))"), I(a=1, d=0), "levelwise")
        assert got == parse("(top > b > c) & (top > b')")

    def test_faithful_deletion_one_at_a_time(self):
        f = parse("(a & (b > c)) | ((b > d) & e)")
        assert residual(f, I(a=1, b=1, e=0), "faithful") == parse("(top > c) | (top > d)")
        assert residual(f, I(a=1, b=0, e=1), "faithful") is EMPTY

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            residual(parse("a"), I(a=1), "other")


class TestEngines:
    def test_excluded_middle(self):
        r = decide_valid(parse("a | a'"))
        assert (r.result, r.frames_examined, r.recursion_depth_max) == (1, 2, 1)

    def test_chain_is_invalid(self):
        r = decide_valid(parse("hat > yellow"))
        assert r.result == 0 and r.frames_examined == 1
        assert evaluate(r.witness_false, parse("hat > yellow")) == 0

    def test_divergence(self):
        f = parse("top | (b > c)")
        assert decide_valid(f, "levelwise").result == 1
        assert decide_valid(f, "faithful").result == 0
        assert classify_oracle(f).kind == "valid"

    def test_deep_tautology(self):
        f = parse("!(a > b > c) | (a > b > c)")
        for engine in ("levelwise", "faithful"):
            r = decide_valid(f, engine)
            assert r.result == 1 and r.recursion_depth_max == 3

    def test_unknown_engine(self):
        with pytest.raises(ValueError):
            decide_valid(parse("a"), "oracle")

    def test_exhaustive_small_agreement(self):
        # Criterion 5 covers size 7; size 5 keeps the unit suite fast.
        for f in all_formulas("ab", 5):
            g = normal_form(f)
            if max_object_level(g) > 2:
                continue
            report = decide_valid(g)
            assert report.result == (classify_oracle(g).kind == "valid"), str(f)
            assert report.recursion_depth_max <= max_object_level(g) + 1
            assert report.frames_examined <= tree_bound(g)
            if report.result == 0:
                assert evaluate(report.witness_false, g) == 0

    def test_faithful_never_accepts_what_the_oracle_rejects(self):
        # The faithful engine errs only towards rejection on this space.
        for f in all_formulas("ab", 5):
            g = normal_form(f)
            if max_object_level(g) > 2:
                continue
            if decide_valid(g, "faithful").result == 1:
                assert classify_oracle(g).kind == "valid", str(f)


class TestBounds:
    def test_single_chain_tautology_within_level_sum(self):
        f = parse("!(a > b > c > d) | (a > b > c > d)")
        r = decide_valid(f)
        assert level_bound(f) == 8
        assert r.frames_examined == 8

    def test_level_sum_is_not_a_general_bound(self):
        # Depth-first recursion multiplies per-level counts.
        f = parse("((a > c) | (a > c') | a') & ((b > c) | (b > c') | b')")
        r = decide_valid(f)
        assert r.result == 1
        assert (r.frames_examined, level_bound(f), tree_bound(f)) == (10, 6, 12)
