import pytest

from gradlogic.core import (
    BOT,
    TOP,
    And,
    Elem,
    Grad,
    Not,
    NotUCEError,
    Or,
    Prefix,
    SElem,
    UnitChain,
    atom,
    atoms,
    chain,
    complement,
    f_size,
    is_unit_chain_expansion,
    iter_units,
    lit,
    max_object_level,
    natom,
    neg_max,
    unit_chain_elems,
)

a, b, c = atom("a"), atom("b"), atom("c")


class TestSElem:
    def test_complement_of_literal_flips_polarity(self):
        assert complement(lit("p")) == lit("p", True)
        assert complement(lit("p")).name == "p"

    def test_top_and_bot_are_complements(self):
        assert complement(TOP) == BOT
        assert complement(BOT) == TOP

    def test_complement_is_an_involution(self):
        for s in (TOP, BOT, lit("q"), lit("q", True)):
            assert complement(complement(s)) == s

    @pytest.mark.parametrize("name", ["", "top", "bot", "a b", "x'", "é"])
    def test_bad_names_rejected(self, name):
        with pytest.raises(ValueError):
            lit(name)

    def test_constants_take_no_name(self):
        with pytest.raises(ValueError):
            SElem("top", "x")
        with pytest.raises(ValueError):
            SElem("nope")

    def test_rendering(self):
        assert str(lit("p", True)) == "p'"
        assert str(TOP) == "top"


class TestMetrics:
    def test_f_size(self):
        assert f_size(Elem(TOP)) == 1
        assert f_size(And(a, b)) == 3
        assert f_size(Not(a)) == 2

    def test_neg_max(self):
        assert neg_max(a) == 0
        assert neg_max(Not(Not(a))) == 2
        assert neg_max(And(Not(a), Not(Not(b)))) == 2

    def test_is_uce(self):
        assert is_unit_chain_expansion(Grad(a, Grad(b, c)))
        assert not is_unit_chain_expansion(Grad(And(a, b), c))
        assert is_unit_chain_expansion(Or(a, Grad(b, c)))
        assert not is_unit_chain_expansion(Not(a))
        assert not is_unit_chain_expansion(Grad(Grad(a, b), c))

    def test_max_object_level(self):
        assert max_object_level(Or(a, b)) == 0
        assert max_object_level(Grad(a, Grad(b, c))) == 2
        assert max_object_level(And(Grad(a, b), c)) == 1

    def test_max_object_level_rejects_non_uce(self):
        with pytest.raises(NotUCEError):
            max_object_level(Not(a))

    def test_atoms_collapse_polarity(self):
        assert atoms(Or(a, And(natom("a"), Grad(Elem(TOP), b)))) == {"a", "b"}


class TestStructure:
    def test_chain_is_right_nested(self):
        assert chain(lit("a"), lit("b"), lit("c")) == Grad(a, Grad(b, c))

    def test_unit_chain_round_trip(self):
        u = UnitChain((lit("a"), TOP, lit("b", True)))
        assert UnitChain.from_formula(u.to_formula()) == u
        assert UnitChain((lit("a"),)).to_formula() == a

    def test_non_unit_chain_rejected(self):
        with pytest.raises(ValueError):
            UnitChain.from_formula(Grad(And(a, b), c))
        assert unit_chain_elems(Grad(a, And(b, c))) is None

    def test_empty_prefix_is_distinct(self):
        assert Prefix() != Prefix((TOP,))
        assert len(Prefix()) == 0

    def test_equality_is_structural(self):
        assert And(a, b) != Or(a, b)
        assert And(a, b) != And(b, a)
        assert hash(Grad(a, b)) == hash(Grad(atom("a"), atom("b")))

    def test_iter_units(self):
        f = Or(a, And(Grad(b, c), Elem(BOT)))
        assert [len(u) for u in iter_units(f)] == [1, 2, 1]
