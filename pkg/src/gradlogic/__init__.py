"""Gradual classical logic: syntax, reduction to unit chain expansion,
valuation-frame semantics and validity decision."""
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
    UnitChain,
    atoms,
    chain,
    f_size,
    is_unit_chain_expansion,
    lit,
    max_object_level,
    neg_max,
)
from gradlogic.decide import DecideReport, LevelInterpretation, decide_valid
from gradlogic.parser import ParseError, parse, pretty
from gradlogic.reduce import normal_form, recursive_reduce, reduce_to_uce, to_cnf, to_dnf
from gradlogic.semantics import ValuationFrame, Verdict, classify_oracle, evaluate

__all__ = [
    "BOT", "TOP", "And", "Elem", "Formula", "Grad", "Not", "Or", "SElem", "UnitChain",
    "atoms", "chain", "f_size", "is_unit_chain_expansion", "lit", "max_object_level", "neg_max",
    "DecideReport", "LevelInterpretation", "decide_valid",
    "ParseError", "parse", "pretty",
    "normal_form", "recursive_reduce", "reduce_to_uce", "to_cnf", "to_dnf",
    "ValuationFrame", "Verdict", "classify_oracle", "evaluate",
]
