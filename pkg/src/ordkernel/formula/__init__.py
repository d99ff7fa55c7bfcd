"""First-order formulas over finite structures, interpretations and the S(V) truncation."""
from .interpret import DefinedStructure, Report, check_definable_structure, quotient_structure, relativize
from .semantics import FiniteStructure, compile_formula, eval_formula
from .so import ordinals_of, reflect_search, so_structure_of, so_truncation
from .syntax import (
    All, And, Const, Eq, Ex, Fn, Iff, Imp, Not, Or, Rel, Truth, Var, depth, free_vars,
    parse, parse_term, render,
)

__all__ = [
    "DefinedStructure", "Report", "check_definable_structure", "quotient_structure", "relativize",
    "FiniteStructure", "compile_formula", "eval_formula",
    "ordinals_of", "reflect_search", "so_structure_of", "so_truncation",
    "All", "And", "Const", "Eq", "Ex", "Fn", "Iff", "Imp", "Not", "Or", "Rel", "Truth", "Var",
    "depth", "free_vars", "parse", "parse_term", "render",
]
