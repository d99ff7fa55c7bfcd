"""*-recursive functions: syntax, evaluation, numbering and the universal function."""
from .ast import BASE_NAMES, Base, Comp, FunAst, RecMin, arity_of
from .machine import DEFAULT_BETA0, DEFAULT_FUEL, EvalBudget, Machine, eval_base, evaluate
from .numbering import ast_of, decode, is_rec, number_of
from .sexp import format_program, parse_program
from .universal import (
    define_set, element_test, fun_universal, minimal_name, name_triple, subset_test,
)

__all__ = [
    "BASE_NAMES", "Base", "Comp", "FunAst", "RecMin", "arity_of",
    "DEFAULT_BETA0", "DEFAULT_FUEL", "EvalBudget", "Machine", "eval_base", "evaluate",
    "ast_of", "decode", "is_rec", "number_of", "format_program", "parse_program",
    "define_set", "element_test", "fun_universal", "minimal_name", "name_triple", "subset_test",
]
