"""Abstract syntax of *-recursive functions.

Three node kinds: a base function, composition ``g(h1(x), ..., hk(x))`` and
recursive minimization.  Arities are checked when a node is built.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union

from ..errors import ContractError

# order matters: it is the base-function index used by the numbering
BASE_NAMES = ("id", "proj", "or", "less", "eq", "not", "g1", "g2", "g-bounded")
BASE_ARITY = {"id": 1, "or": 2, "less": 2, "eq": 2, "not": 1, "g1": 1, "g2": 1, "g-bounded": 3}


@dataclass(frozen=True)
class Base:
    name: str
    m: int = 0
    n: int = 0

    def __post_init__(self):
        if self.name not in BASE_NAMES:
            raise ContractError(f"unknown base function {self.name!r}")
        if self.name == "proj":
            if not 0 <= self.m < self.n:
                raise ContractError(f"projection index {self.m} out of range for arity {self.n}")
        elif self.m or self.n:
            raise ContractError(f"{self.name} takes no indices")

    @property
    def arity(self) -> int:
        return self.n if self.name == "proj" else BASE_ARITY[self.name]

    @property
    def size(self) -> int:
        return 1


@dataclass(frozen=True)
class Comp:
    g: "FunAst"
    hs: tuple

    def __post_init__(self):
        object.__setattr__(self, "hs", tuple(self.hs))
        if not self.hs:
            raise ContractError("composition needs at least one inner function")
        if self.g.arity != len(self.hs):
            raise ContractError(
                f"outer function has arity {self.g.arity} but {len(self.hs)} inner functions")
        if len({h.arity for h in self.hs}) != 1:
            raise ContractError("inner functions of a composition must share one arity")

    @cached_property
    def arity(self) -> int:
        return self.hs[0].arity

    @cached_property
    def size(self) -> int:
        return 1 + self.g.size + sum(h.size for h in self.hs)


@dataclass(frozen=True)
class RecMin:
    """``f(b0, b) = least d < b0 with g(d, b, r_1, ..., r_m) > 0``, else ``b0``.

    ``rows[j]`` holds the functions producing the arguments of the j-th
    self-call ``r_j = f(b0, h_1(d, b), ..., h_{n-1}(d, b))``; self-calls at
    points not strictly below ``(b0, b)`` evaluate to 0.
    """
    g: "FunAst"
    rows: tuple = ()

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if rows:
            widths = {len(r) for r in rows}
            if len(widths) != 1 or 0 in widths:
                raise ContractError("recursion rows must be non-empty and of equal length")
            n = len(rows[0]) + 1
            if self.g.arity != n + len(rows):
                raise ContractError(
                    f"minimized function needs arity {n + len(rows)}, has {self.g.arity}")
            if any(h.arity != n for r in rows for h in r):
                raise ContractError(f"row functions must have arity {n}")

    @cached_property
    def arity(self) -> int:
        if self.rows:
            return len(self.rows[0]) + 1
        return self.g.arity

    @cached_property
    def size(self) -> int:
        return 1 + self.g.size + sum(h.size for r in self.rows for h in r)


FunAst = Union[Base, Comp, RecMin]


def arity_of(f) -> int:
    """Arity of an AST, or of the function coded by an ordinal."""
    if isinstance(f, int):
        from .numbering import ast_of
        f = ast_of(f)
    return f.arity


def contains_recmin(f: FunAst) -> bool:
    if isinstance(f, RecMin):
        return True
    if isinstance(f, Comp):
        return contains_recmin(f.g) or any(contains_recmin(h) for h in f.hs)
    return False
