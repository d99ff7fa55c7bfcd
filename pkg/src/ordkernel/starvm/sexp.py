"""S-expression text format for *-recursive programs.

    id | or | less | eq | not | g1 | g2 | g-bounded     base functions
    (proj M N)                                       projection
    (NAME H1 ... Hk)                                 composition with a base outer function
    (comp G H1 ... Hk)                               composition, general form
    (recmin G (ROW1 ... ROWm))                       recursive minimization, ROW = (H1 ... Hn-1)

``;`` starts a comment running to the end of the line.
"""
from __future__ import annotations

import re

from ..errors import ContractError, FormulaSyntaxError
from .ast import BASE_NAMES, Base, Comp, FunAst, RecMin

_TOKEN = re.compile(r"\s*(?:(;[^\n]*)|(\()|(\))|([^\s()]+))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1) is None:
            for i, kind in ((2, "("), (3, ")"), (4, "atom")):
                if m.group(i) is not None:
                    out.append((kind, m.group(i), m.start(i)))
        pos = m.end()
    return out


def _read(tokens, i):
    kind, val, pos = tokens[i]
    if kind == "atom":
        return val, i + 1
    if kind == ")":
        raise FormulaSyntaxError("unexpected ')'", pos)
    items = []
    i += 1
    while True:
        if i >= len(tokens):
            raise FormulaSyntaxError("unclosed '('", pos)
        if tokens[i][0] == ")":
            return items, i + 1
        item, i = _read(tokens, i)
        items.append(item)


def read_sexp(text: str):
    toks = _tokens(text)
    if not toks:
        raise FormulaSyntaxError("empty program", 0)
    value, i = _read(toks, 0)
    if i != len(toks):
        raise FormulaSyntaxError("trailing input", toks[i][2])
    return value


def _int(tok) -> int:
    if not isinstance(tok, str) or not tok.isdigit():
        raise FormulaSyntaxError(f"expected a number, got {tok!r}")
    return int(tok)


def to_ast(x) -> FunAst:
    try:
        return _to_ast(x)
    except ContractError as e:
        raise FormulaSyntaxError(f"ill-formed program: {e}") from None


def _to_ast(x) -> FunAst:
    if isinstance(x, str):
        if x == "proj" or x not in BASE_NAMES:
            raise FormulaSyntaxError(f"unknown function {x!r}")
        return Base(x)
    if not x:
        raise FormulaSyntaxError("empty application")
    head, *args = x
    if head == "proj":
        if len(args) != 2:
            raise FormulaSyntaxError("proj takes two numbers")
        return Base("proj", _int(args[0]), _int(args[1]))
    if head == "comp":
        if len(args) < 2:
            raise FormulaSyntaxError("comp needs an outer and at least one inner function")
        return Comp(_to_ast(args[0]), tuple(_to_ast(a) for a in args[1:]))
    if head == "recmin":
        if len(args) != 2 or isinstance(args[1], str):
            raise FormulaSyntaxError("recmin takes a function and a list of rows")
        rows = []
        for row in args[1]:
            if isinstance(row, str):
                raise FormulaSyntaxError("each recursion row must be a list")
            rows.append(tuple(_to_ast(h) for h in row))
        return RecMin(_to_ast(args[0]), tuple(rows))
    if isinstance(head, str) and head in BASE_NAMES:
        return Comp(Base(head), tuple(_to_ast(a) for a in args))
    raise FormulaSyntaxError(f"unknown form {head!r}")


def parse_program(text: str) -> FunAst:
    return to_ast(read_sexp(text))


def format_program(f: FunAst) -> str:
    if isinstance(f, Base):
        return f"(proj {f.m} {f.n})" if f.name == "proj" else f.name
    if isinstance(f, Comp):
        inner = " ".join(format_program(h) for h in f.hs)
        if isinstance(f.g, Base) and f.g.name != "proj":
            return f"({f.g.name} {inner})"
        return f"(comp {format_program(f.g)} {inner})"
    rows = " ".join("(" + " ".join(format_program(h) for h in r) + ")" for r in f.rows)
    return f"(recmin {format_program(f.g)} ({rows}))"
