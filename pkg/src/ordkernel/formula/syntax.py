"""Formula syntax: AST, parser, printer and variable bookkeeping.

Grammar (loosest binding first)::

    formula := imp ('<->' imp)*                  right associative
    imp     := or ('->' imp)?
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '~' unary | quant | '(' formula ')' | 'true' | 'false' | atom
    quant   := ('ALL' | 'EX') binder (',' binder)* '.' formula
    binder  := NAME (':' NAME)?                  e.g. a:Ord
    atom    := term ('=' | '<' | 'in') term | NAME '(' term (',' term)* ')'
    term    := NAME | NUMBER | NAME '(' term (',' term)* ')'

A quantifier body extends as far right as possible.  Names listed in
``constants`` parse as constant symbols, numerals always do.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from ..errors import FormulaSyntaxError, SortError


# terms
@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Fn:
    name: str
    args: tuple


Term = Union[Var, Const, Fn]


# formulas
@dataclass(frozen=True)
class Truth:
    value: bool


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Ex:
    var: str
    sort: str | None
    body: "Formula"


@dataclass(frozen=True)
class All:
    var: str
    sort: str | None
    body: "Formula"


Formula = Union[Truth, Eq, Rel, Not, And, Or, Imp, Iff, Ex, All]
BINARY = {And: "&", Or: "|", Imp: "->", Iff: "<->"}
INFIX_REL = ("<", "in")
SORTS = ("Ord", "SOrd")


def conj(*fs):
    fs = [f for f in fs if f != Truth(True)]
    if not fs:
        return Truth(True)
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


# ---------------------------------------------------------------- tokenizer

_TOKEN = re.compile(r"\s*(<->|->|[()~&|=<,.:]|[A-Za-z_][A-Za-z0-9_']*|\d+)")


def _tokenize(text):
    toks, pos = [], 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip():
                raise FormulaSyntaxError(f"unexpected character {rest.strip()[0]!r}",
                                         pos + len(rest) - len(rest.lstrip()))
            return toks
        toks.append((m.group(1), m.start(1)))
        pos = m.end()


_KEYWORDS = {"ALL", "EX", "in", "true", "false"}


class _Parser:
    def __init__(self, text, constants):
        self.toks = _tokenize(text)
        self.i = 0
        self.constants = set(constants)
        self.end = len(text)

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else self.end

    def take(self, want=None):
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input" + (f", expected {want!r}" if want else ""),
                                     self.pos())
        if want is not None and tok != want:
            raise FormulaSyntaxError(f"expected {want!r}, found {tok!r}", self.pos())
        self.i += 1
        return tok

    def name(self):
        pos = self.pos()
        tok = self.take()
        if not re.match(r"[A-Za-z_]", tok) or tok in _KEYWORDS:
            raise FormulaSyntaxError(f"expected a name, found {tok!r}", pos)
        return tok

    def formula(self):
        left = self.imp()
        if self.peek() == "<->":
            self.take()
            return Iff(left, self.formula())
        return left

    def imp(self):
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.imp())
        return left

    def disj(self):
        out = self.conj()
        while self.peek() == "|":
            self.take()
            out = Or(out, self.conj())
        return out

    def conj(self):
        out = self.unary()
        while self.peek() == "&":
            self.take()
            out = And(out, self.unary())
        return out

    def unary(self):
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok in ("ALL", "EX"):
            self.take()
            binders = [self.binder()]
            while self.peek() == ",":
                self.take()
                binders.append(self.binder())
            self.take(".")
            body = self.formula()
            cls = All if tok == "ALL" else Ex
            for var, sort in reversed(binders):
                body = cls(var, sort, body)
            return body
        if tok == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if tok in ("true", "false"):
            self.take()
            return Truth(tok == "true")
        return self.atom()

    def binder(self):
        var = self.name()
        sort = None
        if self.peek() == ":":
            self.take()
            sort = self.name()
        return var, sort

    def atom(self):
        pos = self.pos()
        left = self.term()
        op = self.peek()
        if op in ("=", "<", "in"):
            self.take()
            right = self.term()
            return Eq(left, right) if op == "=" else Rel(op, (left, right))
        if isinstance(left, Fn):
            return Rel(left.name, left.args)
        raise FormulaSyntaxError("expected an atomic formula", pos)

    def term(self):
        pos = self.pos()
        tok = self.take()
        if tok.isdigit():
            return Const(tok)
        if not re.match(r"[A-Za-z_]", tok) or tok in _KEYWORDS:
            raise FormulaSyntaxError(f"expected a term, found {tok!r}", pos)
        if self.peek() == "(":
            self.take()
            args = [self.term()]
            while self.peek() == ",":
                self.take()
                args.append(self.term())
            self.take(")")
            return Fn(tok, tuple(args))
        return Const(tok) if tok in self.constants else Var(tok)


def parse(text: str, sorts=None, constants=(), signature="SO") -> Formula:
    """Parse a formula; with ``signature="SO"`` atoms are sort-checked
    against the declared sorts of free variables and quantifier annotations."""
    p = _Parser(text, constants)
    f = p.formula()
    if p.peek() is not None:
        raise FormulaSyntaxError(f"unexpected {p.peek()!r}", p.pos())
    if signature == "SO":
        check_sorts(f, sorts or {})
    return f


def parse_term(text: str, constants=()) -> Term:
    p = _Parser(text, constants)
    t = p.term()
    if p.peek() is not None:
        raise FormulaSyntaxError(f"unexpected {p.peek()!r}", p.pos())
    return t


# ---------------------------------------------------------------- sorts

def _term_sort(t, env):
    if isinstance(t, Var):
        return env.get(t.name)
    if isinstance(t, Const):
        return "Ord" if t.name.isdigit() else None
    if t.name == "G":
        if len(t.args) != 2:
            raise SortError("G takes two arguments")
        for a in t.args:
            _term_sort(a, env)
        return "Ord"
    for a in t.args:
        _term_sort(a, env)
    return None


def _expect(t, want, env, where):
    got = _term_sort(t, env)
    if got is not None and got != want:
        raise SortError(f"{where}: {render_term(t)} has sort {got}, expected {want}")


def check_sorts(f, env):
    """Raise SortError when an atom is ill-sorted for the SO signature."""
    if isinstance(f, Truth):
        return
    if isinstance(f, Eq):
        a, b = _term_sort(f.left, env), _term_sort(f.right, env)
        if a and b and a != b:
            raise SortError(f"equation between sorts {a} and {b}")
        return
    if isinstance(f, Rel):
        if f.name == "<":
            for t in f.args:
                _expect(t, "Ord", env, "<")
        elif f.name == "in":
            _expect(f.args[0], "Ord", env, "in")
            _expect(f.args[1], "SOrd", env, "in")
        else:
            for t in f.args:
                _term_sort(t, env)
        return
    if isinstance(f, Not):
        return check_sorts(f.body, env)
    if isinstance(f, (And, Or, Imp, Iff)):
        check_sorts(f.left, env)
        return check_sorts(f.right, env)
    if f.sort is not None and f.sort not in SORTS:
        raise SortError(f"unknown sort {f.sort}")
    inner = dict(env)
    if f.sort is None:
        inner.pop(f.var, None)
    else:
        inner[f.var] = f.sort
    check_sorts(f.body, inner)


# ---------------------------------------------------------------- printer

def render_term(t) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    return f"{t.name}(" + ",".join(render_term(a) for a in t.args) + ")"


def render(f) -> str:
    if isinstance(f, Truth):
        return "true" if f.value else "false"
    if isinstance(f, Eq):
        return f"{render_term(f.left)} = {render_term(f.right)}"
    if isinstance(f, Rel):
        if f.name in INFIX_REL and len(f.args) == 2:
            return f"{render_term(f.args[0])} {f.name} {render_term(f.args[1])}"
        return f"{f.name}(" + ",".join(render_term(a) for a in f.args) + ")"
    if isinstance(f, Not):
        return "~" + _wrap(f.body)
    if type(f) in BINARY:
        return f"({render(f.left)} {BINARY[type(f)]} {render(f.right)})"
    q = "ALL" if isinstance(f, All) else "EX"
    binder = f.var if f.sort is None else f"{f.var}:{f.sort}"
    return f"({q} {binder} . {render(f.body)})"


def _wrap(f):
    s = render(f)
    if isinstance(f, (Eq, Rel)):
        return "(" + s + ")"
    return s


# ---------------------------------------------------------------- variables

def term_vars(t):
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Fn):
        out = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


def free_vars(f) -> frozenset:
    if isinstance(f, Truth):
        return frozenset()
    if isinstance(f, Eq):
        return frozenset(term_vars(f.left) | term_vars(f.right))
    if isinstance(f, Rel):
        out = set()
        for a in f.args:
            out |= term_vars(a)
        return frozenset(out)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Imp, Iff)):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def all_vars(f) -> set:
    if isinstance(f, (Ex, All)):
        return {f.var} | all_vars(f.body)
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, (And, Or, Imp, Iff)):
        return all_vars(f.left) | all_vars(f.right)
    return set(free_vars(f))


def depth(f) -> int:
    """Nesting depth of connectives and quantifiers; atoms have depth 0."""
    if isinstance(f, (Truth, Eq, Rel)):
        return 0
    if isinstance(f, Not):
        return 1 + depth(f.body)
    if isinstance(f, (And, Or, Imp, Iff)):
        return 1 + max(depth(f.left), depth(f.right))
    return 1 + depth(f.body)


def symbols(f):
    """(relations, functions, constants) occurring in ``f``."""
    rels, fns, consts = set(), set(), set()

    def term(t):
        if isinstance(t, Const):
            consts.add(t.name)
        elif isinstance(t, Fn):
            fns.add((t.name, len(t.args)))
            for a in t.args:
                term(a)

    def walk(g):
        if isinstance(g, Eq):
            term(g.left)
            term(g.right)
        elif isinstance(g, Rel):
            rels.add((g.name, len(g.args)))
            for a in g.args:
                term(a)
        elif isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, (And, Or, Imp, Iff)):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (Ex, All)):
            if g.sort:
                rels.add((g.sort, 1))
            walk(g.body)

    walk(f)
    return rels, fns, consts


def subst_term(t, mapping):
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Fn):
        return Fn(t.name, tuple(subst_term(a, mapping) for a in t.args))
    return t


class Fresh:
    """Deterministic supply of reserved variable names ``_1, _2, ...``."""

    def __init__(self, prefix="_"):
        self.prefix = prefix
        self.n = 0

    def __call__(self):
        self.n += 1
        return f"{self.prefix}{self.n}"


def instantiate(f, mapping, fresh: Fresh):
    """Substitute terms for free variables, renaming every bound variable to
    a fresh name so no capture can happen."""
    if isinstance(f, Truth):
        return f
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, mapping), subst_term(f.right, mapping))
    if isinstance(f, Rel):
        return Rel(f.name, tuple(subst_term(a, mapping) for a in f.args))
    if isinstance(f, Not):
        return Not(instantiate(f.body, mapping, fresh))
    if isinstance(f, (And, Or, Imp, Iff)):
        return type(f)(instantiate(f.left, mapping, fresh), instantiate(f.right, mapping, fresh))
    new = fresh()
    inner = dict(mapping)
    inner[f.var] = Var(new)
    return type(f)(new, f.sort, instantiate(f.body, inner, fresh))
