"""Finite structures and Tarskian evaluation.

Formulas are compiled to closures over an environment dict.  Functions may
be partial: a term whose value is undefined makes every atom containing it
false, which matches reading a function symbol through its graph.

JSON format of a structure::

    {"carrier": [0, 1, "{0}"],
     "relations": {"Ord": [[0], [1]], "<": [[0, 1]], "in": [[0, "{0}"]]},
     "functions": {"G": [[0, 0, 0], [0, 1, 1]]},      # rows: args..., value
     "constants": {"c": 0}}
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import ContractError, SignatureError, ValidationError
from .syntax import All, And, Const, Eq, Ex, Fn, Iff, Imp, Not, Or, Rel, Truth, Var

_UNDEF = object()


@dataclass
class FiniteStructure:
    carrier: tuple
    relations: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)

    def __post_init__(self):
        self.carrier = tuple(self.carrier)
        members = set(self.carrier)
        if len(members) != len(self.carrier):
            raise ValidationError("carrier lists an element twice")
        rels = {}
        for name, tuples in self.relations.items():
            ts = frozenset(tuple(t) for t in tuples)
            for t in ts:
                if not set(t) <= members:
                    raise ValidationError(f"relation {name} mentions elements outside the carrier")
            if len({len(t) for t in ts}) > 1:
                raise ValidationError(f"relation {name} mixes arities")
            rels[name] = ts
        self.relations = rels
        fns = {}
        for name, graph in self.functions.items():
            if isinstance(graph, dict):
                table = {tuple(k): v for k, v in graph.items()}
            else:
                table = {}
                for row in graph:
                    row = tuple(row)
                    if row[:-1] in table and table[row[:-1]] != row[-1]:
                        raise ValidationError(f"function {name} has two values at {row[:-1]}")
                    table[row[:-1]] = row[-1]
            for k, v in table.items():
                if not (set(k) | {v}) <= members:
                    raise ValidationError(f"function {name} leaves the carrier")
            fns[name] = table
        self.functions = fns
        for name, v in self.constants.items():
            if v not in members:
                raise ValidationError(f"constant {name} is not in the carrier")
        self._domains = {}

    def domain(self, sort=None):
        """Elements of a sort, in carrier order."""
        if sort is None:
            return self.carrier
        d = self._domains.get(sort)
        if d is None:
            if sort not in self.relations:
                raise SignatureError(f"structure has no sort predicate {sort}")
            ext = self.relations[sort]
            d = self._domains[sort] = tuple(x for x in self.carrier if (x,) in ext)
        return d

    def arity(self, name):
        ts = self.relations.get(name)
        return len(next(iter(ts))) if ts else None

    def constant(self, name):
        if name in self.constants:
            return self.constants[name]
        if name.isdigit() and int(name) in set(self.carrier):
            return int(name)
        return _UNDEF

    # ---- JSON
    def to_json(self) -> dict:
        return {
            "carrier": list(self.carrier),
            "relations": {k: sorted((list(t) for t in v), key=_json_key)
                          for k, v in sorted(self.relations.items())},
            "functions": {k: sorted((list(a) + [v] for a, v in tab.items()), key=_json_key)
                          for k, tab in sorted(self.functions.items())},
            "constants": dict(sorted(self.constants.items())),
        }

    @classmethod
    def from_json(cls, data) -> "FiniteStructure":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(data["carrier"], data.get("relations", {}), data.get("functions", {}),
                       data.get("constants", {}))
        except (KeyError, TypeError) as e:
            raise ValidationError(f"malformed structure: {e}") from None


def _json_key(row):
    return [(0, x) if isinstance(x, int) else (1, str(x)) for x in row]


# ---------------------------------------------------------------- compiler

def _compile_term(t, M):
    if isinstance(t, Var):
        name = t.name
        return lambda env: env[name]
    if isinstance(t, Const):
        v = M.constant(t.name)
        return lambda env: v
    if t.name not in M.functions:
        raise SignatureError(f"structure has no function {t.name}")
    table = M.functions[t.name]
    parts = [_compile_term(a, M) for a in t.args]
    if len(parts) == 1:
        p0 = parts[0]
        return lambda env: table.get((p0(env),), _UNDEF)
    if len(parts) == 2:
        p0, p1 = parts
        return lambda env: table.get((p0(env), p1(env)), _UNDEF)
    return lambda env: table.get(tuple(p(env) for p in parts), _UNDEF)


def _compile(f, M, domain):
    if isinstance(f, Truth):
        v = f.value
        return lambda env: v
    if isinstance(f, Eq):
        a, b = _compile_term(f.left, M), _compile_term(f.right, M)

        def eq(env):
            x = a(env)
            return x is not _UNDEF and x == b(env)
        return eq
    if isinstance(f, Rel):
        if f.name not in M.relations:
            raise SignatureError(f"structure has no relation {f.name}")
        ext = M.relations[f.name]
        parts = [_compile_term(a, M) for a in f.args]
        if len(parts) == 1:
            p0 = parts[0]
            return lambda env: (p0(env),) in ext
        if len(parts) == 2:
            p0, p1 = parts
            return lambda env: (p0(env), p1(env)) in ext
        return lambda env: tuple(p(env) for p in parts) in ext
    if isinstance(f, Not):
        b = _compile(f.body, M, domain)
        return lambda env: not b(env)
    if isinstance(f, (And, Or, Imp, Iff)):
        l, r = _compile(f.left, M, domain), _compile(f.right, M, domain)
        if isinstance(f, And):
            return lambda env: l(env) and r(env)
        if isinstance(f, Or):
            return lambda env: l(env) or r(env)
        if isinstance(f, Imp):
            return lambda env: (not l(env)) or r(env)
        return lambda env: l(env) == r(env)
    body = _compile(f.body, M, domain)
    elems = M.domain(f.sort)
    if domain is not None:
        elems = tuple(x for x in elems if x in domain)
    var = f.var
    want = isinstance(f, Ex)

    def quant(env):
        saved = env.get(var, _UNDEF)
        try:
            for x in elems:
                env[var] = x
                if body(env) == want:
                    return want
            return not want
        finally:
            if saved is _UNDEF:
                env.pop(var, None)
            else:
                env[var] = saved
    return quant


def compile_formula(f, M: FiniteStructure, domain=None):
    """Compile ``f`` for ``M``; ``domain`` optionally restricts every quantifier."""
    from .syntax import free_vars
    fn = _compile(f, M, None if domain is None else frozenset(domain))
    fv = free_vars(f)

    def run(assignment=None):
        env = dict(assignment or {})
        missing = fv - env.keys()
        if missing:
            raise ContractError(f"unassigned free variables: {sorted(missing)}")
        return fn(env)
    run.raw = fn
    return run


def eval_formula(f, M: FiniteStructure, assignment=None, domain=None) -> bool:
    return compile_formula(f, M, domain)(assignment)
