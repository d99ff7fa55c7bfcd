"""Definable structures, relativization and the induced quotient structure."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..errors import ContractError, SignatureError, ValidationError
from .semantics import FiniteStructure, compile_formula
from .syntax import (
    All, And, Const, Eq, Ex, Fn, Fresh, Iff, Imp, Not, Or, Rel, Truth, Var, conj,
    all_vars, free_vars, instantiate, parse,
)


def _vs(n):
    return [f"v{i}" for i in range(1, n + 1)]


@dataclass
class DefinedStructure:
    """Host-language formulas defining a target-language structure.

    ``universe`` has free variable ``x``; ``equality`` has ``v1, v2``; a
    relation of arity n uses ``v1..vn``; a function of arity n uses
    ``v1..v(n+1)`` with the value last; a constant uses ``x``.
    """
    universe: object
    equality: object
    relations: dict = field(default_factory=dict)   # name -> (arity, formula)
    functions: dict = field(default_factory=dict)   # name -> (arity, formula)
    constants: dict = field(default_factory=dict)   # name -> formula

    def __post_init__(self):
        self.universe = _formula(self.universe)
        self.equality = _formula(self.equality)
        self.relations = {k: (n, _formula(f)) for k, (n, f) in self.relations.items()}
        self.functions = {k: (n, _formula(f)) for k, (n, f) in self.functions.items()}
        self.constants = {k: _formula(f) for k, f in self.constants.items()}
        problems = self.free_variable_problems()
        if problems:
            raise ValidationError("; ".join(problems))

    def free_variable_problems(self):
        out = []

        def need(label, f, allowed):
            extra = free_vars(f) - set(allowed)
            if extra:
                out.append(f"{label} has stray free variables {sorted(extra)}")
        need("universe", self.universe, ["x"])
        need("equality", self.equality, _vs(2))
        for k, (n, f) in self.relations.items():
            need(f"relation {k}", f, _vs(n))
        for k, (n, f) in self.functions.items():
            need(f"function {k}", f, _vs(n + 1))
        for k, f in self.constants.items():
            need(f"constant {k}", f, ["x"])
        return out

    @classmethod
    def identity(cls, relations=(), functions=(), constants=()):
        """The trivial interpretation: everything means itself."""
        rels = {}
        for name, n in relations:
            args = tuple(Var(v) for v in _vs(n))
            rels[name] = (n, Rel(name, args))
        fns = {}
        for name, n in functions:
            vs = [Var(v) for v in _vs(n + 1)]
            fns[name] = (n, Eq(vs[-1], Fn(name, tuple(vs[:-1]))))
        consts = {c: Eq(Var("x"), Const(c)) for c in constants}
        return cls(Truth(True), Eq(Var("v1"), Var("v2")), rels, fns, consts)


def _formula(f):
    return parse(f, signature=None) if isinstance(f, str) else f


# ---------------------------------------------------------------- relativize

class _Relativizer:
    def __init__(self, A: DefinedStructure):
        self.A = A
        self.fresh = Fresh("_")

    def U(self, name):
        return instantiate(self.A.universe, {"x": Var(name)}, self.fresh)

    def eq_to(self, x: str, t):
        """(x = t)^A for a variable x and an arbitrary term t."""
        A = self.A
        if isinstance(t, Var):
            return instantiate(A.equality, {"v1": Var(x), "v2": t}, self.fresh)
        if isinstance(t, Const):
            if t.name not in A.constants:
                raise SignatureError(f"interpretation has no constant {t.name}")
            return instantiate(A.constants[t.name], {"x": Var(x)}, self.fresh)
        if t.name not in A.functions:
            raise SignatureError(f"interpretation has no function {t.name}")
        n, phi = A.functions[t.name]
        if n != len(t.args):
            raise SignatureError(f"{t.name} expects {n} arguments")
        names = [self.fresh() for _ in t.args]
        mapping = {f"v{i + 1}": Var(v) for i, v in enumerate(names)}
        mapping[f"v{n + 1}"] = Var(x)
        return self.bounded_ex(names, [self.eq_to(v, a) for v, a in zip(names, t.args)]
                               + [instantiate(phi, mapping, self.fresh)])

    def bounded_ex(self, names, parts):
        body = conj(*parts)
        for v in reversed(names):
            body = Ex(v, None, And(self.U(v), body))
        return body

    def rel(self, phi, args):
        """phi(t1..tn)^A: variables go in directly, other terms get unfolded."""
        mapping, names, parts = {}, [], []
        for i, t in enumerate(args):
            if isinstance(t, Var):
                mapping[f"v{i + 1}"] = t
            else:
                v = self.fresh()
                names.append(v)
                parts.append(self.eq_to(v, t))
                mapping[f"v{i + 1}"] = Var(v)
        return self.bounded_ex(names, parts + [instantiate(phi, mapping, self.fresh)])

    def __call__(self, f):
        A = self.A
        if isinstance(f, Truth):
            return f
        if isinstance(f, Eq):
            l, r = f.left, f.right
            if isinstance(l, Var):
                return self.eq_to(l.name, r)
            if isinstance(r, Var):
                return self.eq_to(r.name, l)
            return self.rel(A.equality, (l, r))
        if isinstance(f, Rel):
            if f.name not in A.relations:
                raise SignatureError(f"interpretation has no relation {f.name}")
            n, phi = A.relations[f.name]
            if n != len(f.args):
                raise SignatureError(f"{f.name} expects {n} arguments")
            return self.rel(phi, f.args)
        if isinstance(f, Not):
            return Not(self(f.body))
        if isinstance(f, (And, Or, Imp, Iff)):
            return type(f)(self(f.left), self(f.right))
        body = self(f.body)
        if f.sort is not None:
            guard = self(Rel(f.sort, (Var(f.var),)))
            body = And(guard, body) if isinstance(f, Ex) else Imp(guard, body)
        if isinstance(f, Ex):
            return Ex(f.var, None, And(self.U(f.var), body))
        return All(f.var, None, Imp(self.U(f.var), body))


def relativize(psi, A: DefinedStructure):
    for v in all_vars(psi):
        if v.startswith("_"):
            raise ContractError(f"variable {v} uses the reserved prefix '_'")
    return _Relativizer(A)(psi)


# ---------------------------------------------------------------- checking

@dataclass
class Report:
    entries: list = field(default_factory=list)   # (label, ok, detail)

    def add(self, label, ok, detail=""):
        self.entries.append((label, bool(ok), detail))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.entries)

    def failed(self):
        return [label for label, ok, _ in self.entries if not ok]

    def lines(self):
        return [f"{label}: {'ok' if ok else 'FAIL'}" + (f" ({d})" if d else "")
                for label, ok, d in self.entries]

    def as_dict(self):
        return {"ok": self.ok,
                "checks": [{"check": l, "ok": o, "detail": d} for l, o, d in self.entries]}


class _Host:
    """Compiled pieces of an interpretation on one host structure."""

    def __init__(self, A, M):
        self.A, self.M = A, M
        u = compile_formula(A.universe, M).raw
        self.U = [e for e in M.carrier if u({"x": e})]
        eq = compile_formula(A.equality, M).raw
        self.E = {(a, b) for a in self.U for b in self.U if eq({"v1": a, "v2": b})}

    def table(self, phi, n):
        fn = compile_formula(phi, self.M).raw
        vs = _vs(n)
        return {t for t in itertools.product(self.U, repeat=n) if fn(dict(zip(vs, t)))}


def check_definable_structure(A: DefinedStructure, M: FiniteStructure) -> Report:
    r = Report()
    problems = A.free_variable_problems()
    r.add("free-variables", not problems, "; ".join(problems))
    h = _Host(A, M)
    r.add("universe-nonempty", bool(h.U))
    E, U = h.E, h.U
    refl = [a for a in U if (a, a) not in E]
    r.add("eq-reflexive", not refl, f"fails at {refl[0]!r}" if refl else "")
    sym = [(a, b) for a, b in E if (b, a) not in E]
    r.add("eq-symmetric", not sym, f"fails at {sym[0]!r}" if sym else "")
    trans = next(((a, b, c) for a, b in E for c in U if (b, c) in E and (a, c) not in E), None)
    r.add("eq-transitive", trans is None, f"fails at {trans!r}" if trans else "")

    def congruent(tab, n, positions):
        # swapping any argument for an equivalent one keeps membership
        for t in itertools.product(U, repeat=n):
            for i in positions:
                for b in U:
                    if (t[i], b) in E:
                        s = t[:i] + (b,) + t[i + 1:]
                        if (t in tab) != (s in tab):
                            return t, s
        return None

    bad = []
    for name, (n, phi) in sorted(A.relations.items()):
        w = congruent(h.table(phi, n), n, range(n))
        if w:
            bad.append(f"relation {name} at {w}")
    for name, (n, phi) in sorted(A.functions.items()):
        tab = h.table(phi, n + 1)
        total = [t for t in itertools.product(U, repeat=n)
                 if not any(t + (y,) in tab for y in U)]
        r.add(f"function-total:{name}", not total, f"no value at {total[0]!r}" if total else "")
        clash = next((t for t in tab for y in U
                      if t[:-1] + (y,) in tab and (t[-1], y) not in E), None)
        r.add(f"function-functional:{name}", clash is None,
              f"two values at {clash[:-1]!r}" if clash else "")
        w = congruent(tab, n + 1, range(n + 1))
        if w:
            bad.append(f"function {name} at {w}")
    for name, phi in sorted(A.constants.items()):
        fn = compile_formula(phi, M).raw
        xs = [e for e in U if fn({"x": e})]
        r.add(f"constant-exists:{name}", bool(xs))
        split = [(a, b) for a in xs for b in xs if (a, b) not in E]
        r.add(f"constant-unique:{name}", not split,
              f"{split[0][0]!r} and {split[0][1]!r} differ" if split else "")
    r.add("congruence", not bad, "; ".join(bad))
    return r


def quotient_structure(A: DefinedStructure, M: FiniteStructure):
    """The target structure on U modulo the defined equality.

    Each class is labelled by its first member in carrier order; the map
    from U to labels is kept as ``.projection``.
    """
    rep = check_definable_structure(A, M)
    if not rep.ok:
        raise ContractError("interpretation fails: " + ", ".join(rep.failed()))
    h = _Host(A, M)
    proj = {}
    for a in h.U:
        proj[a] = next(b for b in h.U if (a, b) in h.E)
    labels = [a for a in h.U if proj[a] == a]
    rels = {name: {tuple(proj[x] for x in t) for t in h.table(phi, n)}
            for name, (n, phi) in A.relations.items()}
    fns = {}
    for name, (n, phi) in A.functions.items():
        tab = {}
        for t in h.table(phi, n + 1):
            tab[tuple(proj[x] for x in t[:-1])] = proj[t[-1]]
        fns[name] = tab
    consts = {}
    for name, phi in A.constants.items():
        fn = compile_formula(phi, M).raw
        consts[name] = next(proj[e] for e in h.U if fn({"x": e}))
    q = FiniteStructure(labels, rels, fns, consts)
    q.projection = proj
    return q
