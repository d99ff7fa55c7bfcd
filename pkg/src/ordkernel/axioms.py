"""Bounded checks of the SO axioms on finite structures.

Each axiom is a list of formula components.  Leading universal quantifiers
of a component are instantiated over the carrier (filtered by ``bound``),
the remainder is evaluated per instance.  An instance whose witness cannot
exist in a finite truncation (a pairing value or a canonical power-set code
past the last ordinal) is reported inapplicable rather than failed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ContractError, ResourceLimitError, ValidationError
from .formula.semantics import FiniteStructure, compile_formula
from .formula.so import ordinals_of, set_extension
from .formula.syntax import All, Fresh, Var, free_vars, instantiate, parse, render
from .universe import pow_witness

HOLDS = "holds-on-bounded-instances"
FAILS = "fails"
INAPPLICABLE = "inapplicable"


def _max(g, x, y):
    # g = max(x, y)
    return f"(({y} < {x} & {g} = {x}) | (({x} < {y} | {x} = {y}) & {g} = {y}))"


# (d,e) <* (b,c), with the two max witnesses nested so evaluation can stop early
_STARLESS = ("(EX h:Ord . ({m1} & EX t:Ord . ({m2} & (h < t | (h = t & d < b) | "
             "(h = t & d = b & e < c)))))").format(m1=_max("h", "d", "e"), m2=_max("t", "b", "c"))

AXIOMS = {
    "SOR": ["ALL X, Y . ((Ord(X) <-> ~SOrd(X)) & (X < Y -> Ord(X) & Ord(Y)) & "
            "(X in Y -> Ord(X) & SOrd(Y)) & Ord(G(X,Y)))"],
    "WO": ["ALL a:Ord, b:Ord, c:Ord . (~a < a & (a < b & b < c -> a < c) & "
           "(a < b | a = b | b < a))",
           "ALL s:SOrd . ((EX a:Ord . a in s) -> EX a:Ord . (a in s & "
           "ALL b:Ord . (b < a -> ~b in s)))"],
    "INF": ["EX a:Ord . ((EX b:Ord . b < a) & ALL b:Ord . (b < a -> "
            "EX c:Ord . (b < c & c < a)))"],
    "EXT": ["ALL s:SOrd, t:SOrd . ((ALL a:Ord . (a in s <-> a in t)) -> s = t)"],
    "INI": ["ALL a:Ord . EX s:SOrd . ALL b:Ord . (b < a <-> b in s)"],
    "BOU": ["ALL s:SOrd . EX a:Ord . ALL b:Ord . (b in s -> b < a)"],
    "GPF": ["ALL a:Ord, b:Ord, c:Ord . ((G(b,c) < a | G(b,c) = a) <-> "
            "ALL d:Ord, e:Ord . (" + _STARLESS + " -> G(d,e) < a))"],
    "SUR": ["ALL a:Ord . EX b:Ord, c:Ord . a = G(b,c)"],
    "POW": ["ALL s:SOrd . EX t:SOrd . ALL z:SOrd . (((EX a:Ord . a in z) & "
            "ALL a:Ord . (a in z -> a in s)) -> EX x:Ord . "
            "((ALL b:Ord . (b in z <-> G(b,x) in t)) & "
            "ALL y:Ord . ((ALL b:Ord . (b in z <-> G(b,y) in t)) -> y = x)))"],
}
SCHEMATA = ("SEP", "REP")
AXIOM_IDS = tuple(AXIOMS) + SCHEMATA

# instance formulas used when the caller supplies none; the element
# variable is x (and z for the image in REP), parameters are p (Ord), q (SOrd)
DEFAULT_SEP = ["x < p", "x in q", "~x in q", "EX y:Ord . (x < y & y in q)", "x = G(x,x)"]
DEFAULT_REP = ["z = x", "z = G(x,x)", "x < z & ALL w:Ord . (x < w -> z < w | z = w)",
               "z = p", "x in q & z = x"]
PARAM_SORTS = {"p": "Ord", "q": "SOrd"}


@dataclass
class AxiomReport:
    axiom: str
    verdict: str
    held: int = 0
    failed: int = 0
    inapplicable: int = 0
    failures: list = field(default_factory=list)
    note: str = ""

    def lines(self):
        out = [f"{self.axiom}: {self.verdict}",
               f"instances: {self.held} held, {self.failed} failed, {self.inapplicable} inapplicable"]
        out += [f"failure: {f}" for f in self.failures]
        if self.note:
            out.append(f"note: {self.note}")
        return out

    def as_dict(self):
        return {"axiom": self.axiom, "verdict": self.verdict, "held": self.held,
                "failed": self.failed, "inapplicable": self.inapplicable,
                "failures": self.failures, "note": self.note}


def _split(f):
    binders = []
    while isinstance(f, All):
        binders.append((f.var, f.sort))
        f = f.body
    return binders, f


class _Ctx:
    def __init__(self, M, bound):
        for name in ("Ord", "SOrd", "<", "in"):
            if name not in M.relations:
                raise ValidationError(f"structure does not interpret {name}")
        if "G" not in M.functions:
            raise ValidationError("structure does not interpret G")
        self.M = M
        self.ords = ordinals_of(M)
        self.rank = {a: i for i, a in enumerate(self.ords)}
        self.sets = list(M.domain("SOrd"))
        self.ext = {s: set_extension(M, s) for s in self.sets}
        self.bound = bound
        self.G = M.functions["G"]

    def candidates(self, sort):
        if sort == "Ord":
            return [a for a in self.ords if self.rank[a] < self.bound]
        if sort == "SOrd":
            return [s for s in self.sets if all(self.rank[a] < self.bound for a in self.ext[s])]
        return [x for x in self.M.carrier
                if (x in self.rank and self.rank[x] < self.bound) or x in self.ext]

    def set_with(self, members):
        members = frozenset(members)
        return next((s for s in self.sets if self.ext[s] == members), None)


def _guard(axiom, ctx, env):
    """None when the instance is in range, else the reason it is not."""
    if axiom == "SOR" and (env["X"], env["Y"]) not in ctx.G:
        return "G undefined"
    if axiom == "GPF" and (env["b"], env["c"]) not in ctx.G:
        return "pair value past the last ordinal"
    if axiom == "INI" and ctx.set_with(a for a in ctx.ords if ctx.rank[a] < ctx.rank[env["a"]]) is None:
        return "initial segment missing"
    if axiom == "BOU" and ctx.ext[env["s"]] and \
            max(ctx.rank[a] for a in ctx.ext[env["s"]]) + 1 >= len(ctx.ords):
        return "no ordinal above the set"
    if axiom == "POW":
        return _pow_guard(ctx, env["s"])
    return None


def _pow_guard(ctx, s):
    # the canonical witness needs its code and every name as carrier elements
    ranks = sorted(ctx.rank[a] for a in ctx.ext[s])
    try:
        w = pow_witness(ranks)
    except ResourceLimitError:
        return "power set too large"
    if ctx.set_with(ctx.ords[c] for c in w.code if c < len(ctx.ords)) is None or \
            any(c >= len(ctx.ords) for c in w.code):
        return "power-set code past the last ordinal"
    if any(x >= len(ctx.ords) for x in w.xi.values()):
        return "power-set names past the last ordinal"
    if any((ctx.ords[b], ctx.ords[x]) not in ctx.G for z, x in w.xi.items() for b in z):
        return "pairing past the last ordinal"
    return None


def _rep_guard(ctx, fn, env):
    # the image must be a carrier set
    image = set()
    for xi in ctx.ords:
        for z in ctx.ords:
            env["x"], env["z"] = xi, z
            if xi in ctx.ext[env["s"]] and fn(env):
                image.add(z)
    return None if ctx.set_with(image) is not None else "image is not a carrier set"


def _schema_component(axiom, text):
    phi = parse(text, sorts={"x": "Ord", "z": "Ord", **PARAM_SORTS})
    params = sorted(free_vars(phi) - {"x", "z"})
    for p in params:
        if p not in PARAM_SORTS:
            raise ContractError(f"instance formula has unknown parameter {p}")
    binders = ", ".join(f"{p}:{PARAM_SORTS[p]}" for p in params)
    pre = f"ALL {binders} . " if params else ""
    if axiom == "SEP":
        return pre + f"ALL s:SOrd . EX t:SOrd . ALL x:Ord . (x in t <-> (x in s & ({text})))"
    other = render(instantiate(phi, {"z": Var("z2")}, Fresh("_r")))
    functional = f"(ALL x:Ord, z:Ord, z2:Ord . ((({text}) & {other}) -> z = z2))"
    return pre + (f"ALL s:SOrd . ({functional} -> EX t:SOrd . ALL z:Ord . "
                  f"(z in t <-> EX x:Ord . (x in s & ({text}))))")


def check_axiom(axiom: str, M: FiniteStructure, bound: int = 8, formulas=None) -> AxiomReport:
    axiom = axiom.upper()
    if axiom not in AXIOM_IDS:
        raise ContractError(f"unknown axiom {axiom}; expected one of {', '.join(AXIOM_IDS)}")
    ctx = _Ctx(M, bound)
    if axiom in SCHEMATA:
        texts = formulas if formulas is not None else (DEFAULT_SEP if axiom == "SEP" else DEFAULT_REP)
        components = [(_schema_component(axiom, t), t) for t in texts]
    else:
        components = [(t, None) for t in AXIOMS[axiom]]
    rep = AxiomReport(axiom, HOLDS)
    for text, inst in components:
        f = parse(text)
        binders, body = _split(f)
        run = compile_formula(body, M).raw
        rep_fn = None
        if axiom == "REP":
            rep_fn = compile_formula(parse(inst, signature=None), M).raw
        domains = [ctx.candidates(sort) for _, sort in binders]
        names = [v for v, _ in binders]
        for values in itertools.product(*domains):
            env = dict(zip(names, values))
            why = _guard(axiom, ctx, env)
            if why is None and rep_fn is not None:
                why = _rep_guard(ctx, rep_fn, dict(env))
            if why is not None:
                rep.inapplicable += 1
                continue
            if run(dict(env)):
                rep.held += 1
            else:
                rep.failed += 1
                if len(rep.failures) < 5:
                    rep.failures.append((f"[{inst}] " if inst else "") +
                                        (", ".join(f"{k}={v}" for k, v in env.items())
                                         or "closed formula"))
    if rep.failed:
        rep.verdict = FAILS
    elif not rep.held:
        rep.verdict = INAPPLICABLE
    if axiom == "INF":
        rep.note = "expected to fail: a finite carrier has no limit ordinal"
    return rep
