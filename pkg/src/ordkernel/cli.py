"""Command-line entry point: ``ordkernel SUBCOMMAND ...``.

Inputs are inline literals, ``@path`` or an existing file path.  Exit codes:
0 success, 2 usage, 3 domain or contract error, 4 resource or budget error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import axioms, codes, hf, ordinals, relcode, starvm, universe
from .errors import KernelError, ValidationError
from .formula import interpret, semantics, so, syntax

# ---------------------------------------------------------------- inputs


def read_text(arg: str) -> str:
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read()
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def read_json(arg: str):
    return json.loads(read_text(arg))


def ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ordinals, got {text!r}")


def ordinal(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an ordinal, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"ordinals are non-negative, got {v}")
    return v


def relation(arg):
    return relcode.parse_relcode(read_text(arg))


def setcode(arg):
    return relcode.as_set_code(relation(arg))


def hfset(arg):
    return hf.parse_hf(read_text(arg))


def ordset_arg(arg):
    return universe.parse_ordset(read_text(arg))


def structure(arg):
    return semantics.FiniteStructure.from_json(read_json(arg))


def interpretation(arg):
    data = read_json(arg)
    try:
        return interpret.DefinedStructure(
            data["universe"], data["equality"],
            {k: tuple(v) for k, v in data.get("relations", {}).items()},
            {k: tuple(v) for k, v in data.get("functions", {}).items()},
            data.get("constants", {}))
    except (KeyError, TypeError, ValueError) as e:
        raise ValidationError(f"malformed interpretation: {e}") from None


def sorts_arg(text):
    out = {}
    for item in filter(None, (text or "").split(",")):
        name, _, sort = item.partition(":")
        out[name.strip()] = sort.strip()
    return out


def assignment_arg(text):
    out = {}
    for item in filter(None, (text or "").split(",")):
        name, _, value = item.partition("=")
        value = value.strip()
        out[name.strip()] = int(value) if value.isdigit() else value
    return out


def formula_arg(args, text):
    return syntax.parse(read_text(text), sorts=sorts_arg(args.sorts),
                        constants=tuple(filter(None, (args.constants or "").split(","))),
                        signature=None if args.untyped else "SO")


def budget(args):
    return starvm.EvalBudget(fuel=args.fuel, beta0=args.beta0)


def bound(args, default):
    return default if args.bound is None else args.bound


# ---------------------------------------------------------------- mini-languages

def predicate(spec: str):
    """all | none | nonempty | eq:HF | in:HF | rank<=N"""
    if spec == "all":
        return lambda x: True
    if spec == "none":
        return lambda x: False
    if spec == "nonempty":
        return lambda x: len(hf.collapse(x)) > 0
    if spec.startswith("eq:"):
        target = hf.parse_hf(spec[3:])
        return lambda x: hf.collapse(x) == target
    if spec.startswith("in:"):
        target = hf.parse_hf(spec[3:])
        return lambda x: hf.collapse(x) in target.elements
    if spec.startswith("rank<="):
        n = int(spec[6:])
        return lambda x: hf.hf_rank(hf.collapse(x)) <= n
    raise argparse.ArgumentTypeError(f"unknown predicate {spec!r}")


def mapping(spec: str):
    """id | singleton | pair | union | power | const:HF"""
    if spec == "id":
        return lambda x: x
    if spec == "singleton":
        return lambda x: codes.pair_code(x, x)
    if spec == "pair":
        return lambda x: codes.pair_code(x, codes.EMPTY_CODE)
    if spec == "union":
        return codes.union_code
    if spec == "power":
        return codes.power_code
    if spec.startswith("const:"):
        c = hf.encode_hf(hf.parse_hf(spec[6:]))
        return lambda x: c
    raise argparse.ArgumentTypeError(f"unknown map {spec!r}")


# ---------------------------------------------------------------- output

def code_payload(a):
    a = relcode.as_set_code(a)
    return {"code": relcode.format_relcode(a), "bot": a.bot, "top": a.top,
            "set": str(hf.collapse(a))}


class Out:
    def __init__(self, as_json):
        self.as_json = as_json

    def emit(self, text, data=None):
        if self.as_json:
            print(json.dumps(data if data is not None else text, sort_keys=True))
        else:
            print(text)

    def code(self, a):
        p = code_payload(a)
        self.emit(p["code"], p)

    def flag(self, value):
        self.emit("true" if value else "false", value)


# ---------------------------------------------------------------- commands
# each entry: (library operations it exposes, handler, argument setup)

def c_pair(a, out):
    out.emit(str(ordinals.pair(a.alpha, a.beta)), ordinals.pair(a.alpha, a.beta))


def c_unpair(a, out):
    p = ordinals.unpair(a.gamma)
    out.emit(f"{p[0]} {p[1]}", list(p))


def c_starless(a, out):
    out.flag(ordinals.star_less(a.p, a.q))


def c_tuple(a, out):
    if a.decode is not None:
        xs = ordinals.tuple_decode(ints(a.values)[0], a.decode)
        out.emit(",".join(map(str, xs)), xs)
    else:
        v = ordinals.tuple_encode(ints(a.values))
        out.emit(str(v), v)


def c_closed(a, out):
    out.flag(ordinals.godel_closed(a.eta))


def c_iota(a, out):
    s = universe.initial_segment(a.alpha, bound(a, universe.DEFAULT_SEGMENT_BOUND))
    out.emit(universe.format_ordset(s), sorted(s))


def c_lub(a, out):
    v = universe.lub(ordset_arg(a.set))
    out.emit(str(v), v)


REL_OPS = {
    "dom": (universe.domain_of, 1), "ran": (universe.range_of, 1), "field": (universe.field_of, 1),
    "compose": (universe.compose, 2), "restrict": (universe.restrict, 2), "image": (universe.image, 2),
}


def c_rel(a, out):
    fn, n = REL_OPS[a.op]
    if len(a.sets) != n:
        raise argparse.ArgumentTypeError(f"{a.op} takes {n} set argument(s)")
    s = fn(*[ordset_arg(x) for x in a.sets])
    out.emit(universe.format_ordset(s), sorted(s))


def c_powwitness(a, out):
    w = universe.pow_witness(ordset_arg(a.set), bound(a, universe.DEFAULT_POW_BOUND))
    out.emit("\n".join(w.lines()),
             {"code": universe.format_ordset(w.code),
              "xi": [[universe.format_ordset(z), n] for z, n in sorted(w.xi.items(), key=lambda kv: kv[1])]})


def c_classify(a, out):
    c = relcode.classify(relation(a.code))
    d = c.as_dict()
    out.emit("\n".join(f"{k}: {v}" for k, v in d.items()), d)


def c_cut(a, out):
    r = relcode.cut(setcode(a.code), a.alpha)
    out.emit(relcode.format_relcode(r), relcode.format_relcode(r))


def c_iso(a, out):
    f = codes.iso(setcode(a.a), setcode(a.b))
    if f is None:
        out.emit("none", None)
    else:
        out.emit(" ".join(f"{k}->{v}" for k, v in sorted(f.items())),
                 {str(k): v for k, v in sorted(f.items())})


def c_mem(a, out):
    out.flag(codes.mem(setcode(a.a), setcode(a.b)))


def c_build(a, out):
    out.code(codes.build_from_predecessors(setcode(a.code), ordset_arg(a.pred), a.alpha))


def c_ordcode(a, out):
    out.code(codes.code_of_ordinal(a.n, bound(a, codes.DEFAULT_ORDINAL_BOUND)))


def c_sep(a, out):
    out.code(codes.separation_code(setcode(a.code), predicate(a.pred)))


def c_union(a, out):
    out.code(codes.union_code(setcode(a.code)))


def c_choice(a, out):
    out.code(codes.choice_code(setcode(a.code)))


def c_pairset(a, out):
    out.code(codes.pair_code(setcode(a.a), setcode(a.b)))


def c_power(a, out):
    out.code(codes.power_code(setcode(a.code), bound(a, universe.DEFAULT_POW_BOUND)))


def c_replace(a, out):
    src = setcode(a.code)
    fn = mapping(a.map)
    images = [fn(x) for x in codes.members(src)]
    out.code(codes.replacement_code(src, lambda x, y: codes.equivalent(y, fn(x)), candidates=images))


def c_enum(a, out):
    items = list(codes.enumerate_set_codes(a.field_bound))
    if a.count:
        out.emit(str(len(items)), len(items))
    else:
        out.emit("\n".join(relcode.format_relcode(x) for x in items),
                 [relcode.format_relcode(x) for x in items])


def c_collapse(a, out):
    h = hf.collapse(setcode(a.code))
    out.emit(str(h), str(h))


def c_encode(a, out):
    out.code(hf.encode_hf(hfset(a.set)))


def c_rank(a, out):
    r = hf.hf_rank(hfset(a.set))
    out.emit(str(r), r)


def program(a):
    return starvm.parse_program(read_text(a.program))


def c_eval(a, out):
    f = program(a)
    args = ints(a.args)
    if isinstance(f, starvm.Base):
        v = starvm.eval_base(f, args)
    else:
        v = starvm.evaluate(f, args, budget(a))
    out.emit(str(v), v)


def c_numof(a, out):
    c = starvm.number_of(program(a), a.beta0)
    out.emit(str(c), str(c))


def c_astof(a, out):
    f = starvm.ast_of(int(read_text(a.code).strip()))
    text = starvm.format_program(f)
    out.emit(f"{text}\narity {starvm.arity_of(f)}", {"program": text, "arity": starvm.arity_of(f)})


def c_fun(a, out):
    if (a.code is None) == (a.program is None):
        raise argparse.ArgumentTypeError("give exactly one of --code and --program")
    c = int(read_text(a.code).strip()) if a.code is not None else starvm.number_of(program(a), a.beta0)
    v = starvm.fun_universal(c, ordinals.tuple_encode(ints(a.args)), budget(a))
    out.emit(str(v), v)


def c_iset(a, out):
    s = starvm.define_set(a.alpha, int(read_text(a.beta).strip()), a.gamma, budget(a))
    out.emit(universe.format_ordset(s), sorted(s))


def c_minname(a, out):
    d = starvm.minimal_name(ordset_arg(a.set), bound(a, 10 ** 4), budget(a))
    if d is None:
        out.emit("none", None)
    else:
        out.emit(f"{d} {tuple(starvm.name_triple(d))}", {"name": d, "triple": starvm.name_triple(d)})


def triple(text):
    xs = ints(read_text(text))
    if len(xs) == 1:
        return xs[0]
    if len(xs) != 3:
        raise argparse.ArgumentTypeError("a name is one ordinal or a triple alpha,beta,gamma")
    return tuple(xs)


def c_subtest(a, out):
    out.flag(starvm.subset_test(triple(a.first), triple(a.second), a.eta, budget(a)))


def c_parse(a, out):
    f = formula_arg(a, a.formula)
    text = syntax.render(f)
    out.emit(text, {"formula": text, "free": sorted(syntax.free_vars(f)), "depth": syntax.depth(f)})


def c_relativize(a, out):
    r = interpret.relativize(formula_arg(a, a.formula), interpretation(a.interp))
    text = syntax.render(r)
    out.emit(text, {"formula": text})


def c_evalf(a, out):
    out.flag(semantics.eval_formula(formula_arg(a, a.formula), structure(a.structure),
                                    assignment_arg(a.assign)))


def c_checkdef(a, out):
    rep = interpret.check_definable_structure(interpretation(a.interp), structure(a.structure))
    out.emit("\n".join(rep.lines() + [f"ok: {rep.ok}"]), rep.as_dict())


def c_quotient(a, out):
    q = interpret.quotient_structure(interpretation(a.interp), structure(a.structure))
    data = q.to_json()
    out.emit(json.dumps(data, sort_keys=True, indent=1), data)


def c_sofv(a, out):
    M = so.so_structure_of(a.k)
    data = M.to_json()
    out.emit(json.dumps(data, sort_keys=True, indent=1), data)


def target_structure(a):
    if a.structure is not None:
        return structure(a.structure)
    return so.so_structure_of(a.sofv)


def c_reflect(a, out):
    r = so.reflect_search(formula_arg(a, a.formula), target_structure(a), assignment_arg(a.params))
    note = "checked at the given parameters only"
    if r is None:
        out.emit(f"none ({note})", {"alpha": None, "note": note})
    else:
        out.emit(f"{r} ({note})", {"alpha": r, "note": note})


def c_checkaxiom(a, out):
    formulas = None
    if a.formulas is not None:
        formulas = [ln.strip() for ln in read_text(a.formulas).splitlines()
                    if ln.strip() and not ln.strip().startswith("#")]
    rep = axioms.check_axiom(a.axiom, target_structure(a), bound(a, 8), formulas)
    out.emit("\n".join(rep.lines()), rep.as_dict())


def _pairarg(text):
    xs = ints(text)
    if len(xs) != 2:
        raise argparse.ArgumentTypeError("expected a pair a,b")
    return tuple(xs)


def _setup():
    f = {}

    def cmd(name, ops, handler, *arguments):
        f[name] = (tuple(ops), handler, arguments)

    A = lambda *names, **kw: (names, kw)
    cmd("pair", [ordinals.pair], c_pair, A("alpha", type=ordinal), A("beta", type=ordinal))
    cmd("unpair", [ordinals.unpair], c_unpair, A("gamma", type=ordinal))
    cmd("starless", [ordinals.star_less], c_starless, A("p", type=_pairarg), A("q", type=_pairarg))
    cmd("tuple", [ordinals.tuple_encode, ordinals.tuple_decode], c_tuple,
        A("values", help="comma-separated ordinals, or one code with --decode"),
        A("--decode", type=int, metavar="N", help="decode into N components"))
    cmd("closed", [ordinals.godel_closed], c_closed, A("eta", type=ordinal))
    cmd("iota", [universe.initial_segment], c_iota, A("alpha", type=ordinal))
    cmd("lub", [universe.lub], c_lub, A("set"))
    cmd("rel", [fn for fn, _ in REL_OPS.values()], c_rel,
        A("op", choices=sorted(REL_OPS)), A("sets", nargs="+"))
    cmd("powwitness", [universe.pow_witness], c_powwitness, A("set"))
    cmd("classify", [relcode.classify], c_classify, A("code"))
    cmd("cut", [relcode.cut], c_cut, A("code"), A("alpha", type=ordinal))
    cmd("iso", [codes.iso], c_iso, A("a"), A("b"))
    cmd("mem", [codes.mem], c_mem, A("a"), A("b"))
    cmd("build", [codes.build_from_predecessors], c_build, A("code"),
        A("--pred", required=True, help="predecessor set d, e.g. {1,2}"),
        A("--alpha", type=ordinal, required=True))
    cmd("ordcode", [codes.code_of_ordinal], c_ordcode, A("n", type=ordinal))
    cmd("sep", [codes.separation_code], c_sep, A("code"), A("--pred", required=True, help=predicate.__doc__))
    cmd("union", [codes.union_code], c_union, A("code"))
    cmd("choice", [codes.choice_code], c_choice, A("code"))
    cmd("pairset", [codes.pair_code], c_pairset, A("a"), A("b"))
    cmd("power", [codes.power_code], c_power, A("code"))
    cmd("replace", [codes.replacement_code], c_replace, A("code"), A("--map", required=True, help=mapping.__doc__))
    cmd("enum", [codes.enumerate_set_codes], c_enum, A("field_bound", type=ordinal),
        A("--count", action="store_true"))
    cmd("collapse", [hf.collapse], c_collapse, A("--code", required=True))
    cmd("encode", [hf.encode_hf], c_encode, A("set"))
    cmd("rank", [hf.hf_rank], c_rank, A("set"))
    cmd("eval", [starvm.evaluate, starvm.eval_base], c_eval,
        A("--program", required=True), A("--args", default=""))
    cmd("numof", [starvm.number_of], c_numof, A("--program", required=True))
    cmd("astof", [starvm.ast_of, starvm.arity_of], c_astof, A("code"))
    cmd("fun", [starvm.fun_universal], c_fun, A("--code"), A("--program"), A("--args", default=""))
    cmd("iset", [starvm.define_set], c_iset, A("alpha", type=ordinal), A("beta"), A("gamma", type=ordinal))
    cmd("minname", [starvm.minimal_name], c_minname, A("set"))
    cmd("subtest", [starvm.subset_test], c_subtest, A("first"), A("second"), A("eta", type=ordinal))
    fa = (A("--sorts", help="free-variable sorts, e.g. a:Ord,s:SOrd"),
          A("--constants", help="names to read as constant symbols"),
          A("--untyped", action="store_true", help="skip SO sort checking"))
    cmd("parse", [syntax.parse], c_parse, A("formula"), *fa)
    cmd("relativize", [interpret.relativize], c_relativize, A("formula"),
        A("--interp", required=True), *fa)
    cmd("evalf", [semantics.eval_formula], c_evalf, A("formula"),
        A("--structure", required=True), A("--assign", help="x=0,s={0,1}"), *fa)
    cmd("checkdef", [interpret.check_definable_structure], c_checkdef,
        A("--interp", required=True), A("--structure", required=True))
    cmd("quotient", [interpret.quotient_structure], c_quotient,
        A("--interp", required=True), A("--structure", required=True))
    cmd("sofv", [so.so_structure_of], c_sofv, A("k", type=ordinal))
    target = (A("--structure"), A("--sofv", type=ordinal, default=4))
    cmd("reflect", [so.reflect_search], c_reflect, A("formula"), A("--params"), *target, *fa)
    cmd("checkaxiom", [axioms.check_axiom], c_checkaxiom, A("axiom", type=str.upper),
        A("--formulas", help="instance formulas for SEP/REP, one per line"), *target)
    return f


COMMANDS = _setup()


def _env_bound():
    v = os.environ.get("ORDKERNEL_BOUND")
    if v is None or v == "":
        return None
    try:
        return int(v)
    except ValueError:
        return None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--beta0", type=ordinal, default=argparse.SUPPRESS,
                        help="argument bound for *-recursive evaluation")
    common.add_argument("--fuel", type=ordinal, default=argparse.SUPPRESS,
                        help="evaluation step budget")
    common.add_argument("--bound", type=ordinal, default=argparse.SUPPRESS,
                        help="enumeration bound (default from ORDKERNEL_BOUND)")
    p = argparse.ArgumentParser(prog="ordkernel", parents=[common],
                                description="Ordinal pairing, set codes and *-recursion toolkit.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    for name, (ops, handler, arguments) in COMMANDS.items():
        doc = ", ".join(op.__name__ for op in ops)
        sp = sub.add_parser(name, parents=[common], help=doc, description=doc)
        for names, kw in arguments:
            sp.add_argument(*names, **kw)
        sp.set_defaults(handler=handler)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    # parent actions are shared with the subparsers, so defaults are filled here
    for key, value in (("json", False), ("beta0", starvm.DEFAULT_BETA0),
                       ("fuel", starvm.DEFAULT_FUEL), ("bound", _env_bound())):
        if not hasattr(args, key):
            setattr(args, key, value)
    out = Out(args.json)
    try:
        args.handler(args, out)
    except argparse.ArgumentTypeError as e:
        print(f"ordkernel {args.command}: {e}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as e:
        print(f"ordkernel {args.command}: cannot read input: {e}", file=sys.stderr)
        return 2
    except KernelError as e:
        print(f"ordkernel {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
