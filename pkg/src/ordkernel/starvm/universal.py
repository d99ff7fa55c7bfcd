"""The universal function FUN and the definability layer built on it.

``fun_universal`` reads a program straight off its code number: each step
unpairs the current code to find the constructor and its parts.  It shares
no evaluation code with :mod:`.machine`, which makes the two a check on each
other.
"""
from __future__ import annotations

from functools import lru_cache

from ..errors import BudgetError, DomainError
from ..ordinals import pair, tuple_decode, tuple_encode, unpair
from .ast import BASE_NAMES
from .machine import EvalBudget
from .numbering import TAG_BASE, TAG_COMP, decode, is_rec


def _items(c):
    k, body = unpair(c)
    return tuple_decode(body, k + 1)


@lru_cache(maxsize=65536)
def _shape(c: int):
    """Constructor and parts of a validated code."""
    tag, rest = unpair(c)
    if tag == TAG_BASE:
        idx, extra = unpair(rest)
        name = BASE_NAMES[idx]
        return ("base", name, unpair(extra)[0] if name == "proj" else 0)
    _, inner = unpair(rest)
    g, body = unpair(inner)
    if tag == TAG_COMP:
        return ("comp", g, _items(body))
    rows = tuple(_items(r) for r in _items(body - 1)) if body else ()
    return ("rec", g, rows)


def _base(name, m, a):
    if name == "id":
        return a[0]
    if name == "proj":
        return a[m]
    if name == "or":
        return int(a[0] > 0 or a[1] > 0)
    if name == "less":
        return int(a[0] < a[1])
    if name == "eq":
        return int(a[0] == a[1])
    if name == "not":
        return int(a[0] == 0)
    if name == "g1":
        return unpair(a[0])[0]
    if name == "g2":
        return unpair(a[0])[1]
    v = pair(a[1], a[2])
    return v if v < a[0] else a[0]


class _Fun:
    def __init__(self, budget):
        self.fuel = budget.fuel
        self.steps = 0
        self.table = {}

    def tick(self):
        self.steps += 1
        if self.steps > self.fuel:
            raise BudgetError(f"fuel exhausted after {self.fuel} steps")

    def value(self, c, a):
        # generator: yields (code, args) whenever a minimization value is needed
        shape = _shape(c)
        self.tick()
        if shape[0] == "base":
            return _base(shape[1], shape[2], a)
        if shape[0] == "comp":
            vals = []
            for h in shape[2]:
                vals.append((yield from self.value(h, a)))
            return (yield from self.value(shape[1], tuple(vals)))
        return (yield (c, a))

    def minimize(self, c, a):
        _, g, rows = _shape(c)
        top, rest = a[0], a[1:]
        d = 0
        while d < top:
            self.tick()
            head = (d,) + rest
            rs = []
            for row in rows:
                gam = []
                for h in row:
                    gam.append((yield from self.value(h, head)))
                b = (top,) + tuple(gam)
                below = b != a and not any(x > y for x, y in zip(b, a))
                rs.append((yield (c, b)) if below else 0)
            if (yield from self.value(g, head + tuple(rs))):
                return d
            d += 1
        return top

    def run(self, c, a):
        todo = [(None, self.value(c, a))]
        reply = None
        while True:
            key, gen = todo[-1]
            try:
                want = gen.send(reply)
            except StopIteration as stop:
                todo.pop()
                reply = stop.value
                if key is None:
                    return reply
                self.table[key] = reply
                continue
            if want in self.table:
                reply = self.table[want]
            else:
                todo.append((want, self.minimize(*want)))
                reply = None


def fun_universal(c: int, arg_tuple: int, budget: EvalBudget | None = None) -> int:
    budget = budget or EvalBudget()
    node, _ = decode(c)
    args = tuple(tuple_decode(arg_tuple, node.arity))
    for x in args:
        if x >= budget.beta0:
            raise DomainError(f"argument {x} not below the bound {budget.beta0}")
    return _Fun(budget).run(c, args)


def define_set(alpha: int, beta: int, gamma: int, budget: EvalBudget | None = None) -> frozenset:
    if alpha <= 0 or not is_rec(beta):
        return frozenset()
    return frozenset(eta for eta in range(alpha)
                     if fun_universal(beta, pair(eta, gamma), budget) > 0)


def element_test(eps: int, name, budget=None) -> int:
    """1 if ``eps`` lies in the set named by the triple ``name``, else 0."""
    alpha, beta, gamma = name
    if eps >= alpha or not is_rec(beta):
        return 0
    return int(fun_universal(beta, pair(eps, gamma), budget) > 0)


def _as_triple(name):
    if isinstance(name, int):
        return tuple_decode(name, 3)
    return tuple(name)


def subset_test(name1, name2, eta: int, budget: EvalBudget | None = None) -> bool:
    """Least witness below ``eta`` of an element of name1 missing from name2;
    the inclusion holds when the search runs off the end."""
    t1, t2 = _as_triple(name1), _as_triple(name2)
    eps = 0
    while eps < eta:
        if element_test(eps, t1, budget) and not element_test(eps, t2, budget):
            break
        eps += 1
    return eps == eta


def minimal_name(a, search_bound: int, budget: EvalBudget | None = None):
    target = frozenset(a)
    need = max(target) + 1 if target else 0
    for delta in range(search_bound):
        alpha, beta, gamma = tuple_decode(delta, 3)
        if alpha < need:
            continue
        if not is_rec(beta):
            if not target:
                return delta
            continue
        ok = True
        for eta in range(alpha):
            if (fun_universal(beta, pair(eta, gamma), budget) > 0) != (eta in target):
                ok = False
                break
        if ok:
            return delta
    return None


def name_triple(delta: int):
    return tuple_decode(delta, 3)


def encode_args(args) -> int:
    return tuple_encode(list(args))
