"""Gödel numbering of *-recursive programs.

    Base     pair(0, pair(index, extra))          extra = pair(m, n) for proj, else 0
    Comp     pair(1, pair(L, pair(#g, list(hs))))
    RecMin   pair(2, pair(L, pair(#g, rows)))

``L = tuple_encode([b0] * arity)`` lifts every composite code above each
argument tuple with components below ``b0``.  ``list(xs)`` is
``pair(len - 1, tuple_encode(codes))``; ``rows`` is 0 when there are no rows
and ``1 + list`` of the row lists otherwise.
"""
from __future__ import annotations

from functools import lru_cache

from ..errors import ContractError, DecodeError
from ..ordinals import pair, tuple_decode, tuple_encode, unpair
from .ast import BASE_NAMES, Base, Comp, FunAst, RecMin

BASE_INDEX = {name: i for i, name in enumerate(BASE_NAMES)}
TAG_BASE, TAG_COMP, TAG_RECMIN = 0, 1, 2


def _list(codes) -> int:
    return pair(len(codes) - 1, tuple_encode(list(codes)))


def _unlist(c: int, limit: int):
    k, body = unpair(c)
    if k + 1 > limit:
        raise DecodeError("list longer than the outer arity allows")
    return tuple_decode(body, k + 1)


def lift(beta0: int, arity: int) -> int:
    return tuple_encode([beta0] * arity)


def number_of(f: FunAst, beta0: int) -> int:
    if beta0 <= 0:
        raise ContractError("argument bound must be positive")
    if isinstance(f, Base):
        extra = pair(f.m, f.n) if f.name == "proj" else 0
        return pair(TAG_BASE, pair(BASE_INDEX[f.name], extra))
    g = number_of(f.g, beta0)
    if isinstance(f, Comp):
        body = _list([number_of(h, beta0) for h in f.hs])
        return pair(TAG_COMP, pair(lift(beta0, f.arity), pair(g, body)))
    if f.rows:
        body = 1 + _list([_list([number_of(h, beta0) for h in row]) for row in f.rows])
    else:
        body = 0
    return pair(TAG_RECMIN, pair(lift(beta0, f.arity), pair(g, body)))


def _lift_base(lifted: int, arity: int) -> int:
    # a tuple of positive entries is at least as long as its code plus one
    if arity > lifted + 1:
        raise DecodeError("composite node carries a malformed bound")
    parts = tuple_decode(lifted, arity)
    if len(set(parts)) != 1 or parts[0] == 0:
        raise DecodeError("composite node carries a malformed bound")
    return parts[0]


@lru_cache(maxsize=65536)
def decode(c: int):
    """Return ``(ast, b0)``; ``b0`` is None for a bare base function."""
    if not isinstance(c, int) or c < 0:
        raise DecodeError(f"{c!r} is not an ordinal")
    tag, rest = unpair(c)
    if tag == TAG_BASE:
        idx, extra = unpair(rest)
        if idx >= len(BASE_NAMES):
            raise DecodeError(f"no base function with index {idx}")
        name = BASE_NAMES[idx]
        if name == "proj":
            m, n = unpair(extra)
            if not m < n:
                raise DecodeError(f"projection ({m},{n}) out of range")
            return Base("proj", m, n), None
        if extra:
            raise DecodeError(f"{name} carries stray data")
        return Base(name), None
    if tag not in (TAG_COMP, TAG_RECMIN):
        raise DecodeError(f"unknown constructor tag {tag}")
    lifted, inner = unpair(rest)
    gc, body = unpair(inner)
    # sub-codes are strictly smaller, so recursion terminates
    g, b0 = decode(gc)
    bounds = {b0}
    try:
        if tag == TAG_COMP:
            hs = []
            for hc in _unlist(body, g.arity):
                h, b = decode(hc)
                hs.append(h)
                bounds.add(b)
            node = Comp(g, tuple(hs))
        else:
            rows = []
            if body:
                for rc in _unlist(body - 1, g.arity):
                    row = []
                    for hc in _unlist(rc, g.arity):
                        h, b = decode(hc)
                        row.append(h)
                        bounds.add(b)
                    rows.append(tuple(row))
            node = RecMin(g, tuple(rows))
    except ContractError as e:
        raise DecodeError(f"ill-formed program: {e}") from None
    mine = _lift_base(lifted, node.arity)
    bounds.discard(None)
    if bounds - {mine}:
        raise DecodeError("inconsistent argument bounds inside one code")
    return node, mine


def ast_of(c: int) -> FunAst:
    return decode(c)[0]


def is_rec(c) -> bool:
    try:
        decode(c)
    except DecodeError:
        return False
    return True
