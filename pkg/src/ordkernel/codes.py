"""Coded membership, coded equality, and the constructions that realize the
ZFC axioms on set codes.

Fresh ordinals (new tops, renamed blocks) are allocated deterministically from
``lub(field) + 1`` upward.
"""
from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator, Optional

from .errors import ContractError, DomainError, ResourceLimitError
from .hf import (
    HFSet, collapse, encode_hf, hf_sets_by_size, hf_sets_of_rank, node_values,
)
from .ordinals import pair
from .relcode import RelCode, SetCode, as_set_code, classify, cut
from .universe import DEFAULT_POW_BOUND, lub, pow_witness

DEFAULT_ORDINAL_BOUND = 4096

EMPTY_CODE = SetCode(RelCode(frozenset({(0, 1)})), 0, 1)


def _fresh(used: Iterable[int]) -> int:
    return lub(used) + 1


def _maybe_set(a) -> Optional[SetCode]:
    if isinstance(a, SetCode):
        return a
    c = classify(a)
    return SetCode(a, c.bot, c.top) if c.is_set else None


# --- coded equality and membership -----------------------------------------

def equivalent(a, b) -> bool:
    """``a`` and ``b`` are isomorphic set codes."""
    sa, sb = _maybe_set(a), _maybe_set(b)
    if sa is None or sb is None:
        return False
    return collapse(sa) == collapse(sb)


def iso(a, b) -> Optional[dict]:
    """The unique isomorphism between two set codes, or ``None``.

    Set codes are extensional and well-founded, so they are rigid: the map is
    read off node by node from the collapse values.
    """
    sa, sb = _maybe_set(a), _maybe_set(b)
    if sa is None or sb is None or collapse(sa) != collapse(sb):
        return None
    where = {v: x for x, v in node_values(sb).items()}
    f = {sa.bot: sb.bot}
    for x, v in node_values(sa).items():
        f[x] = where[v]
    return f


def mem(a, b) -> bool:
    """Coded membership: ``a`` is equivalent to the cut of ``b`` at some
    predecessor of ``b``'s top."""
    sb = _maybe_set(b)
    if sb is None:
        return False
    for beta in sorted(sb.pred(sb.top)):
        if beta != sb.bot and equivalent(a, cut(sb, beta)):
            return True
    return False


def members(a) -> list[SetCode]:
    """Cuts at the top's predecessors, one per coded element."""
    a = as_set_code(a)
    return [as_set_code(cut(a, g)) for g in sorted(a.pred(a.top)) if g != a.bot]


# --- the selection lemma ----------------------------------------------------

def build_from_predecessors(a, d: Iterable[int], alpha: int) -> SetCode:
    """``{(x, alpha) | x in d}`` together with every cut of ``a`` at ``d``.

    Requires ``a`` well-founded, extensional, with a unique successor of the
    bottom; ``d`` non-empty, inside the field and avoiding the bottom;
    ``alpha`` outside the field.
    """
    rel = a.rel if isinstance(a, SetCode) else a
    c = classify(rel)
    if not (c.fund and c.ext and c.unibotsuc) or c.bot is None:
        raise DomainError("selection needs a well-founded extensional code with one bottom successor")
    d = frozenset(d)
    if not d:
        raise DomainError("selection set must be non-empty")
    if not d <= rel.field:
        raise DomainError("selection set must lie in the field of the code")
    if c.bot in d:
        raise DomainError("selection set must avoid the bottom node")
    if alpha in rel.field:
        raise DomainError(f"new top {alpha} already occurs in the code")
    # cuts are taken on the relation itself; unitop is not required here
    edges = {(x, alpha) for x in d}
    for x in d:
        edges |= _cut_edges(rel, x)
    return SetCode(RelCode(frozenset(edges)), c.bot, alpha)


def _cut_edges(rel: RelCode, x: int) -> frozenset:
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for p in rel.pred(y):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return frozenset((b, c) for b, c in rel.edges if b in seen and c in seen)


# --- canonical ordinal codes -------------------------------------------------

def code_of_ordinal(n: int, bound: int = DEFAULT_ORDINAL_BOUND) -> SetCode:
    if n < 0:
        raise DomainError("negative ordinal")
    if n > bound:
        raise ResourceLimitError(f"ordinal code for {n} exceeds bound {bound}")
    edges = {(0, 1)}
    edges.update((a, b) for b in range(2, n + 2) for a in range(1, b))
    return SetCode(RelCode(frozenset(edges)), 0, n + 1)


# --- axiom witnesses ---------------------------------------------------------

def _select(a: SetCode, d: Iterable[int]) -> SetCode:
    d = frozenset(d) - {a.bot}
    if not d:
        return EMPTY_CODE
    return build_from_predecessors(a, d, _fresh(a.field))


def separation_code(a, pred: Callable[[SetCode], bool]) -> SetCode:
    a = as_set_code(a)
    d = [g for g in sorted(a.pred(a.top))
         if g != a.bot and pred(as_set_code(cut(a, g)))]
    return _select(a, d)


def union_code(a) -> SetCode:
    a = as_set_code(a)
    d = set()
    for g in a.pred(a.top):
        d |= a.pred(g)
    return _select(a, d)


def choice_code(a) -> SetCode:
    a = as_set_code(a)
    outer = collapse(a)
    seen = set()
    for x in outer:
        if not x.elements:
            raise DomainError("choice needs a set of non-empty sets")
        if seen & x.elements:
            raise DomainError("choice needs pairwise disjoint sets")
        seen |= x.elements
    d = {min(a.pred(b)) for b in a.pred(a.top) if b != a.bot}
    return _select(a, d)


def _fuse(parts: list[SetCode]) -> tuple[SetCode, list[int]]:
    """Glue codes into one extensional relation.

    Each part is added bottom-up; a node is identified with an existing node
    of the same collapse value, otherwise it gets a fresh ordinal.  Returns the
    fused code (top is the last part's top) and the image of every part's top.
    """
    edges: set = set()
    by_value: dict[HFSet, int] = {}
    tops = []
    used = {0}
    base_bot = 0
    for part in parts:
        part = as_set_code(part)
        values = node_values(part)
        rename = {part.bot: base_bot}
        for x in sorted(part.field - {part.bot}):
            v = values[x]
            if v not in by_value:
                by_value[v] = _fresh(used)
                used.add(by_value[v])
            rename[x] = by_value[v]
        for b, c in part.edges:
            edges.add((rename[b], rename[c]))
        tops.append(rename[part.top])
    rel = RelCode(frozenset(edges))
    return SetCode(rel, base_bot, tops[-1]), tops


def pair_code(a, b) -> SetCode:
    fused, tops = _fuse([as_set_code(a), as_set_code(b)])
    return build_from_predecessors(fused, set(tops), _fresh(fused.field))


def power_code(a, bound: int = DEFAULT_POW_BOUND) -> SetCode:
    """A code for the power set of the set coded by ``a``.

    Subsets of the top's element nodes are named through a power set witness;
    the name ``n`` becomes node ``pair(n, zeta)`` with ``zeta`` above the field
    of ``a``.  A subset already realized by some node of ``a`` reuses that node.
    """
    a = as_set_code(a)
    elems = a.pred(a.top) - {a.bot}
    if len(elems) > bound:
        raise ResourceLimitError(f"power set of a {len(elems)}-element set exceeds bound {bound}")
    witness = pow_witness(elems, bound)
    zeta = lub(a.field)
    realized = {}
    for x in sorted(a.field):
        if x != a.bot:
            realized.setdefault(a.pred(x), x)
    edges: set = set()
    for g in elems:
        edges |= cut(a, g).edges
    nodes = []
    for z, n in witness.xi.items():
        node = realized.get(z, pair(n, zeta))
        nodes.append(node)
        edges.update((beta, node) for beta in z)
    (s,) = a.rel.succ(a.bot)
    edges.add((a.bot, s))
    used = {x for e in edges for x in e}
    gamma = _fresh(used | a.field)
    edges.update((node, gamma) for node in nodes)
    edges.add((s, gamma))
    return SetCode(RelCode(frozenset(edges)), a.bot, gamma)


def canonical_candidates(rank_bound: int) -> list[SetCode]:
    return [encode_hf(h) for h in hf_sets_of_rank(rank_bound)]


def replacement_code(a, phi: Callable[[SetCode, SetCode], bool],
                     candidates: Optional[Iterable[SetCode]] = None,
                     rank_bound: int = 3) -> SetCode:
    """Image of the coded set under the relation ``phi``.

    Images are searched among ``candidates`` (by default the canonical codes
    of all sets of rank at most ``rank_bound``), which stands in for the
    unbounded search over representatives.  ``phi`` must be functional up to
    equivalence on the coded elements of ``a``.
    """
    a = as_set_code(a)
    pool = list(candidates) if candidates is not None else canonical_candidates(rank_bound)
    images = []
    for x in members(a):
        hits = [y for y in pool if phi(x, y)]
        if not hits:
            continue
        first = collapse(hits[0])
        if any(collapse(y) != first for y in hits[1:]):
            raise ContractError(f"relation is not functional at element {collapse(x)}")
        images.append(as_set_code(hits[0]))
    if not images:
        return EMPTY_CODE
    fused, _ = _fuse(images)
    wanted = {collapse(y) for y in images}
    values = node_values(fused)
    d = {x for x, v in values.items() if v in wanted}
    return build_from_predecessors(fused, d, _fresh(fused.field))


def image_code(a, fn: Callable[[SetCode], Optional[SetCode]]) -> SetCode:
    """Replacement for a map given as a Python function."""
    a = as_set_code(a)
    table = {x: fn(x) for x in members(a)}
    outs = [as_set_code(y) for y in table.values() if y is not None]
    return replacement_code(
        a, lambda x, y: table[x] is not None and equivalent(y, table[x]), candidates=outs)


# --- enumeration --------------------------------------------------------------

def enumerate_set_codes(field_bound: int) -> Iterator[SetCode]:
    """Every set code whose field lies below ``field_bound``, each exactly once.

    A set code is a relabeling of the canonical code of its collapse, and set
    codes have no non-trivial automorphisms, so distinct injective labelings
    of distinct canonical codes give distinct codes.
    """
    for h in hf_sets_by_size(field_bound - 1):
        canon = encode_hf(h)
        nodes = sorted(canon.field)
        for labels in itertools.permutations(range(field_bound), len(nodes)):
            m = dict(zip(nodes, labels))
            rel = RelCode(frozenset((m[b], m[c]) for b, c in canon.edges))
            yield SetCode(rel, m[canon.bot], m[canon.top])
