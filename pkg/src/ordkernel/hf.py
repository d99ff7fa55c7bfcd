"""Hereditarily finite sets and the bridge between them and set codes.

``collapse`` sends a set code to the hereditarily finite set it codes
(drop the bottom node, then Mostowski-collapse); ``encode_hf`` goes back,
producing a canonical code.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DomainError
from .relcode import RelCode, SetCode, as_set_code


class HFSet:
    """An immutable hereditarily finite set.

    Equality is extensional; iteration and printing follow the canonical
    order (shorter serialization first, then lexicographic).
    """

    __slots__ = ("_elems", "_text", "_hash")

    def __init__(self, elems: Iterable["HFSet"] = ()):
        elems = frozenset(elems)
        for e in elems:
            if not isinstance(e, HFSet):
                raise TypeError(f"HF elements must be HFSet, got {type(e).__name__}")
        self._elems = elems
        self._text = None
        self._hash = hash(elems)

    @property
    def elements(self) -> frozenset:
        return self._elems

    def sorted(self) -> list["HFSet"]:
        return sorted(self._elems, key=HFSet.sort_key)

    def sort_key(self):
        t = str(self)
        return (len(t), t)

    def __iter__(self) -> Iterator["HFSet"]:
        return iter(self.sorted())

    def __contains__(self, x) -> bool:
        return x in self._elems

    def __len__(self) -> int:
        return len(self._elems)

    def __eq__(self, other):
        if not isinstance(other, HFSet):
            return NotImplemented
        return self._hash == other._hash and self._elems == other._elems

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self._text is None:
            self._text = "{" + ",".join(str(e) for e in self.sorted()) + "}"
        return self._text

    def __repr__(self):
        return f"HFSet({self})"


EMPTY = HFSet()


def hf(*elems: HFSet) -> HFSet:
    return HFSet(elems)


def hf_ordinal(n: int) -> HFSet:
    """The von Neumann ordinal ``n``."""
    out = EMPTY
    members = []
    for _ in range(n):
        members.append(out)
        out = HFSet(members)
    return out


def parse_hf(text: str) -> HFSet:
    s = "".join(text.split())
    pos = 0

    def parse_at():
        nonlocal pos
        if pos >= len(s) or s[pos] != "{":
            raise DomainError(f"expected '{{' at position {pos} in {text!r}")
        pos += 1
        elems = []
        if pos < len(s) and s[pos] == "}":
            pos += 1
            return HFSet()
        while True:
            elems.append(parse_at())
            if pos < len(s) and s[pos] == ",":
                pos += 1
                continue
            if pos < len(s) and s[pos] == "}":
                pos += 1
                return HFSet(elems)
            raise DomainError(f"expected ',' or '}}' at position {pos} in {text!r}")

    out = parse_at()
    if pos != len(s):
        raise DomainError(f"trailing input at position {pos} in {text!r}")
    return out


@lru_cache(maxsize=None)
def hf_rank(h: HFSet) -> int:
    return max((hf_rank(e) + 1 for e in h.elements), default=0)


def transitive_closure(h: HFSet) -> frozenset:
    """All sets hereditarily below ``h``, excluding ``h`` itself."""
    seen = set()
    stack = list(h.elements)
    while stack:
        x = stack.pop()
        if x not in seen:
            seen.add(x)
            stack.extend(x.elements)
    return frozenset(seen)


def hf_size(h: HFSet) -> int:
    """Number of nodes of ``TC({h})``."""
    return len(transitive_closure(h) | {h})


# --- collapse -------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def node_values(a: SetCode) -> dict:
    """Collapse value of every non-bottom node of a set code."""
    a = as_set_code(a)
    values = {}
    order = _topological(a)
    for x in order:
        if x == a.bot:
            continue
        values[x] = HFSet(values[p] for p in a.pred(x) if p != a.bot)
    return values


def _topological(a: SetCode) -> list[int]:
    indeg = {x: len(a.pred(x)) for x in a.field}
    ready = sorted(x for x, n in indeg.items() if n == 0)
    out = []
    while ready:
        x = ready.pop()
        out.append(x)
        for s in a.rel.succ(x):
            indeg[s] -= 1
            if indeg[s] == 0:
                ready.append(s)
    return out


def collapse(a) -> HFSet:
    a = as_set_code(a)
    return node_values(a)[a.top]


def encode_hf(h: HFSet) -> SetCode:
    """Canonical code of ``h``: node 0 is the bottom, the remaining nodes of
    ``TC({h})`` are numbered 1, 2, ... in depth-first postorder."""
    number: dict[HFSet, int] = {}
    edges = []

    def visit(x: HFSet):
        # iterative postorder keeps deep ordinals off the Python stack
        stack = [(x, False)]
        while stack:
            node, done = stack.pop()
            if node in number:
                continue
            if done:
                number[node] = len(number) + 1
                continue
            stack.append((node, True))
            for e in reversed(node.sorted()):
                if e not in number:
                    stack.append((e, False))

    visit(h)
    for x, n in number.items():
        if not x.elements:
            edges.append((0, n))
        for e in x.elements:
            edges.append((number[e], n))
    rel = RelCode(frozenset(edges))
    return SetCode(rel, 0, number[h])


# --- enumeration ----------------------------------------------------------

@lru_cache(maxsize=None)
def _transitive_sets(max_size: int) -> tuple:
    """All non-empty transitive HF sets with at most ``max_size`` elements."""
    layer = {frozenset([EMPTY])}
    found = set(layer)
    for _ in range(max_size - 1):
        nxt = set()
        for t in layer:
            members = sorted(t, key=HFSet.sort_key)
            for mask in range(1 << len(members)):
                x = HFSet(m for i, m in enumerate(members) if mask >> i & 1)
                if x not in t:
                    nxt.add(t | {x})
        nxt -= found
        found |= nxt
        layer = nxt
    return tuple(found)


def hf_sets_by_size(max_nodes: int) -> list[HFSet]:
    """Every HF set ``h`` with ``|TC({h})| <= max_nodes``, canonically ordered."""
    if max_nodes < 1:
        return []
    out = set()
    for t in _transitive_sets(max_nodes):
        for h in t:
            if hf_size(h) <= max_nodes:
                out.add(h)
    return sorted(out, key=lambda h: (hf_size(h), h.sort_key()))


def hf_sets_of_rank(max_rank: int) -> list[HFSet]:
    """The finite level ``V_{max_rank+1}``: every set of rank ``<= max_rank``."""
    level = [EMPTY]
    for _ in range(max_rank):
        n = len(level)
        level = [HFSet(level[i] for i in range(n) if mask >> i & 1) for mask in range(1 << n)]
    return sorted(level, key=HFSet.sort_key)
