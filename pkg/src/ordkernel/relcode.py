"""Binary relations on ordinals as candidate codes for hierarchical sets.

An edge ``(b, a)`` means ``b`` is an immediate predecessor of ``a``; in a set
code ``b`` stands for an element of the set coded at ``a``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional

from .errors import DomainError
from .ordinals import pair, unpair


@dataclass(frozen=True)
class RelCode:
    edges: frozenset

    @classmethod
    def of(cls, edges: Iterable[tuple[int, int]]) -> "RelCode":
        es = frozenset((int(b), int(a)) for b, a in edges)
        for b, a in es:
            if b < 0 or a < 0:
                raise DomainError("relation codes range over ordinals")
        return cls(es)

    @classmethod
    def from_ordinals(cls, gammas: Iterable[int]) -> "RelCode":
        return cls(frozenset(tuple(unpair(g)) for g in gammas))

    def ordinals(self) -> frozenset:
        return frozenset(pair(b, a) for b, a in self.edges)

    @cached_property
    def field(self) -> frozenset:
        return frozenset(x for e in self.edges for x in e)

    @cached_property
    def _preds(self) -> dict:
        preds = {x: set() for x in self.field}
        for b, a in self.edges:
            preds[a].add(b)
        return {x: frozenset(p) for x, p in preds.items()}

    @cached_property
    def _succs(self) -> dict:
        succs = {x: set() for x in self.field}
        for b, a in self.edges:
            succs[b].add(a)
        return {x: frozenset(s) for x, s in succs.items()}

    def pred(self, alpha: int) -> frozenset:
        return self._preds.get(alpha, frozenset())

    def succ(self, alpha: int) -> frozenset:
        return self._succs.get(alpha, frozenset())

    def __len__(self):
        return len(self.edges)

    def __str__(self):
        return format_relcode(self)

    def __repr__(self):
        return f"RelCode({format_relcode(self)})"


@dataclass(frozen=True)
class SetCode:
    rel: RelCode
    bot: int
    top: int

    @property
    def edges(self) -> frozenset:
        return self.rel.edges

    @property
    def field(self) -> frozenset:
        return self.rel.field

    def pred(self, alpha: int) -> frozenset:
        return self.rel.pred(alpha)

    def __str__(self):
        return format_relcode(self.rel)

    def __repr__(self):
        return f"SetCode({format_relcode(self.rel)})"


def format_relcode(a) -> str:
    edges = a.edges if hasattr(a, "edges") else a
    return "{" + ",".join(f"({b},{c})" for b, c in sorted(edges)) + "}"


def format_edge_lines(a) -> str:
    edges = a.edges if hasattr(a, "edges") else a
    return "\n".join(f"{b}->{c}" for b, c in sorted(edges))


_PAIR = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")
_ARROW = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*$")


def parse_relcode(text: str) -> RelCode:
    """Accepts ``{(0,1),(1,2)}`` or one ``b->a`` edge per line."""
    s = text.strip()
    if s.startswith("{"):
        if not s.endswith("}"):
            raise DomainError(f"unterminated relation code: {text!r}")
        body = s[1:-1]
        edges = _PAIR.findall(body)
        if _PAIR.sub("", body).replace(",", "").strip():
            raise DomainError(f"malformed relation code: {text!r}")
        return RelCode.of((int(b), int(a)) for b, a in edges)
    edges = []
    for line in s.replace(";", "\n").splitlines():
        if not line.strip():
            continue
        m = _ARROW.match(line)
        if not m:
            raise DomainError(f"malformed edge line: {line!r}")
        edges.append((int(m.group(1)), int(m.group(2))))
    return RelCode.of(edges)


# --- predicates of the set-code definition ---------------------------------

def is_chain(c: frozenset, a: RelCode, top: int, low: int) -> bool:
    """Literal chain predicate: ``c`` is a single descending path from
    ``top`` to ``low`` with no further edges inside ``c``."""
    if top not in c or low not in c:
        return False
    inside = [(b, x) for b, x in a.edges if b in c and x in c]
    n_pred = dict.fromkeys(c, 0)
    n_succ = dict.fromkeys(c, 0)
    for b, x in inside:
        n_succ[b] += 1
        n_pred[x] += 1
    for g in c:
        if n_pred[g] > 1 or n_succ[g] > 1:
            return False
        if (g != top) != (n_succ[g] > 0):
            return False
        if (g != low) != (n_pred[g] > 0):
            return False
    return True


def chain_exists(a: RelCode, top: int, low: int, acyclic: Optional[bool] = None) -> bool:
    if acyclic is None:
        acyclic = is_well_founded(a)
    if acyclic:
        # a shortest descending path in an acyclic relation has no chords
        path = _shortest_descent(a, top, low)
        return path is not None and is_chain(frozenset(path), a, top, low)
    return any(is_chain(frozenset(p), a, top, low) for p in _simple_descents(a, top, low))


def _shortest_descent(a: RelCode, top: int, low: int):
    if top not in a.field or low not in a.field:
        return None
    parent = {top: None}
    frontier = [top]
    while frontier:
        nxt = []
        for x in frontier:
            if x == low:
                path = []
                while x is not None:
                    path.append(x)
                    x = parent[x]
                return path
            for p in sorted(a.pred(x)):
                if p not in parent:
                    parent[p] = x
                    nxt.append(p)
        frontier = nxt
    return None


def _simple_descents(a: RelCode, top: int, low: int):
    if top not in a.field or low not in a.field:
        return
    stack = [(top, [top])]
    while stack:
        x, path = stack.pop()
        if x == low:
            yield path
            continue
        for p in sorted(a.pred(x), reverse=True):
            if p not in path:
                stack.append((p, path + [p]))


def is_well_founded(a: RelCode) -> bool:
    """Every non-empty subset of the field has a minimal element.

    For finite relations this is acyclicity, decided by peeling off
    elements without predecessors.
    """
    remaining = {x: len(a.pred(x)) for x in a.field}
    ready = [x for x, n in remaining.items() if n == 0]
    seen = 0
    while ready:
        x = ready.pop()
        seen += 1
        for s in a.succ(x):
            remaining[s] -= 1
            if remaining[s] == 0:
                ready.append(s)
    return seen == len(remaining)


def is_extensional(a: RelCode) -> bool:
    preds = [a.pred(x) for x in a.field]
    return len(set(preds)) == len(preds)


def top_candidates(a: RelCode, acyclic: Optional[bool] = None) -> list[int]:
    if acyclic is None:
        acyclic = is_well_founded(a)
    return [t for t in sorted(a.field)
            if all(chain_exists(a, t, b, acyclic) for b in a.field)]


def bottoms(a: RelCode) -> list[int]:
    # restricted to the field: ordinals outside the field are not candidates
    return [x for x in sorted(a.field) if not a.pred(x)]


@dataclass(frozen=True)
class Classification:
    nonempty: bool
    fund: bool
    ext: bool
    unitop: bool
    unibotsuc: bool
    bot: Optional[int]
    top: Optional[int]

    @property
    def is_set(self) -> bool:
        return self.nonempty and self.fund and self.ext and self.unitop and self.unibotsuc

    def as_dict(self) -> dict:
        return {
            "nonempty": self.nonempty, "fund": self.fund, "ext": self.ext,
            "unitop": self.unitop, "unibotsuc": self.unibotsuc,
            "is_set": self.is_set, "bot": self.bot, "top": self.top,
        }


@lru_cache(maxsize=1 << 16)
def classify(a: RelCode) -> Classification:
    if isinstance(a, SetCode):
        a = a.rel
    fund = is_well_founded(a)
    tops = top_candidates(a, fund)
    bots = bottoms(a)
    return Classification(
        nonempty=bool(a.edges),
        fund=fund,
        ext=is_extensional(a),
        unitop=bool(tops),
        unibotsuc=all(len(a.succ(b)) == 1 for b in bots),
        bot=bots[0] if len(bots) == 1 else None,
        top=tops[0] if len(tops) == 1 else None,
    )


def as_set_code(a) -> SetCode:
    if isinstance(a, SetCode):
        return a
    if not isinstance(a, RelCode):
        raise DomainError(f"not a relation code: {a!r}")
    c = classify(a)
    if not c.is_set:
        raise DomainError(f"{format_relcode(a)} is not a set code")
    return SetCode(a, c.bot, c.top)


def below(a, alpha: int) -> frozenset:
    """Nodes reachable downward from ``alpha``, including ``alpha``."""
    seen = {alpha}
    stack = [alpha]
    while stack:
        x = stack.pop()
        for p in a.pred(x):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return frozenset(seen)


@lru_cache(maxsize=1 << 16)
def cut(a: SetCode, alpha: int) -> RelCode:
    """The part of ``a`` hanging below ``alpha``."""
    a = as_set_code(a)
    if alpha not in a.field:
        raise DomainError(f"{alpha} is not in the field of {a}")
    # in a set code the relation is acyclic, so chain-reachability is reachability
    reach = below(a.rel, alpha)
    return RelCode(frozenset((b, c) for b, c in a.edges if b in reach and c in reach))
