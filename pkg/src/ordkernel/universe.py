"""Sets of ordinals and the relational term library.

A set of ordinals is a ``frozenset`` of ints.  Relations are sets of ordinals
read as sets of pairs through :func:`~ordkernel.ordinals.unpair`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import DomainError, ResourceLimitError
from .ordinals import pair, unpair

OrdSet = frozenset

DEFAULT_SEGMENT_BOUND = 1_000_000
DEFAULT_POW_BOUND = 12


def ordset(xs: Iterable[int] = ()) -> frozenset:
    xs = frozenset(xs)
    for x in xs:
        if not isinstance(x, int) or x < 0:
            raise DomainError(f"not an ordinal: {x!r}")
    return xs


def format_ordset(a: Iterable[int]) -> str:
    return "{" + ",".join(str(x) for x in sorted(a)) + "}"


def parse_ordset(text: str) -> frozenset:
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise DomainError(f"set of ordinals must be written in braces: {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return frozenset()
    try:
        return ordset(int(tok) for tok in inner.split(","))
    except ValueError:
        raise DomainError(f"malformed set of ordinals: {text!r}") from None


def initial_segment(alpha: int, bound: int = DEFAULT_SEGMENT_BOUND) -> frozenset:
    if alpha < 0:
        raise DomainError("negative ordinal")
    if alpha > bound:
        raise ResourceLimitError(f"initial segment {alpha} exceeds bound {bound}")
    return frozenset(range(alpha))


def lub(a: Iterable[int]) -> int:
    """Least strict upper bound; 0 for the empty set."""
    return max(a, default=-1) + 1


def domain_of(a: Iterable[int]) -> frozenset:
    return frozenset(unpair(g).first for g in a)


def range_of(a: Iterable[int]) -> frozenset:
    return frozenset(unpair(g).second for g in a)


def field_of(a: Iterable[int]) -> frozenset:
    a = tuple(a)
    return domain_of(a) | range_of(a)


def compose(g: Iterable[int], f: Iterable[int]) -> frozenset:
    """``{(x, z) | (x, y) in f and (y, z) in g}``, relations need not be functional."""
    out = set()
    g_by_first: dict[int, list[int]] = {}
    for c in g:
        y, z = unpair(c)
        g_by_first.setdefault(y, []).append(z)
    for c in f:
        x, y = unpair(c)
        for z in g_by_first.get(y, ()):
            out.add(pair(x, z))
    return frozenset(out)


def restrict(a: Iterable[int], y: Iterable[int]) -> frozenset:
    y = frozenset(y)
    return frozenset(c for c in a if unpair(c).first in y)


def image(f: Iterable[int], x: Iterable[int]) -> frozenset:
    x = frozenset(x)
    return frozenset(q for p, q in map(unpair, f) if p in x)


def subsets_canonical(a: Iterable[int]) -> list[frozenset]:
    """Non-empty subsets of ``a`` ordered by size, then lexicographically."""
    elems = sorted(a)
    out = []
    for k in range(1, len(elems) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(elems, k))
    return out


@dataclass(frozen=True)
class PowWitness:
    base: frozenset
    code: frozenset
    xi: Mapping[frozenset, int] = field(hash=False, compare=True)

    def lines(self) -> list[str]:
        rows = [format_ordset(self.code)]
        for z, n in sorted(self.xi.items(), key=lambda kv: kv[1]):
            rows.append(f"{format_ordset(z)} {n}")
        return rows

    def decode(self, xi_value: int) -> frozenset:
        """The set named by ``xi_value`` in this witness (possibly empty)."""
        return frozenset(b for b, n in map(unpair, self.code) if n == xi_value)


def pow_witness(a: Iterable[int], bound: int = DEFAULT_POW_BOUND) -> PowWitness:
    """Build a set ``b`` satisfying the power set axiom for ``a``.

    Subsets are numbered in canonical order; the n-th subset gets name n.
    Injectivity of the naming makes each name the unique witness for its subset.
    """
    a = ordset(a)
    if len(a) > bound:
        raise ResourceLimitError(
            f"power set witness of a {len(a)}-element set exceeds bound {bound}")
    xi = {}
    code = set()
    for n, z in enumerate(subsets_canonical(a)):
        xi[z] = n
        code.update(pair(b, n) for b in z)
    return PowWitness(a, frozenset(code), xi)
