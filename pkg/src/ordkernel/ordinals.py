"""Finite ordinals and the Goedel pairing function.

Ordinals are plain non-negative Python ints.  Pairs are ordered by the
max-lexicographic order ``<*``: first by the larger coordinate, then by the
first coordinate, then by the second.  ``pair`` returns the rank of a pair in
that order, which makes it a bijection between pairs and ordinals.
"""
from __future__ import annotations

from math import isqrt
from typing import NamedTuple, Sequence

from .errors import DomainError, InvalidArity


class OrdPair(NamedTuple):
    first: int
    second: int


def _check(*values: int) -> None:
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise DomainError(f"not an ordinal: {v!r}")


def pair(alpha: int, beta: int) -> int:
    _check(alpha, beta)
    # pairs with max < m are exactly m*m many; within max m the order is
    # (0,m) < (1,m) < ... < (m-1,m) < (m,0) < (m,1) < ... < (m,m)
    if alpha < beta:
        return beta * beta + alpha
    return alpha * alpha + alpha + beta


def unpair(gamma: int) -> OrdPair:
    _check(gamma)
    m = isqrt(gamma)
    r = gamma - m * m
    if r < m:
        return OrdPair(r, m)
    return OrdPair(m, r - m)


def g1(gamma: int) -> int:
    return unpair(gamma).first


def g2(gamma: int) -> int:
    return unpair(gamma).second


def star_key(p: Sequence[int]) -> tuple[int, int, int]:
    return (max(p[0], p[1]), p[0], p[1])


def star_less(p: Sequence[int], q: Sequence[int]) -> bool:
    """Strict ``<*`` comparison of two ordinal pairs."""
    a, b = p
    c, d = q
    m, n = (a if a > b else b), (c if c > d else d)
    if m != n:
        return m < n
    return a < c or (a == c and b < d)


def tuple_encode(xs: Sequence[int]) -> int:
    """Right-nested pairing ``(x1,(x2,(...,(x_{n-1},x_n))))``."""
    if not xs:
        raise InvalidArity("cannot encode an empty tuple")
    _check(*xs)
    acc = xs[-1]
    for x in reversed(xs[:-1]):
        acc = pair(x, acc)
    return acc


def tuple_decode(gamma: int, n: int) -> list[int]:
    if n < 1:
        raise InvalidArity(f"tuple arity must be at least 1, got {n}")
    _check(gamma)
    out = []
    for _ in range(n - 1):
        head, gamma = unpair(gamma)
        out.append(head)
    out.append(gamma)
    return out


def godel_closed(eta: int) -> bool:
    """True iff ``pair(x, y) < eta`` for all ``x, y < eta``."""
    _check(eta)
    if eta == 0:
        return True
    # (eta-1, eta-1) is the <*-largest pair below eta and pair is <*-monotone
    return pair(eta - 1, eta - 1) < eta
