"""Finite truncations of the ordinal/set-of-ordinal universe.

Ordinals are carrier elements labelled by ints; sets of ordinals are labelled
by their ``{0,2,5}`` text.  The two sorts are told apart by the ``Ord`` and
``SOrd`` predicates, so no marker element is needed.
"""
from __future__ import annotations

import itertools

from ..errors import ResourceLimitError
from ..ordinals import pair
from ..universe import format_ordset, parse_ordset
from .semantics import FiniteStructure, compile_formula

MAX_SO_RANK = 6
MAX_ORDINALS = 64
MAX_SET_WIDTH = 12


def so_truncation(n_ordinals: int, set_width: int | None = None) -> FiniteStructure:
    """Ordinals ``0..n-1`` and every subset of ``0..w-1`` (``w`` defaults to n).

    ``G`` is the pairing function where its value stays below ``n``, and is
    undefined beyond; on sets it is 0, as the sort axiom asks for an ordinal
    value everywhere.
    """
    w = n_ordinals if set_width is None else set_width
    if not 1 <= n_ordinals <= MAX_ORDINALS or not 0 <= w <= min(n_ordinals, MAX_SET_WIDTH):
        raise ResourceLimitError(f"truncation with {n_ordinals} ordinals is out of range")
    ords = list(range(n_ordinals))
    sets = []
    for k in range(w + 1):
        sets.extend(frozenset(c) for c in itertools.combinations(range(w), k))
    labels = [format_ordset(s) for s in sets]
    carrier = ords + labels
    less = [(a, b) for a in ords for b in ords if a < b]
    mem = [(a, lab) for s, lab in zip(sets, labels) for a in sorted(s)]
    g = {}
    for x in carrier:
        for y in carrier:
            if isinstance(x, int) and isinstance(y, int):
                v = pair(x, y)
                if v < n_ordinals:
                    g[(x, y)] = v
            else:
                g[(x, y)] = 0
    return FiniteStructure(
        carrier,
        {"Ord": [(a,) for a in ords], "SOrd": [(s,) for s in labels], "<": less, "in": mem},
        {"G": g},
    )


def so_structure_of(k: int) -> FiniteStructure:
    """Ordinals and sets of ordinals of hereditarily finite rank at most k:
    the ordinals ``0..k`` and the subsets of ``0..k-1``."""
    if k < 0 or k > MAX_SO_RANK:
        raise ResourceLimitError(f"rank bound {k} exceeds {MAX_SO_RANK}")
    return so_truncation(k + 1, k)


def ordinals_of(M):
    """Ordinals of an SO structure, in increasing ``<`` order."""
    ords = list(M.domain("Ord"))
    less = M.relations.get("<", frozenset())
    return sorted(ords, key=lambda a: sum((b, a) in less for b in ords))


def set_extension(M, s):
    return frozenset(a for (a, t) in M.relations.get("in", ()) if t == s)


def reflect_search(phi, M: FiniteStructure, params=None):
    """Least ``alpha`` below the number of ordinals such that ``phi`` and its
    restriction to ``iota_alpha`` agree at the given parameters.

    Only the supplied parameter assignment is checked.  Ordinal parameters
    must lie below alpha and set parameters inside ``iota_alpha``.
    """
    params = dict(params or {})
    ords = ordinals_of(M)
    position = {a: i for i, a in enumerate(ords)}
    sets = M.domain("SOrd") if "SOrd" in M.relations else ()
    ext = {s: set_extension(M, s) for s in sets}
    truth = compile_formula(phi, M)(params)
    for alpha in range(len(ords)):
        iota = set(ords[:alpha])
        if not _params_inside(params, position, ext, iota, alpha):
            continue
        dom = iota | {s for s in sets if ext[s] <= iota}
        if compile_formula(phi, M, domain=dom)(params) == truth:
            return alpha
    return None


def _params_inside(params, position, ext, iota, alpha):
    for v in params.values():
        if v in position:
            if position[v] >= alpha:
                return False
        elif v in ext and not ext[v] <= iota:
            return False
    return True


def parse_set_label(label):
    return parse_ordset(label)
