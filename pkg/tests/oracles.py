"""Independent reference implementations used by the test-suite.

Everything here follows the literal definitions by brute force and shares no
code with the package beyond the ``pair``/``unpair`` primitives.
"""
import itertools


def powerset(xs):
    xs = sorted(xs)
    for k in range(len(xs) + 1):
        for c in itertools.combinations(xs, k):
            yield frozenset(c)


def field(edges):
    return frozenset(x for e in edges for x in e)


def pred(edges, x):
    return frozenset(b for b, a in edges if a == x)


def literal_fund(edges):
    f = field(edges)
    for b in powerset(f):
        if b and not any(all((a, beta) not in edges for a in b) for beta in b):
            return False
    return True


def literal_ext(edges):
    f = sorted(field(edges))
    return all(pred(edges, x) != pred(edges, y) for x, y in itertools.combinations(f, 2))


def literal_unique(c, edges):
    for al, be, ga in itertools.product(c, repeat=3):
        if ((al, ga) in edges and (be, ga) in edges) or ((ga, al) in edges and (ga, be) in edges):
            if al != be:
                return False
    return True


def literal_chain(c, edges, al, be):
    if not (literal_unique(c, edges) and al in c and be in c):
        return False
    for g in c:
        if (g != al) != any((g, d) in edges for d in c):
            return False
        if (g != be) != any((d, g) in edges for d in c):
            return False
    return True


def literal_is_top(edges, al):
    f = field(edges)
    subsets = list(powerset(f))
    return all(any(literal_chain(c, edges, al, be) for c in subsets) for be in f)


def literal_is_set(edges):
    if not edges:
        return False
    f = field(edges)
    if not (literal_fund(edges) and literal_ext(edges)):
        return False
    if not any(literal_is_top(edges, t) for t in f):
        return False
    for x in f:
        if not pred(edges, x):
            if sum(1 for b, a in edges if b == x) != 1:
                return False
    return True


def all_relations(points):
    cells = [(b, a) for b in points for a in points]
    for mask in range(1 << len(cells)):
        yield frozenset(c for i, c in enumerate(cells) if mask >> i & 1)


# --- hereditarily finite sets as nested frozensets ---------------------------

def vn(n):
    out = frozenset()
    members = []
    for _ in range(n):
        members.append(out)
        out = frozenset(members)
    return out


def mostowski(edges, bot, top):
    """Recursive collapse to nested frozensets after dropping ``bot``."""
    memo = {}

    def go(x):
        if x not in memo:
            memo[x] = frozenset(go(b) for b, a in edges if a == x and b != bot)
        return memo[x]

    return go(top)


def rank(x):
    return max((rank(e) + 1 for e in x), default=0)


def frozen(h):
    """Convert an HFSet to nested frozensets."""
    return frozenset(frozen(e) for e in h.elements)
