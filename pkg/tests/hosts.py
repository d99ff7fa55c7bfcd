"""Random 4-element host structures with a fixed interpretation of a small
target language (relation R, unary function f, constant c), and the
exhaustive target-formula corpus used for the soundness check."""
import itertools
import random

from ordkernel.formula import DefinedStructure, Ex, FiniteStructure, Not, Or, parse

INTERPRETATION = dict(
    universe="U(x)",
    equality="E(v1,v2)",
    relations={"R": (2, "EX z . (S(v1,z) & S(z,v2))")},
    functions={"f": (1, "F(v1,v2)")},
    constants={"c": "C(x)"},
)

ATOMS = ["x = y", "R(x,y)", "x = f(y)", "y = c", "R(f(x),c)"]


def interpretation():
    return DefinedStructure(**INTERPRETATION)


def random_host(rng, n=4):
    carrier = list(range(n))
    while True:
        U = [a for a in carrier if rng.random() < 0.7]
        if U:
            break
    if rng.random() < 0.3:
        cls = list(carrier)
    else:
        cls = [rng.randrange(n) for _ in carrier]
    classes = sorted(set(cls))
    in_u = [k for k in classes if any(cls[a] == k for a in U)]
    S_cls = {(k, l) for k in classes for l in classes if rng.random() < 0.4}
    target = {k: rng.choice(in_u) for k in classes}
    c_cls = rng.choice(in_u)
    rels = {
        "U": [(a,) for a in U],
        "E": [(a, b) for a in carrier for b in carrier if cls[a] == cls[b]],
        "S": [(a, b) for a in carrier for b in carrier if (cls[a], cls[b]) in S_cls],
        "F": [(a, b) for a in carrier for b in carrier if cls[b] == target[cls[a]]],
        "C": [(a,) for a in carrier if cls[a] == c_cls],
    }
    return FiniteStructure(carrier, rels)


def hosts(count, seed=0):
    rng = random.Random(seed)
    return [random_host(rng) for _ in range(count)]


def formulas(max_depth=3):
    """Every formula up to ``max_depth`` built from ATOMS by negation, both
    existential quantifiers and disjunction with an atom on the right."""
    layer = [parse(a, signature=None, constants=("c",)) for a in ATOMS]
    atoms = list(layer)
    everything = list(layer)
    for _ in range(max_depth):
        nxt = []
        for f in everything:
            nxt.append(Not(f))
            nxt.append(Ex("x", None, f))
            nxt.append(Ex("y", None, f))
            nxt.extend(Or(f, a) for a in atoms)
        everything = atoms + nxt
    return everything


def assignments(elements):
    return [{"x": a, "y": b} for a, b in itertools.product(elements, repeat=2)]
