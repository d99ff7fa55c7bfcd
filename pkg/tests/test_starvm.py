import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ordkernel.errors import BudgetError, ContractError, DecodeError, DomainError, FormulaSyntaxError
from ordkernel.ordinals import pair, tuple_encode
from ordkernel.starvm import (
    Base, Comp, EvalBudget, Machine, RecMin, arity_of, ast_of, define_set, eval_base,
    evaluate, format_program, fun_universal, is_rec, minimal_name, number_of,
    parse_program, subset_test,
)

from programs import NaiveEvaluator, corpus, rand_fun

B0 = 2 ** 16
P = lambda m, n: Base("proj", m, n)
BOUNDED_SUCC = RecMin(Comp(Base("less"), (P(1, 2), P(0, 2))))


def test_eval_base_examples():
    assert eval_base("less", [2, 3]) == 1
    assert eval_base("less", [3, 3]) == 0
    assert eval_base("not", [0]) == 1
    assert eval_base("g-bounded", [5, 1, 0]) == 2
    assert eval_base("g-bounded", [2, 1, 1]) == 2
    assert eval_base(P(1, 3), [7, 8, 9]) == 8
    assert eval_base("g1", [pair(3, 4)]) == 3 and eval_base("g2", [pair(3, 4)]) == 4
    assert eval_base("or", [0, 0]) == 0 and eval_base("or", [0, 5]) == 1
    with pytest.raises(ContractError):
        eval_base("less", [1])


def test_arity_checks():
    assert arity_of(Base("less")) == 2
    assert arity_of(Comp(Base("not"), (Base("less"),))) == 2
    assert arity_of(P(1, 3)) == 3
    assert arity_of(number_of(P(1, 3), B0)) == 3
    with pytest.raises(ContractError):
        Comp(Base("less"), (Base("id"),))
    with pytest.raises(ContractError):
        Comp(Base("less"), (Base("id"), Base("less")))
    with pytest.raises(ContractError):
        RecMin(Base("less"), ((Base("id"),),))
    with pytest.raises(ContractError):
        P(3, 3)


def test_recmin_examples():
    always = RecMin(Comp(Base("eq"), (Base("id"), Base("id"))))
    assert evaluate(always, [0]) == 0
    assert all(evaluate(always, [k]) == 0 for k in range(1, 8))
    never = RecMin(Comp(Base("less"), (Base("id"), Base("id"))))
    assert all(evaluate(never, [k]) == k for k in range(8))
    assert evaluate(BOUNDED_SUCC, [10, 3]) == 4
    assert evaluate(BOUNDED_SUCC, [3, 5]) == 3


def self_probe():
    # f(b0, b1): the row calls f at (b0, b1) itself, which must read as 0,
    # so g = not(r) fires at delta = 0 whenever b0 > 0
    g = Comp(Base("not"), (P(2, 3),))
    return RecMin(g, ((P(1, 2),),))


def test_truncation_at_defining_point():
    f = self_probe()
    m = Machine()
    assert m.run(f, [3, 2]) == 0
    assert m.truncated > 0
    assert evaluate(f, [0, 4]) == 0


def test_row_recursion_descends():
    # f(b0, b1) = 0 if f(b0, b1 - 1) == 0 else ...; exercises genuine self-calls
    dec = RecMin(Comp(Base("less"), (P(0, 2), P(1, 2))))  # min(b1, b0)... predecessor-ish helper
    g = Comp(Base("eq"), (P(2, 3), P(1, 3)))
    f = RecMin(g, ((Comp(Base("g-bounded"), (P(1, 2), P(0, 2), P(0, 2))),),))
    naive = NaiveEvaluator(6)
    for a in itertools.product(range(6), repeat=2):
        assert evaluate(f, a) == naive(f, a)
        assert evaluate(dec, a) == naive(dec, a)


def test_argument_bound_and_fuel():
    with pytest.raises(DomainError):
        evaluate(Base("id"), [10], EvalBudget(beta0=10))
    never = RecMin(Comp(Base("less"), (Base("id"), Base("id"))))
    with pytest.raises(BudgetError):
        evaluate(never, [5000], EvalBudget(fuel=100))
    with pytest.raises(ContractError):
        EvalBudget(fuel=0)


def test_determinism_of_step_counts():
    f = self_probe()
    runs = []
    for _ in range(2):
        m = Machine()
        runs.append((m.run(f, [9, 7]), m.steps))
    assert runs[0] == runs[1]


def test_matches_naive_oracle():
    progs = corpus(60, seed=3, arities=(1, 2), need_recmin=True)
    for f in progs:
        naive = NaiveEvaluator(8)
        for a in itertools.product(range(9), repeat=f.arity):
            assert evaluate(f, a) == naive(f, a), format_program(f)


def test_truncation_is_stable_under_larger_boxes():
    # a value computed inside a small box is unchanged when the box grows
    f = self_probe()
    small = {a: evaluate(f, a) for a in itertools.product(range(4), repeat=2)}
    big = NaiveEvaluator(9)
    for a, v in small.items():
        assert big(f, a) == v


def test_numbering_roundtrip_and_dominance():
    progs = corpus(200, seed=11)
    for f in progs:
        c = number_of(f, B0)
        assert ast_of(c) == f
        if not isinstance(f, Base):
            assert c > tuple_encode([B0 - 1] * f.arity)
    codes = {number_of(f, B0) for f in progs}
    assert len(codes) == len(set(progs))
    assert number_of(Base("id"), B0) == 0


def test_decode_errors():
    assert not is_rec(pair(3, 0))
    assert not is_rec(pair(0, pair(9, 0)))
    with pytest.raises(DecodeError):
        ast_of(pair(0, pair(1, pair(2, 2))))
    # mixing two bounds inside one code is rejected
    inner = number_of(BOUNDED_SUCC, 5)
    outer = number_of(Comp(Base("not"), (BOUNDED_SUCC,)), 7)
    assert is_rec(inner) and is_rec(outer)
    from ordkernel.starvm.numbering import lift
    mixed = pair(1, pair(lift(7, 2), pair(number_of(Base("not"), 7), pair(0, inner))))
    with pytest.raises(DecodeError):
        ast_of(mixed)


def test_fun_universal_examples():
    assert fun_universal(number_of(Base("less"), B0), tuple_encode([2, 3])) == 1
    assert fun_universal(number_of(Base("id"), B0), 5) == 5
    assert fun_universal(number_of(BOUNDED_SUCC, B0), tuple_encode([10, 3])) == 4
    with pytest.raises(DecodeError):
        fun_universal(pair(7, 7), 0)


def test_fun_universal_matches_eval():
    for f in corpus(80, seed=5):
        c = number_of(f, B0)
        for a in itertools.product(range(7), repeat=f.arity):
            assert fun_universal(c, tuple_encode(list(a))) == evaluate(f, a)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_universal_property(seed, arity):
    f = rand_fun(random.Random(seed), arity, 6)
    c = number_of(f, B0)
    assert ast_of(c) == f
    a = [random.Random(seed + 1).randrange(12) for _ in range(arity)]
    assert fun_universal(c, tuple_encode(a)) == evaluate(f, a)


LESS = number_of(Base("less"), B0)


def test_define_set_examples():
    assert define_set(10, LESS, 5) == {0, 1, 2, 3, 4}
    assert define_set(10, pair(9, 9), 5) == frozenset()
    assert define_set(0, LESS, 5) == frozenset()
    big = define_set(12, LESS, 7)
    for alpha in range(13):
        assert define_set(alpha, LESS, 7) == big & set(range(alpha))


def test_subset_test():
    assert subset_test((10, LESS, 2), (10, LESS, 3), 10)
    assert subset_test((10, LESS, 4), (10, LESS, 4), 10)
    single_two = (3, number_of(Comp(Base("eq"), (P(0, 2), P(1, 2))), B0), 2)
    assert define_set(*single_two) == {2}
    assert not subset_test(single_two, (0, LESS, 0), 10)
    assert subset_test((0, LESS, 0), single_two, 10)


def test_minimal_name():
    assert minimal_name(set(), 100) == 0
    assert minimal_name({1}, 0) is None
    from ordkernel.starvm import name_triple
    for a in [{0}, {0, 1}, {0, 1, 2}, {1}, {2}]:
        d = minimal_name(a, 10 ** 4)
        if d is not None:
            assert define_set(*name_triple(d)) == a
            for smaller in range(d):
                assert define_set(*name_triple(smaller)) != a


def test_sexp_roundtrip():
    f = parse_program("(recmin (less (proj 1 2) (proj 0 2)) ())")
    assert f == BOUNDED_SUCC
    assert evaluate(f, [10, 3]) == 4
    for g in corpus(100, seed=2):
        assert parse_program(format_program(g)) == g
    assert parse_program("; comment\n(not (less (proj 0 2) (proj 1 2)))").arity == 2
    for bad in ["(less id)", "(foo 1)", "(proj 1)", "(not id", "id id", ""]:
        with pytest.raises(FormulaSyntaxError):
            parse_program(bad)
