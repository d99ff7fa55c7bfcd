import itertools

import pytest

from ordkernel.codes import (
    EMPTY_CODE, build_from_predecessors, choice_code, code_of_ordinal,
    enumerate_set_codes, equivalent, image_code, iso, mem, pair_code, power_code,
    replacement_code, separation_code, union_code,
)
from ordkernel.errors import ContractError, DomainError, ResourceLimitError
from ordkernel.hf import collapse, encode_hf, hf_ordinal, parse_hf
from ordkernel.relcode import (
    RelCode, as_set_code, chain_exists, classify, cut, format_edge_lines,
    format_relcode, is_chain, parse_relcode,
)

from oracles import (
    all_relations, field, literal_chain, literal_fund, literal_is_set, mostowski,
    powerset, vn,
)


def R(*edges):
    return RelCode.of(edges)


ZERO = EMPTY_CODE
ONE = code_of_ordinal(1)
TWO = code_of_ordinal(2)
THREE = code_of_ordinal(3)


def test_classify_examples():
    c = classify(R((0, 1)))
    assert c.is_set and c.bot == 0 and c.top == 1
    assert not classify(R()).is_set
    assert not classify(R((0, 1), (1, 0))).fund


def test_classify_flags_against_literal_definitions():
    for edges in all_relations(range(3)):
        rel = RelCode(edges)
        c = classify(rel)
        assert c.fund == literal_fund(edges)
        assert c.is_set == literal_is_set(edges)


def test_chain_matches_literal_on_cyclic_relations():
    rels = [
        R((0, 1), (1, 2), (2, 0)),
        R((0, 1), (1, 2), (0, 2)),
        R((0, 1), (1, 2), (2, 1)),
        R((0, 1), (1, 1)),
        R((0, 0)),
    ]
    for rel in rels:
        f = field(rel.edges)
        for al, be in itertools.product(f, repeat=2):
            literal = any(literal_chain(c, rel.edges, al, be) for c in powerset(f))
            assert chain_exists(rel, al, be) == literal
            assert chain_exists(rel, al, be, acyclic=False) == literal


def test_is_chain_singleton():
    assert is_chain(frozenset({3}), R((0, 3)), 3, 3)
    assert not is_chain(frozenset({0}), R((0, 0)), 0, 0)


def test_enumeration_matches_brute_force():
    for fb in (1, 2, 3):
        expected = {rel for rel in all_relations(range(fb)) if literal_is_set(rel)}
        got = [a.rel.edges for a in enumerate_set_codes(fb)]
        assert len(got) == len(set(got))
        assert set(got) == expected


def test_enumeration_examples():
    # nothing in the set-code definition orders bottom below top
    assert {a.edges for a in enumerate_set_codes(2)} == {
        frozenset({(0, 1)}), frozenset({(1, 0)})}
    assert list(enumerate_set_codes(1)) == []


@pytest.mark.slow
def test_enumeration_field_bound_four():
    expected = {rel for rel in all_relations(range(4)) if classify(RelCode(rel)).is_set}
    got = [a.rel.edges for a in enumerate_set_codes(4)]
    assert len(got) == len(set(got)) == len(expected)
    assert set(got) == expected


def test_equivalence_classes_match_collapses():
    codes = list(enumerate_set_codes(4))
    reps = []
    for a in codes:
        if not any(iso(a, r) is not None for r in reps):
            reps.append(a)
    assert len(reps) == len({collapse(a) for a in codes})


def test_cut_examples():
    assert cut(TWO, 3).edges == TWO.edges
    assert cut(TWO, 2).edges == {(0, 1), (1, 2)}
    assert cut(TWO, 1).edges == {(0, 1)}
    assert cut(ZERO, 1).edges == ZERO.edges
    with pytest.raises(DomainError):
        cut(TWO, 9)


def test_iso_examples():
    assert iso(ZERO, ZERO) == {0: 0, 1: 1}
    assert iso(ZERO, R((7, 9))) == {0: 7, 1: 9}
    assert iso(ZERO, ONE) is None


def test_iso_is_edge_preserving_bijection():
    codes = list(enumerate_set_codes(4))
    for a, b in itertools.product(codes[::7], codes[::5]):
        f = iso(a, b)
        if f is None:
            continue
        assert sorted(f) == sorted(a.field) and sorted(f.values()) == sorted(b.field)
        assert {(f[x], f[y]) for x, y in a.edges} == set(b.edges)


def test_mem_examples():
    for x in enumerate_set_codes(4):
        assert not mem(x, ZERO)
    assert mem(ONE, TWO)
    assert not mem(TWO, ONE)


def test_mem_and_iso_match_mostowski_oracle():
    codes = list(enumerate_set_codes(4))
    flat = {a: mostowski(a.edges, a.bot, a.top) for a in codes}
    for a in codes:
        for b in codes[::3]:
            assert mem(a, b) == (flat[a] in flat[b])
            assert (iso(a, b) is not None) == (flat[a] == flat[b])


def test_build_from_predecessors_examples():
    s = build_from_predecessors(TWO, {1}, 9)
    assert s.edges == {(1, 9), (0, 1)}
    assert [x for x in enumerate_set_codes(4) if mem(x, s)] and all(
        equivalent(x, ZERO) for x in enumerate_set_codes(4) if mem(x, s))
    s = build_from_predecessors(TWO, {1, 2}, 9)
    assert collapse(s) == collapse(TWO)
    with pytest.raises(DomainError):
        build_from_predecessors(TWO, {0}, 9)
    with pytest.raises(DomainError):
        build_from_predecessors(TWO, {1}, 3)
    with pytest.raises(DomainError):
        build_from_predecessors(TWO, set(), 9)


def test_build_keeps_cuts():
    for a in enumerate_set_codes(4):
        nodes = sorted(a.field - {a.bot})
        for d in powerset(nodes):
            if not d:
                continue
            s = build_from_predecessors(a, d, 11)
            assert classify(s.rel).is_set
            for delta in d:
                assert cut(s, delta) == cut(a, delta)


def test_code_of_ordinal():
    assert code_of_ordinal(0).edges == {(0, 1)}
    assert TWO.edges == {(0, 1), (1, 2), (1, 3), (2, 3)}
    for n in range(7):
        c = code_of_ordinal(n)
        assert classify(c.rel).is_set
        assert mostowski(c.edges, c.bot, c.top) == vn(n)
    with pytest.raises(ResourceLimitError):
        code_of_ordinal(10, bound=5)


def test_separation_examples():
    assert separation_code(TWO, lambda x: False) == ZERO
    assert equivalent(separation_code(TWO, lambda x: True), TWO)
    got = separation_code(THREE, lambda x: equivalent(x, ONE))
    assert collapse(got) == parse_hf("{{{}}}")


def test_union_pair_examples():
    assert union_code(ONE) == ZERO
    assert collapse(union_code(THREE)) == hf_ordinal(2)
    assert collapse(pair_code(ZERO, ONE)) == hf_ordinal(2)
    assert collapse(pair_code(TWO, TWO)) == parse_hf("{{{},{{}}}}")


def test_choice():
    a = pair_code(pair_code(ZERO, ZERO), pair_code(ONE, ONE))
    assert collapse(a) == parse_hf("{{{}},{{{}}}}")
    c = collapse(choice_code(a))
    assert len(c) == 2
    for member in collapse(a):
        assert len(c.elements & member.elements) == 1
    with pytest.raises(DomainError):
        choice_code(TWO)
    with pytest.raises(DomainError):
        choice_code(encode_hf(parse_hf("{{{}},{{},{{}}}}")))


def test_power_examples():
    assert collapse(power_code(ZERO)) == parse_hf("{{}}")
    assert collapse(power_code(ONE)) == parse_hf("{{},{{}}}")
    p = collapse(power_code(TWO))
    assert len(p) == 4
    assert p == parse_hf("{{},{{}},{{{}}},{{},{{}}}}")
    for a in (ZERO, ONE, TWO, THREE):
        assert classify(power_code(a).rel).is_set


def test_power_bound():
    with pytest.raises(ResourceLimitError):
        power_code(code_of_ordinal(5), bound=4)


def test_replacement_examples():
    assert replacement_code(ZERO, lambda x, y: True) == ZERO
    ident = replacement_code(TWO, lambda x, y: equivalent(x, y))
    assert equivalent(ident, TWO)
    doubled = replacement_code(TWO, lambda x, y: equivalent(y, pair_code(x, x)))
    assert collapse(doubled) == parse_hf("{{{}},{{{}}}}")
    via_fn = image_code(TWO, lambda x: pair_code(x, x))
    assert equivalent(via_fn, doubled)


def test_replacement_rejects_non_functional():
    with pytest.raises(ContractError):
        replacement_code(TWO, lambda x, y: True)


def test_relcode_text_formats():
    a = parse_relcode("{(0,1),(1,2)}")
    assert a == parse_relcode("0->1\n1->2")
    assert format_relcode(a) == "{(0,1),(1,2)}"
    assert parse_relcode(format_edge_lines(a)) == a
    with pytest.raises(DomainError):
        parse_relcode("{(0,1),x}")
    with pytest.raises(DomainError):
        as_set_code(R())
