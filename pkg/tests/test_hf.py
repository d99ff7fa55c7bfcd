import pytest
from hypothesis import given, strategies as st

from ordkernel.codes import code_of_ordinal, enumerate_set_codes, iso
from ordkernel.errors import DomainError
from ordkernel.hf import (
    EMPTY, HFSet, collapse, encode_hf, hf, hf_ordinal, hf_rank, hf_sets_by_size,
    hf_sets_of_rank, hf_size, parse_hf,
)
from ordkernel.relcode import RelCode

from oracles import frozen, mostowski, rank, vn


def test_collapse_examples():
    assert collapse(code_of_ordinal(0)) == EMPTY
    assert collapse(code_of_ordinal(2)) == parse_hf("{{},{{}}}")
    assert collapse(RelCode.of([(3, 5)])) == EMPTY


def test_encode_examples():
    assert encode_hf(EMPTY).edges == {(0, 1)}
    assert encode_hf(hf_ordinal(2)).edges == code_of_ordinal(2).edges
    assert iso(encode_hf(hf_ordinal(2)), code_of_ordinal(2)) is not None


def test_rank_examples():
    assert hf_rank(EMPTY) == 0
    assert hf_rank(hf(EMPTY)) == 1
    assert hf_rank(hf(hf(EMPTY), EMPTY)) == 2
    for h in hf_sets_of_rank(3):
        assert hf_rank(h) == rank(frozen(h))


def test_text_roundtrip_and_canonical_order():
    assert str(hf_ordinal(2)) == "{{},{{}}}"
    assert str(parse_hf("{ {{}} , {} }")) == "{{},{{}}}"
    for h in hf_sets_of_rank(3):
        assert parse_hf(str(h)) == h
    with pytest.raises(DomainError):
        parse_hf("{{}")
    with pytest.raises(DomainError):
        parse_hf("{}}")


def test_equality_is_extensional():
    assert hf(EMPTY, EMPTY) == hf(EMPTY)
    assert hash(parse_hf("{{{}},{}}")) == hash(parse_hf("{{},{{}}}"))


def test_von_neumann():
    for n in range(6):
        assert frozen(hf_ordinal(n)) == vn(n)
        assert hf_rank(hf_ordinal(n)) == n


def test_levels():
    assert len(hf_sets_of_rank(0)) == 1
    assert len(hf_sets_of_rank(2)) == 4
    assert len(hf_sets_of_rank(3)) == 16
    sizes = hf_sets_by_size(4)
    assert all(hf_size(h) <= 4 for h in sizes)
    assert set(h for h in hf_sets_of_rank(3) if hf_size(h) <= 4) <= set(sizes)


def test_roundtrip_codes():
    for a in enumerate_set_codes(4):
        assert iso(encode_hf(collapse(a)), a) is not None
        assert collapse(a) == HFSet(()) or frozen(collapse(a)) == mostowski(a.edges, a.bot, a.top)


hf_strategy = st.recursive(
    st.just(EMPTY),
    lambda inner: st.frozensets(inner, max_size=3).map(HFSet),
    max_leaves=8,
)


@given(hf_strategy)
def test_roundtrip_hf_property(h):
    assert collapse(encode_hf(h)) == h
