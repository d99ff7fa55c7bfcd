import pytest

from ordkernel.axioms import AXIOM_IDS, FAILS, HOLDS, INAPPLICABLE, check_axiom
from ordkernel.errors import ContractError, ValidationError
from ordkernel.formula import FiniteStructure, so_structure_of, so_truncation


@pytest.fixture(scope="module")
def sv4():
    return so_structure_of(4)


@pytest.mark.parametrize("axiom", ["SOR", "WO", "EXT", "INI", "BOU", "GPF", "SUR", "SEP", "POW", "REP"])
def test_truncation_satisfies_bounded_axioms(sv4, axiom):
    rep = check_axiom(axiom, sv4)
    assert rep.verdict == HOLDS, rep.lines()
    assert rep.failed == 0 and rep.held > 0


def test_infinity_fails_with_label(sv4):
    for k in range(5):
        rep = check_axiom("INF", so_structure_of(k))
        assert rep.verdict == FAILS
        assert "finite" in rep.note


def test_spec_examples():
    assert check_axiom("INI", so_truncation(8)).verdict == HOLDS
    assert check_axiom("WO", so_truncation(6)).verdict == HOLDS


def test_boundary_instances_are_inapplicable(sv4):
    gpf = check_axiom("GPF", sv4)
    # pairs with value past ordinal 4 are clipped, the rest hold
    assert gpf.held == 5 * 5 and gpf.inapplicable == 5 * 20
    pow_ = check_axiom("POW", sv4)
    assert pow_.inapplicable > 0


@pytest.mark.slow
def test_pairing_axiom_on_long_truncation():
    rep = check_axiom("GPF", so_truncation(30, 0), bound=30)
    assert rep.verdict == HOLDS and rep.held == 30 * 30


def test_detects_broken_structures():
    M = so_structure_of(3).to_json()
    # a non-transitive order
    M2 = dict(M, relations=dict(M["relations"], **{"<": [[0, 1], [1, 2], [0, 3], [1, 3], [2, 3]]}))
    assert check_axiom("WO", FiniteStructure.from_json(M2)).verdict == FAILS
    # two sets with the same members
    M3 = dict(M, carrier=M["carrier"] + ["dup"],
              relations=dict(M["relations"], SOrd=M["relations"]["SOrd"] + [["dup"]]))
    rep = check_axiom("EXT", FiniteStructure.from_json(M3))
    assert rep.verdict == FAILS and rep.failures
    # G not onto
    M4 = dict(M, functions={"G": [[a, b, 0] for a in M["carrier"] for b in M["carrier"]]})
    assert check_axiom("SUR", FiniteStructure.from_json(M4)).verdict == FAILS


def test_schema_instances(sv4):
    assert check_axiom("SEP", sv4, formulas=["x < p & ~x in q"]).verdict == HOLDS
    # not functional: the premise is false, so the instance holds vacuously or is clipped
    rep = check_axiom("REP", sv4, formulas=["x < z"])
    assert rep.failed == 0
    with pytest.raises(ContractError):
        check_axiom("SEP", sv4, formulas=["x < r"])


def test_bound_filters_parameters(sv4):
    small = check_axiom("EXT", sv4, bound=2)
    assert small.held == 4 * 4


def test_only_inapplicable_instances():
    rep = check_axiom("POW", so_truncation(2, 2), formulas=None, bound=2)
    assert rep.verdict in (HOLDS, INAPPLICABLE)
    rep = check_axiom("GPF", so_truncation(1, 0), bound=1)
    assert rep.verdict == HOLDS


def test_errors():
    with pytest.raises(ContractError):
        check_axiom("XYZ", so_structure_of(1))
    with pytest.raises(ValidationError):
        check_axiom("EXT", FiniteStructure([0], {"Ord": [[0]]}))
    assert set(AXIOM_IDS) == {"SOR", "WO", "INF", "EXT", "INI", "BOU", "GPF", "SUR", "SEP", "REP", "POW"}
