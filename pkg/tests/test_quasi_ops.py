import pytest
from hypothesis import given

from conftest import posets, quasi_lattices
from src.errors import NotAQuasiLattice
from src.poset import dual, iter_bits
from src.quasi_ops import (
    Kind,
    check_identities,
    classify,
    is_associative,
    is_lattice,
    is_modular,
    is_quasi_lattice,
    mlb,
    mub,
    set_join,
    set_meet,
)


class TestBounds:
    def test_nonassoc8_two_minimal_upper_bounds(self, nonassoc8):
        assert nonassoc8.names(mub(nonassoc8, "x", "y")) == ["xy", "x_yz"]

    def test_same_element(self, nonassoc8):
        assert mub(nonassoc8, "yz", "yz") == nonassoc8.mask("yz")
        assert mlb(nonassoc8, "yz", "yz") == nonassoc8.mask("yz")

    def test_hex6(self, hex6):
        assert hex6.names(mub(hex6, "a", "b")) == ["c", "d"]
        assert hex6.names(mlb(hex6, "c", "d")) == ["a", "b"]

    def test_nonassoc8_mlb(self, nonassoc8):
        assert nonassoc8.names(mlb(nonassoc8, "xy", "yz")) == ["y"]

    def test_no_common_bound(self, antichain2):
        assert mub(antichain2, "a", "b") == 0
        assert mlb(antichain2, "a", "b") == 0


class TestSetOperations:
    def test_nonassoc8_right_nested_join(self, nonassoc8):
        x, y, z = (nonassoc8.mask(label) for label in "xyz")
        assert nonassoc8.names(set_join(nonassoc8, x, set_join(nonassoc8, y, z))) == ["x_yz"]

    def test_nonassoc8_left_nested_join(self, nonassoc8):
        x, y, z = (nonassoc8.mask(label) for label in "xyz")
        assert nonassoc8.names(set_join(nonassoc8, set_join(nonassoc8, x, y), z)) == ["x_yz", "xy_z"]

    def test_empty_operand(self, nonassoc8):
        assert set_join(nonassoc8, nonassoc8.full, 0) == 0
        assert set_meet(nonassoc8, 0, nonassoc8.full) == 0

    def test_hex6_absorption_instance(self, hex6):
        c, d = hex6.mask("c"), hex6.mask("d")
        assert set_join(hex6, set_meet(hex6, c, d), c) == c


class TestClassify:
    def test_nonassoc8_quasi_lattice(self, nonassoc8):
        classification = classify(nonassoc8)
        assert classification.kind is Kind.QUASI_LATTICE
        assert classification.witness == ("x", "y")
        assert classification.side == "mub"

    def test_m3_lattice(self, m3):
        classification = classify(m3)
        assert classification.kind is Kind.LATTICE
        assert classification.witness is None

    def test_antichain_not_quasi_lattice(self, antichain2):
        classification = classify(antichain2)
        assert classification.kind is Kind.NOT_QUASI_LATTICE
        assert classification.witness == ("a", "b")

    def test_hex6(self, hex6):
        assert is_quasi_lattice(hex6)
        assert not is_lattice(hex6)


class TestIdentities:
    @pytest.mark.parametrize("name", ["nonassoc8", "hex6", "m3", "n5", "chain3"])
    def test_hold_on_fixtures(self, name, request):
        assert check_identities(request.getfixturevalue(name))

    def test_rejects_non_quasi_lattice(self, antichain2):
        with pytest.raises(NotAQuasiLattice, match="a, b"):
            check_identities(antichain2)


class TestAssociativity:
    def test_nonassoc8_fails(self, nonassoc8):
        verdict = is_associative(nonassoc8)
        assert not verdict
        assert verdict.reason == "join"
        assert verdict.witness == ("x", "y", "z")
        assert verdict.detail == "{x_yz} != {x_yz, xy_z}"

    def test_lattices_hold(self, m3, chain3):
        assert is_associative(m3)
        assert is_associative(chain3)

    def test_rejects_non_quasi_lattice(self, antichain2):
        with pytest.raises(NotAQuasiLattice):
            is_associative(antichain2)


class TestModularity:
    def test_n5_fails(self, n5):
        verdict = is_modular(n5)
        assert verdict.witness == ("a", "b", "c")
        assert verdict.detail == "{a} != {c}"
        assert is_lattice(n5)

    def test_m3_holds(self, m3):
        assert is_modular(m3)

    def test_hex6_fails(self, hex6):
        verdict = is_modular(hex6)
        assert verdict.reason == "modular"
        assert verdict.witness == ("a", "b", "c")
        assert verdict.detail == "{c, d} != {a, b, c}"


# ============================================================================
# PROPRIETES
# ============================================================================

@given(posets())
def test_mub_is_antichain_of_minimal_upper_bounds(poset):
    for a in range(poset.n):
        for b in range(poset.n):
            upper = poset.up[a] & poset.up[b]
            found = poset.mub_table[a][b]
            assert found & ~upper == 0
            assert (found == 0) == (upper == 0)
            for u in iter_bits(found):
                assert poset.down[u] & upper == 1 << u


@given(posets())
def test_duality(poset):
    flipped = dual(poset)
    for a in poset.labels:
        for b in poset.labels:
            assert mub(poset, a, b) == mlb(flipped, a, b)


@given(posets())
def test_comparable_pairs(poset):
    for a in range(poset.n):
        for b in range(poset.n):
            if poset.leq_idx(a, b):
                assert poset.mub_table[a][b] == 1 << b
                assert poset.mlb_table[a][b] == 1 << a


@given(posets())
def test_classification_is_consistent(poset):
    kind = classify(poset).kind
    sizes = {m.bit_count() for table in (poset.mub_table, poset.mlb_table)
             for row in table for m in row}
    if kind is Kind.LATTICE:
        assert sizes == {1}
    elif kind is Kind.QUASI_LATTICE:
        assert 0 not in sizes and max(sizes) >= 2
    else:
        assert 0 in sizes


@given(quasi_lattices())
def test_identities_hold(poset):
    assert check_identities(poset)


@given(quasi_lattices())
def test_associative_iff_lattice(poset):
    assert bool(is_associative(poset)) == is_lattice(poset)


@given(quasi_lattices())
def test_modular_implies_lattice(poset):
    if is_modular(poset):
        assert is_lattice(poset)
