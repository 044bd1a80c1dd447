import pytest
from hypothesis import given, settings

from conftest import total_table
from strategies import hyperops, reactant_containing_ops

from hopalg.core import HyperOp, Universe, check_reproduction
from hopalg.substructures import (
    MAX_ENUMERATION_ORDER,
    SubstructureRecord,
    enumerate_substructures,
    is_closed_substructure,
    restrict,
)


def xor_group_table() -> HyperOp:
    universe = Universe(("e", "a"))
    return HyperOp.from_sets(universe, [[(0,), (1,)], [(1,), (0,)]])


class TestClosure:
    def test_radical_pair_is_closed(self, chain_ab):
        members = chain_ab.universe.mask_from_symbols(["Ao", "A2"])
        assert is_closed_substructure(chain_ab, members) == (True, None)

    def test_single_radical_is_not_closed(self, chain_ab):
        # Ao . {Ao} = {Ao, A2} already escapes {Ao}.
        ao = chain_ab.universe.index("Ao")
        ok, witness = is_closed_substructure(chain_ab, 1 << ao)
        assert not ok and witness == ao

    def test_whole_carrier_is_reproduction(self, chain_ab):
        full = chain_ab.universe.full_mask
        assert is_closed_substructure(chain_ab, full) == (True, None)

    def test_empty_candidate_rejected(self, chain_ab):
        with pytest.raises(ValueError, match="non-empty"):
            is_closed_substructure(chain_ab, 0)

    @given(hyperops(max_size=5))
    @settings(max_examples=40)
    def test_carrier_closure_equals_reproduction(self, op):
        closed, _ = is_closed_substructure(op, op.universe.full_mask)
        assert closed == check_reproduction(op)[0]


class TestEnumeration:
    def test_reference_table_has_exactly_three(self, chain_ab):
        u = chain_ab.universe
        records = enumerate_substructures(chain_ab)
        assert records == [
            SubstructureRecord(u.mask_from_symbols(["Ao", "A2"]), True, False),
            SubstructureRecord(u.mask_from_symbols(["Bo", "B2"]), True, False),
            SubstructureRecord(u.full_mask, False, True),
        ]

    def test_total_table_has_only_the_carrier(self):
        op = total_table(3)
        records = enumerate_substructures(op)
        assert [r.members for r in records] == [op.universe.full_mask]

    def test_group_table_subgroup_lattice(self):
        op = xor_group_table()
        assert [r.members for r in enumerate_substructures(op)] == [0b01, 0b11]

    def test_order_cap(self):
        op = total_table(MAX_ENUMERATION_ORDER + 1)
        with pytest.raises(ValueError, match="capped"):
            enumerate_substructures(op)

    @given(hyperops(max_size=5))
    @settings(max_examples=40)
    def test_records_reverify_and_come_out_ascending(self, op):
        records = enumerate_substructures(op)
        masks = [r.members for r in records]
        assert masks == sorted(masks)
        for r in records:
            assert is_closed_substructure(op, r.members) == (True, None)
            assert r.is_proper == (r.members != op.universe.full_mask)
            assert r.is_trivial == (r.members == op.universe.full_mask)

    @given(reactant_containing_ops(max_size=5))
    @settings(max_examples=30)
    def test_carrier_listed_whenever_reproduction_holds(self, op):
        assert any(r.is_trivial for r in enumerate_substructures(op))


class TestRestrict:
    def test_reference_table_radical_pairs(self, chain_ab):
        for pair in (["Ao", "A2"], ["Bo", "B2"]):
            members = chain_ab.universe.mask_from_symbols(pair)
            sub = restrict(chain_ab, members)
            assert sub.universe.symbols == tuple(pair)
            assert sub.cells == ((0b11, 0b11), (0b11, 0b11))

    def test_identity_restriction(self, chain_ab):
        assert restrict(chain_ab, chain_ab.universe.full_mask) == chain_ab

    def test_rejects_non_closed_subset_naming_the_witness(self, chain_ab):
        ao = chain_ab.universe.index("Ao")
        with pytest.raises(ValueError, match="Ao"):
            restrict(chain_ab, 1 << ao)

    @given(hyperops(max_size=5))
    @settings(max_examples=40)
    def test_restriction_of_closed_subsets_is_well_formed(self, op):
        for record in enumerate_substructures(op):
            sub = restrict(op, record.members)
            # HyperOp construction re-validates non-emptiness and bounds.
            assert sub.order == record.members.bit_count()
