import random

import pytest
from hypothesis import given, settings

from conftest import random_table, total_table

from strategies import hyperops

from hopalg.core import HyperOp, Universe, classify
from hopalg.morphisms import (
    MAX_AUTOMORPHISM_ORDER,
    Relabeling,
    apply_relabeling,
    automorphisms,
    find_isomorphism,
    invariant_signature,
)
from hopalg.substructures import enumerate_substructures

KIND_SWAP = Relabeling((1, 0, 3, 2, 4))  # Ao<->Bo, A2<->B2, AB fixed


def shuffled_copy(op: HyperOp, rng: random.Random) -> tuple[HyperOp, Relabeling]:
    perm = list(range(op.order))
    rng.shuffle(perm)
    r = Relabeling(tuple(perm))
    target = Universe(tuple(f"t{i}" for i in range(op.order)))
    return apply_relabeling(op, r, target), r


class TestRelabeling:
    def test_rejects_non_permutations(self):
        with pytest.raises(ValueError):
            Relabeling((0, 0, 1))

    def test_inverse_and_compose(self):
        r = Relabeling((2, 0, 1))
        assert r.compose(r.inverse()) == Relabeling.identity(3)
        assert r.inverse().compose(r) == Relabeling.identity(3)

    def test_apply_mask(self):
        r = Relabeling((2, 0, 1))
        assert r.apply_mask(0b011) == 0b101


class TestApplyRelabeling:
    def test_kind_preserving_relabeling_gives_the_hi_table(self, chain_ab, chain_hi):
        relabeled = apply_relabeling(
            chain_ab, Relabeling.identity(5), chain_hi.universe
        )
        assert relabeled == chain_hi

    def test_identity_is_a_fixed_point(self, chain_ab):
        assert apply_relabeling(chain_ab, Relabeling.identity(5)) == chain_ab

    def test_kind_swap_is_an_automorphism_of_the_reference_table(self, chain_ab):
        assert apply_relabeling(chain_ab, KIND_SWAP) == chain_ab

    @given(hyperops(max_size=5))
    @settings(max_examples=40)
    def test_relabel_then_invert_restores_the_table(self, op):
        rng = random.Random(op.cells[0][0])
        perm = list(range(op.order))
        rng.shuffle(perm)
        r = Relabeling(tuple(perm))
        assert apply_relabeling(apply_relabeling(op, r), r.inverse()) == op

    def test_size_mismatch_rejected(self, chain_ab):
        with pytest.raises(ValueError):
            apply_relabeling(chain_ab, Relabeling.identity(4))


class TestInvariantSignature:
    def test_reference_table_cell_sizes(self, chain_ab):
        sig = invariant_signature(chain_ab)
        # Tally of the 25 cell sizes: eight 2s, two 3s, twelve 4s, three 5s.
        assert sig.cell_size_multiset == (2,) * 8 + (3,) * 2 + (4,) * 12 + (5,) * 3

    def test_total_table(self):
        sig = invariant_signature(total_table(4))
        assert sig.cell_size_multiset == (4,) * 16

    def test_distinguishes_different_multisets(self):
        u = Universe(("e", "a"))
        a = HyperOp(u, ((0b01, 0b01), (0b01, 0b01)))
        b = HyperOp(u, ((0b11, 0b01), (0b01, 0b01)))
        assert invariant_signature(a) != invariant_signature(b)

    @given(hyperops(max_size=5))
    @settings(max_examples=40)
    def test_signature_is_relabeling_invariant(self, op):
        shuffled, _ = shuffled_copy(op, random.Random(1))
        assert invariant_signature(op) == invariant_signature(shuffled)


class TestFindIsomorphism:
    def test_reference_tables_are_isomorphic_kind_preserving(self, chain_ab, chain_hi):
        r = find_isomorphism(chain_ab, chain_hi)
        assert r == Relabeling.identity(5)
        pairs = [
            (chain_ab.universe.symbols[i], chain_hi.universe.symbols[r(i)])
            for i in range(5)
        ]
        assert pairs == [
            ("Ao", "Ho"), ("Bo", "Io"), ("A2", "H2"), ("B2", "I2"), ("AB", "HI"),
        ]

    def test_self_isomorphism_is_identity(self, chain_ab):
        assert find_isomorphism(chain_ab, chain_ab) == Relabeling.identity(5)

    def test_reference_vs_total_table(self, chain_ab):
        assert find_isomorphism(chain_ab, total_table(5)) is None

    def test_size_mismatch_gives_none(self, chain_ab):
        assert find_isomorphism(chain_ab, total_table(4)) is None

    @given(hyperops(min_size=2, max_size=5))
    @settings(max_examples=40)
    def test_found_mappings_reverify_cell_for_cell(self, op):
        shuffled, _ = shuffled_copy(op, random.Random(7))
        r = find_isomorphism(op, shuffled)
        assert r is not None
        assert apply_relabeling(op, r, shuffled.universe) == shuffled

    @given(hyperops(min_size=2, max_size=4))
    @settings(max_examples=40)
    def test_signature_mismatch_means_no_isomorphism(self, op):
        other = total_table(op.order)
        if invariant_signature(op) != invariant_signature(other):
            assert find_isomorphism(op, other) is None

    def test_non_isomorphic_same_signature_pair(self):
        # Same cell-size multiset, different structure.
        u = Universe(("e", "a"))
        a = HyperOp(u, ((0b11, 0b01), (0b01, 0b01)))
        b = HyperOp(u, ((0b01, 0b11), (0b01, 0b01)))
        r = find_isomorphism(a, b)
        if r is not None:
            assert apply_relabeling(a, r) == b

    @given(hyperops(min_size=2, max_size=4))
    @settings(max_examples=30)
    def test_isomorphic_tables_share_label_and_substructure_count(self, op):
        shuffled, _ = shuffled_copy(op, random.Random(21))
        assert classify(op).class_label == classify(shuffled).class_label
        assert len(enumerate_substructures(op)) == len(
            enumerate_substructures(shuffled)
        )


class TestAutomorphisms:
    def test_total_table_has_the_full_symmetric_group(self):
        autos = automorphisms(total_table(3))
        assert [a.mapping for a in autos] == [
            (0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0),
        ]

    def test_order_one(self):
        assert automorphisms(total_table(1)) == [Relabeling.identity(1)]

    def test_reference_table_symmetry_is_exactly_the_kind_swap(self, chain_ab):
        # Recorded outcome of the exhaustive 120-permutation scan.
        assert automorphisms(chain_ab) == [Relabeling.identity(5), KIND_SWAP]

    def test_order_cap(self):
        with pytest.raises(ValueError, match="capped"):
            automorphisms(total_table(MAX_AUTOMORPHISM_ORDER + 1))

    @given(hyperops(max_size=4))
    @settings(max_examples=30)
    def test_output_forms_a_group(self, op):
        autos = automorphisms(op)
        assert Relabeling.identity(op.order) in autos
        for a in autos:
            assert a.inverse() in autos
            for b in autos:
                assert a.compose(b) in autos
