"""Multi-diagonals as sub-partitions; unions validated on tuple models."""

import itertools

import pytest
from hypothesis import given, strategies as st

from cornercalc.diagonals import (
    FamilyKind,
    SubPartition,
    TransversalFamily,
    classify_families,
    diagonal_of,
    enumerate_families,
    family_codim,
    oracle_diagonal_meet,
    refines,
    transversal_union,
)
from cornercalc.oracles import diagonal_leq_oracle, tuple_diagonal


class TestSubPartition:
    def test_canonical_form(self):
        p = SubPartition(4, ((3, 2), (4, 1)))
        assert p.blocks == ((1, 4), (2, 3))
        assert p.support == {1, 2, 3, 4}

    def test_validation(self):
        with pytest.raises(ValueError):
            SubPartition(3, ((1,),))
        with pytest.raises(ValueError):
            SubPartition(3, ((1, 2), (2, 3)))

    def test_json_round_trip(self):
        p = SubPartition(4, ((1, 2), (3, 4)))
        assert SubPartition.from_json(p.to_json()) == p

    def test_refines(self):
        assert refines(SubPartition(3, ((1, 2, 3),)), SubPartition(3, ((1, 2, 3),)))
        assert refines(SubPartition(3, ((1, 2),)), SubPartition(3, ((1, 2, 3),)))
        assert not refines(SubPartition(3, ((1, 2, 3),)), SubPartition(3, ((1, 2),)))

    def test_refines_matches_tuple_oracle(self):
        """Orientation check against literal tuple solution sets: a coarser
        partition imposes more identifications, hence a smaller diagonal,
        so p1 refines p2 iff diag(p2) is contained in diag(p1)."""
        parts = [
            SubPartition(3, ()),
            SubPartition(3, ((1, 2),)),
            SubPartition(3, ((1, 3),)),
            SubPartition(3, ((2, 3),)),
            SubPartition(3, ((1, 2, 3),)),
        ]
        for p1, p2 in itertools.product(parts, repeat=2):
            assert refines(p1, p2) == diagonal_leq_oracle(p2, p1)

    def test_tuple_oracle_containment_direction(self):
        full = SubPartition(3, ((1, 2, 3),))
        pair = SubPartition(3, ((1, 2),))
        assert tuple_diagonal(full) < tuple_diagonal(pair)
        assert diagonal_leq_oracle(full, pair)
        assert not diagonal_leq_oracle(pair, full)


class TestFamily:
    def test_members_must_be_transversal(self):
        with pytest.raises(ValueError):
            TransversalFamily.of(4, (1, 2), (2, 3))

    def test_codim_and_diagonal(self):
        fam = TransversalFamily.of(5, (1, 2), (3, 4, 5))
        assert family_codim(fam) == 5
        assert diagonal_of(fam) == SubPartition(5, ((1, 2), (3, 4, 5)))

    def test_union_merges_chains(self):
        f1 = TransversalFamily.of(4, (1, 2))
        f2 = TransversalFamily.of(4, (2, 3))
        u = transversal_union(f1, f2)
        assert diagonal_of(u) == SubPartition(4, ((1, 2, 3),))

    def test_union_keeps_transversal_parts(self):
        f1 = TransversalFamily.of(4, (1, 2))
        f2 = TransversalFamily.of(4, (3, 4))
        u = transversal_union(f1, f2)
        assert diagonal_of(u) == SubPartition(4, ((1, 2), (3, 4)))

    def test_classify(self):
        f12 = TransversalFamily.of(4, (1, 2))
        f34 = TransversalFamily.of(4, (3, 4))
        f123 = TransversalFamily.of(4, (1, 2, 3))
        assert classify_families(f12, f34).kind is FamilyKind.TRANSVERSAL
        assert classify_families(f123, f12).kind is FamilyKind.COMPARABLE
        f13 = TransversalFamily.of(4, (1, 3))
        assert classify_families(f12, f13).kind is FamilyKind.NCNT


class TestUnionOracle:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_union_diagonal_is_oracle_meet(self, n):
        fams = enumerate_families(n)
        for f1, f2 in itertools.combinations_with_replacement(fams, 2):
            assert diagonal_of(transversal_union(f1, f2)) == oracle_diagonal_meet(
                f1, f2
            )

    def test_union_commutative_associative_idempotent(self):
        fams = enumerate_families(4)
        for f1, f2 in itertools.combinations(fams, 2):
            assert transversal_union(f1, f2) == transversal_union(f2, f1)
        for f in fams:
            assert transversal_union(f, f) == f
        import random

        rng = random.Random(0)
        for _ in range(200):
            f1, f2, f3 = (rng.choice(fams) for _ in range(3))
            assert transversal_union(transversal_union(f1, f2), f3) == (
                transversal_union(f1, transversal_union(f2, f3))
            )


@given(st.integers(2, 5))
def test_enumerate_families_members_valid(n):
    for fam in enumerate_families(n):
        assert fam.n == n
        assert all(f.codim >= 2 for f in fam.members)
