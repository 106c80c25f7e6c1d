"""Face algebra: relations, intersections, smallest common faces."""

import itertools

import pytest
from hypothesis import given, strategies as st

from cornercalc.errors import MismatchedAmbient
from cornercalc.faces import (
    DEFAULT_LABEL,
    EMPTY,
    Face,
    Relation,
    dotplus,
    enumerate_faces,
    intersect,
    relation_of,
)


def F(ids, n=4, lab=DEFAULT_LABEL):
    return Face.of(n, ids, lab)


def subsets(n):
    base = range(1, n + 1)
    for k in range(n + 1):
        yield from itertools.combinations(base, k)


@st.composite
def faces(draw, n=4, labels=(DEFAULT_LABEL,)):
    ids = draw(st.sets(st.integers(1, n), max_size=n))
    return Face(n, tuple((i, draw(st.sampled_from(labels))) for i in ids))


class TestBasics:
    def test_of_and_properties(self):
        f = F([2, 3])
        assert f.indices == {2, 3}
        assert f.codim == 2
        assert f.mask == 0b0110
        assert f.single_label()

    def test_validation(self):
        with pytest.raises(ValueError):
            Face(3, ((4, "b"),))
        with pytest.raises(ValueError):
            Face(3, ((1, "b"), (1, "c")))
        with pytest.raises(ValueError):
            Face(0, ())

    def test_json_round_trip(self):
        f = Face(3, ((1, "b"), (3, "c")))
        assert Face.from_json(f.to_json()) == f

    def test_key_is_canonical(self):
        assert Face(3, ((1, "b"), (2, "b"))).key() == Face(
            3, ((2, "b"), (1, "b"))
        ).key()


class TestRelation:
    def test_containment_is_superset_of_indices(self):
        # pinning MORE factors gives a smaller face
        assert relation_of(F([1, 2, 3]), F([1, 2])) is Relation.STRICTLY_SMALLER
        assert relation_of(F([1, 2]), F([1, 2, 3])) is Relation.STRICTLY_LARGER

    def test_transversal_vs_ncnt(self):
        assert relation_of(F([1, 2]), F([3, 4])) is Relation.TRANSVERSAL
        assert relation_of(F([1, 2]), F([2, 3])) is Relation.NCNT

    def test_label_conflict_is_disjoint(self):
        a = Face(2, ((1, "b"),))
        b = Face(2, ((1, "c"),))
        assert relation_of(a, b) is Relation.DISJOINT
        assert intersect(a, b) is EMPTY

    def test_ambient_mismatch(self):
        with pytest.raises(MismatchedAmbient):
            relation_of(F([1], n=2), F([1], n=3))

    def test_exhaustive_against_set_theory(self):
        n = 4
        for s1 in subsets(n):
            for s2 in subsets(n):
                got = relation_of(F(s1), F(s2))
                a, b = set(s1), set(s2)
                if a == b:
                    want = Relation.EQUAL
                elif a > b:
                    want = Relation.STRICTLY_SMALLER
                elif a < b:
                    want = Relation.STRICTLY_LARGER
                elif not (a & b):
                    want = Relation.TRANSVERSAL
                else:
                    want = Relation.NCNT
                assert got is want, (s1, s2)

    @given(faces(labels=("b", "c")), faces(labels=("b", "c")))
    def test_swap_symmetry(self, f, g):
        assert relation_of(f, g).swap() is relation_of(g, f)


class TestIntersectDotplus:
    def test_intersect_unions_indices(self):
        assert intersect(F([1, 2]), F([2, 3])) == F([1, 2, 3])

    def test_dotplus_intersects_indices(self):
        assert dotplus(F([1, 2]), F([2, 3])) == F([2])
        assert dotplus(F([1, 2]), F([3, 4])) == F([])

    def test_dotplus_disjoint_raises(self):
        with pytest.raises(ValueError):
            dotplus(Face(2, ((1, "b"),)), Face(2, ((1, "c"),)))

    @given(faces(), faces(), faces())
    def test_intersect_associative(self, f, g, h):
        lhs = intersect(intersect(f, g), h) if intersect(f, g) is not EMPTY else EMPTY
        rhs = intersect(f, intersect(g, h)) if intersect(g, h) is not EMPTY else EMPTY
        assert lhs == rhs

    @given(faces(), faces())
    def test_intersect_below_both(self, f, g):
        m = intersect(f, g)
        if m is not EMPTY:
            assert relation_of(m, f) in (Relation.EQUAL, Relation.STRICTLY_SMALLER)
            assert relation_of(m, g) in (Relation.EQUAL, Relation.STRICTLY_SMALLER)

    @given(faces(), faces())
    def test_dotplus_above_both(self, f, g):
        d = dotplus(f, g)
        assert relation_of(f, d) in (Relation.EQUAL, Relation.STRICTLY_SMALLER)
        assert relation_of(g, d) in (Relation.EQUAL, Relation.STRICTLY_SMALLER)


class TestEnumerate:
    def test_counts_single_label(self):
        assert len(enumerate_faces(3)) == 8
        assert len(enumerate_faces(3, 2)) == 4

    def test_counts_two_labels(self):
        # sum_k C(3,k) * 2^k = 27
        assert len(enumerate_faces(3, 0, ("b", "c"))) == 27

    def test_sorted_canonically(self):
        fs = enumerate_faces(3, 2)
        assert [f.codim for f in fs] == sorted(
            (f.codim for f in fs), reverse=True
        )
