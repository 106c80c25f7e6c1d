"""Stretched products: hypersurface counts, symmetry, lifted-face structure."""

import itertools
import json

import pytest

from cornercalc import engine
from cornercalc.faces import Face
from cornercalc.orders import FaceCollection, nt_closure
from cornercalc.spaces import (
    apply_sigma_diag,
    apply_sigma_face,
    bo_centers,
    build_bo,
    build_ob,
    build_scat,
    describe_lifted_face,
    permute,
    scat_centers,
)


class TestCounts:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_bo_hypersurfaces(self, n):
        st = build_bo(n)
        assert len(engine.hypersurfaces(st)) == n + 2 ** n - n - 1

    def test_scat_counts(self):
        assert len(engine.hypersurfaces(build_scat(2))) == 4
        assert len(engine.hypersurfaces(build_scat(3))) == 14

    def test_scat_center_counts(self):
        for n, total in [(2, 2), (3, 11), (4, 47)]:
            faces, diags = scat_centers(n)
            assert len(faces) + len(diags) == total

    def test_ob_two_labels(self):
        st = build_ob(2, ("b", "c"))
        # four corner faces (one per label pair), each blown up
        assert len(st.history) == 4

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            build_bo(1)
        with pytest.raises(ValueError):
            build_scat(1)


def _canon(state):
    return json.dumps(engine.relation_matrix(state), sort_keys=True)


class TestSymmetry:
    @pytest.mark.parametrize("n", [3])
    def test_bo_permutation_invariance(self, n):
        base = build_bo(n)
        want = _canon(base)
        for perm in itertools.permutations(range(1, n + 1)):
            sigma = dict(zip(range(1, n + 1), perm))
            assert _canon(permute(base, sigma)) == want

    def test_scat_permutation_invariance_n3(self):
        base = build_scat(3)
        want = _canon(base)
        for perm in itertools.permutations((1, 2, 3)):
            sigma = dict(zip((1, 2, 3), perm))
            assert _canon(permute(base, sigma)) == want

    def test_apply_sigma_involutive(self):
        sigma = {1: 2, 2: 1, 3: 3}
        f = Face.of(3, [1, 3])
        assert apply_sigma_face(sigma, apply_sigma_face(sigma, f)) == f
        _, diags = scat_centers(3)
        for d in diags:
            assert apply_sigma_diag(sigma, apply_sigma_diag(sigma, d)) == d


class TestDescriptors:
    def test_member_face_structure(self):
        ctx = FaceCollection(3, tuple(bo_centers(3)))
        d = describe_lifted_face(3, ctx, Face.of(3, [1, 2]))
        kinds = [atom[0] for atom in d.factors]
        assert kinds == ["boundary_power", "fractional_sphere", "product"]
        assert d.factors[0][1] == 2  # codim of the face

    def test_corner_face_structure(self):
        ctx = FaceCollection(3, tuple(bo_centers(3)))
        d = describe_lifted_face(3, ctx, Face.of(3, [1, 2, 3]))
        assert d.factors[0] == ("boundary_power", 3)

    def test_hypersurface_structure(self):
        ctx = FaceCollection(3, tuple(bo_centers(3)))
        d = describe_lifted_face(3, ctx, Face.of(3, [1]))
        # not itself blown up; it meets the blown-up faces through it
        kinds = {atom[0] for atom in d.factors}
        assert "product" in kinds

    def test_unclosed_context_rejected(self):
        from cornercalc.errors import NotClosed

        ctx = FaceCollection(3, (Face.of(3, [1, 2]), Face.of(3, [1, 3])))
        with pytest.raises(NotClosed):
            describe_lifted_face(3, ctx, Face.of(3, [1, 2]))

    def test_json_export(self):
        ctx = nt_closure([Face.of(3, [1, 2])], 3)
        d = describe_lifted_face(3, ctx, Face.of(3, [1, 2]))
        out = d.to_json()
        assert isinstance(out, list) and out
