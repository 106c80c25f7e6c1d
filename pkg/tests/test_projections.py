"""Blow-down certificates: generation, verification, tamper-resistance."""

import dataclasses
import itertools

import pytest

from cornercalc.errors import CertificateFailure
from cornercalc.projections import (
    BlowdownCertificate,
    certify_pi_bo,
    certify_pi_scat,
    check_b_normality,
    check_tower_normality,
    move_profile,
    relabel_certificate,
    verify_certificate,
)
from cornercalc.spaces import scat_centers


@pytest.fixture(scope="module")
def scat3():
    return certify_pi_scat(3)


@pytest.fixture(scope="module")
def bo3():
    return certify_pi_bo(3, {3})


class TestGenerate:
    def test_scat_n2_empties_the_space(self):
        cert = certify_pi_scat(2)
        assert len(cert.moves) == 2
        assert cert.target_faces == ()
        assert cert.target_diags == ()

    def test_scat_n3_shape(self, scat3):
        assert len(cert_moves := scat3.moves) == 9
        assert sum(len(m.pair_facts) for m in cert_moves) == 9
        assert len(scat3.target_faces) == 1
        assert len(scat3.target_diags) == 1

    def test_scat_targets_match_smaller_space(self):
        cert = certify_pi_scat(4)
        faces3, diags3 = scat_centers(3)
        assert len(cert.target_faces) == len(faces3)
        assert len(cert.target_diags) == len(diags3)

    def test_bo_moves_are_face_out(self, bo3):
        assert all(m.kind == "face-out" for m in bo3.moves)
        assert len(bo3.moves) == 3

    def test_default_factor_is_last(self):
        assert certify_pi_scat(3).dropped == (3,)


class TestVerify:
    @pytest.mark.parametrize("n", [2, 3])
    def test_scat_verifies(self, n):
        rep = verify_certificate(certify_pi_scat(n))
        assert rep["ok"]

    @pytest.mark.parametrize("n", [2, 3])
    def test_bo_verifies(self, n):
        assert verify_certificate(certify_pi_bo(n, {n}))["ok"]

    def test_json_round_trip(self, scat3):
        again = BlowdownCertificate.from_json(scat3.to_json())
        assert again == scat3
        assert verify_certificate(again)["ok"]

    def test_tampered_move_order_rejected(self, scat3):
        moves = list(scat3.moves)
        moves[0], moves[-1] = moves[-1], moves[0]
        bad = dataclasses.replace(scat3, moves=tuple(moves))
        with pytest.raises(CertificateFailure):
            verify_certificate(bad)

    def test_tampered_fact_rejected(self, scat3):
        moves = list(scat3.moves)
        for i, m in enumerate(moves):
            if m.pair_facts:
                facts = list(m.pair_facts)
                r, o, rel, why = facts[0]
                facts[0] = (r, o, "transversal" if rel != "transversal"
                            else "disjoint", why)
                moves[i] = dataclasses.replace(m, pair_facts=tuple(facts))
                break
        bad = dataclasses.replace(scat3, moves=tuple(moves))
        with pytest.raises(CertificateFailure):
            verify_certificate(bad)

    def test_tampered_target_rejected(self, scat3):
        bad = dataclasses.replace(scat3, target_faces=())
        with pytest.raises(CertificateFailure):
            verify_certificate(bad)

    def test_forged_check_rejected(self, scat3):
        moves = list(scat3.moves)
        checks = tuple((k, v) for k, v in moves[0].checks) + (("extra", True),)
        moves[0] = dataclasses.replace(moves[0], checks=checks)
        bad = dataclasses.replace(scat3, moves=tuple(moves))
        with pytest.raises(CertificateFailure):
            verify_certificate(bad)

    def test_unknown_schema_rejected(self, scat3):
        bad = dataclasses.replace(scat3, schema="cc-cert/999")
        with pytest.raises(CertificateFailure):
            verify_certificate(bad)


class TestNormality:
    @pytest.mark.parametrize("n", [2, 3])
    def test_scat_projection_normal(self, n):
        assert check_b_normality(certify_pi_scat(n))["ok"]

    @pytest.mark.parametrize("n", [2, 3])
    def test_bo_projection_normal(self, n):
        assert check_b_normality(certify_pi_bo(n, {n}))["ok"]

    def test_tower_normal(self):
        certs = [certify_pi_scat(3), certify_pi_scat(2)]
        assert check_tower_normality(certs)["ok"]


class TestEquivariance:
    def test_profiles_invariant_n3(self, scat3):
        base = move_profile(scat3)
        for perm in itertools.permutations((1, 2)):
            sigma = dict(zip((1, 2), perm))
            sigma[3] = 3
            cert = relabel_certificate(scat3, sigma)
            assert move_profile(cert, None) == move_profile(scat3, sigma)
            assert len(cert.moves) == len(scat3.moves)
        assert base == move_profile(scat3)

    def test_relabel_round_trip(self, scat3):
        sigma = {1: 2, 2: 1, 3: 3}
        inv = {v: k for k, v in sigma.items()}
        assert relabel_certificate(relabel_certificate(scat3, sigma), inv) == scat3

    def test_regenerating_after_relabel_gives_same_profile(self):
        # projecting off factor 3 commutes with swapping factors 1 and 2
        sigma = {1: 2, 2: 1, 3: 3}
        direct = certify_pi_scat(3)
        assert move_profile(direct, sigma) == move_profile(
            relabel_certificate(direct, sigma)
        )
