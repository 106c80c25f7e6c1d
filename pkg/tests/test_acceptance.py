"""Acceptance suite: the seven headline guarantees of the package.

Each test states its scope and runtime budget; every numerical target was
first computed by an independent oracle (set arithmetic on index sets,
union-find closures on literal tuple models, or hand counting at n = 2, 3)
and then frozen here.
"""

import itertools
import json
import random
import time

import pytest

from cornercalc import engine, oracles
from cornercalc._rel import transition_code
from cornercalc.boundary_diagonals import (
    HCollection,
    generate_all,
    is_fc_closed,
    is_intersection_closed,
)
from cornercalc.diagonals import (
    diagonal_of,
    enumerate_families,
    oracle_diagonal_meet,
    transversal_union,
)
from cornercalc.faces import Face, Relation, intersect, relation_of, relation_from_code
from cornercalc.orders import (
    FaceCollection,
    defect,
    enumerate_intersection_orders,
    is_intersection_order,
    normalize_to_size_order,
    nt_closure,
)
from cornercalc.projections import (
    certify_pi_bo,
    certify_pi_scat,
    check_b_normality,
    check_tower_normality,
    move_profile,
    relabel_certificate,
    verify_certificate,
)
from cornercalc.spaces import bo_centers, build_bo, build_scat, scat_centers


def random_intersection_order(faces, rng):
    """Greedy uniform-ish sample of a valid schedule (validated afterwards)."""
    placed, remaining = [], list(faces)
    while remaining:
        rng.shuffle(remaining)
        for f in remaining:
            if all(
                relation_of(f, g) is not Relation.NCNT
                or intersect(f, g) in placed
                for g in placed
            ):
                placed.append(f)
                remaining.remove(f)
                break
        else:  # pragma: no cover
            raise RuntimeError("sampler dead-ended")
    return tuple(placed)


def replay_faces(n, order):
    st = engine.init(n, list(order))
    for f in order:
        st = engine.blow_up(st, st.find_face(f))
    return st


def canon(state):
    return json.dumps(engine.relation_matrix(state), sort_keys=True)


# --------------------------------------------------------------------------
# 1. transition rule vs independent index-set evaluator


def test_acceptance_1_transition_rule_vs_oracle():
    """Exhaustive over ordered triples of distinct codim >= 2 faces, n <= 6
    (57 faces, ~180k triples at n=6).  Budget: < 1 minute."""
    t0 = time.time()
    checked = 0
    for n in range(2, 7):
        masks = [m for m in range(1, 2 ** n) if bin(m).count("1") >= 2]
        for m1, m2, mc in itertools.permutations(masks, 3):
            got = relation_from_code(transition_code(m1, m2, mc))
            want = oracles.lift_relation_oracle(m1, m2, mc)
            assert got is want, (n, m1, m2, mc)
            checked += 1
    assert checked > 180_000
    assert time.time() - t0 < 60


# --------------------------------------------------------------------------
# 2. order-independence of the final relation matrix


def test_acceptance_2_order_independence():
    """All 12 schedules at n=3; 100 seeded random schedules at n=4; the
    normalization defect trace strictly decreases on every input.
    Budget: < 5 minutes."""
    t0 = time.time()
    faces3 = bo_centers(3)
    orders3 = list(enumerate_intersection_orders(faces3, 3))
    assert len(orders3) == 12  # frozen: hand-enumerated
    mats = {canon(replay_faces(3, o.faces)) for o in orders3}
    assert len(mats) == 1
    for o in orders3:
        _, cert = normalize_to_size_order(o)
        trace = cert.defect_trace
        assert all(a > b for a, b in zip(trace, trace[1:]))
        assert trace[0] == defect(o) and trace[-1] == 0

    faces4 = bo_centers(4)
    rng = random.Random(2024)
    mats4 = set()
    for _ in range(100):
        order = random_intersection_order(faces4, rng)
        c = FaceCollection(4, order)
        assert is_intersection_order(c)  # the sampler is itself validated
        mats4.add(canon(replay_faces(4, order)))
        _, cert = normalize_to_size_order(c)
        trace = cert.defect_trace
        assert all(a > b for a, b in zip(trace, trace[1:]))
    assert len(mats4) == 1
    assert time.time() - t0 < 300


# --------------------------------------------------------------------------
# 3. transversal union against the equivalence-closure oracle


def test_acceptance_3_union_oracle():
    """diagonal_of(union) equals the union-find closure for ALL family
    pairs at n <= 6; algebraic laws at n <= 5.  Budget: < 2 minutes."""
    t0 = time.time()
    for n in range(2, 7):
        fams = enumerate_families(n)
        for f1, f2 in itertools.combinations_with_replacement(fams, 2):
            assert diagonal_of(transversal_union(f1, f2)) == (
                oracle_diagonal_meet(f1, f2)
            )
    for n in range(2, 6):
        fams = enumerate_families(n)
        for f in fams:
            assert transversal_union(f, f) == f
        rng = random.Random(n)
        for _ in range(500):
            f1, f2 = rng.choice(fams), rng.choice(fams)
            assert transversal_union(f1, f2) == transversal_union(f2, f1)
            f3 = rng.choice(fams)
            assert transversal_union(transversal_union(f1, f2), f3) == (
                transversal_union(f1, transversal_union(f2, f3))
            )
    assert time.time() - t0 < 120


# --------------------------------------------------------------------------
# 4. hypersurface counts of the stretched products


def test_acceptance_4_space_counts():
    """bo: n originals plus one front face per center (2^n - n - 1 of them);
    scat(2)=4 and scat(3)=14 were hand-derived; no schedule step is ever
    rejected up to n=5."""
    for n in (2, 3, 4, 5):
        st = build_bo(n)
        assert len(engine.hypersurfaces(st)) == n + 2 ** n - n - 1
    assert len(engine.hypersurfaces(build_scat(2))) == 4
    assert len(engine.hypersurfaces(build_scat(3))) == 14
    for n in (4, 5):
        build_scat(n)  # raises IllegalCenter on any discipline violation


# --------------------------------------------------------------------------
# 5. the two closure characterizations coincide


def test_acceptance_5_closure_equivalence():
    """All 2^7 subsets of the n=3 diagonal collection; 1000 seeded random
    subsets at n=4."""
    ctx3 = FaceCollection(3, tuple(bo_centers(3)))
    items3 = list(generate_all(ctx3).items)
    assert len(items3) == 7  # frozen: hand-enumerated
    for k in range(len(items3) + 1):
        for combo in itertools.combinations(items3, k):
            sub = HCollection(tuple(combo), ctx3)
            assert is_fc_closed(sub) == is_intersection_closed(sub), combo

    ctx4 = FaceCollection(4, tuple(bo_centers(4)))
    items4 = list(generate_all(ctx4).items)
    rng = random.Random(5)
    agreements = 0
    for _ in range(1000):
        k = rng.randrange(len(items4) + 1)
        combo = tuple(rng.sample(items4, k))
        sub = HCollection(combo, ctx4)
        assert is_fc_closed(sub) == is_intersection_closed(sub)
        agreements += 1
    assert agreements == 1000


# --------------------------------------------------------------------------
# 6. blow-down certificates for the stretched projections


def test_acceptance_6_projection_certificates():
    """Certificates generate and verify for n in {2,3,4}; the projections
    are b-normal, including the composite towers; the move profile is
    equivariant under every factor permutation at n=3."""
    for n in (2, 3, 4):
        cert = certify_pi_scat(n)
        assert verify_certificate(cert)["ok"]
        assert check_b_normality(cert)["ok"]
        bcert = certify_pi_bo(n, {n})
        assert verify_certificate(bcert)["ok"]
        assert check_b_normality(bcert)["ok"]
    # composite tower: project off factor 4, then factor 3
    assert check_tower_normality([certify_pi_scat(4), certify_pi_scat(3)])["ok"]
    # equivariance at n=3: relabeling factors 1,2 (3 is projected off)
    base = certify_pi_scat(3)
    for perm in itertools.permutations((1, 2)):
        sigma = dict(zip((1, 2), perm))
        sigma[3] = 3
        assert move_profile(relabel_certificate(base, sigma)) == move_profile(
            base, sigma
        )


# --------------------------------------------------------------------------
# 7. persistence laws along every schedule


def _containment_condition(b1, b2, centers):
    """b1 inside b2 stays nested provided every center containing b1 either
    contains b2 or is transversal to it."""
    for b in centers:
        if relation_of(b1, b) in (Relation.EQUAL, Relation.STRICTLY_SMALLER):
            if relation_of(b2, b) not in (
                Relation.EQUAL,
                Relation.STRICTLY_SMALLER,
                Relation.TRANSVERSAL,
            ):
                return False
    return True


def _check_persistence(n, order, extra=()):
    st = engine.init(n, list(order) + list(extra))
    ids = range(len(st.tracked))
    static = {
        (i, j): st.relation(i, j) for i, j in itertools.combinations(ids, 2)
    }
    prev = dict(static)
    for f in order:
        cid = st.find_face(f)
        st = engine.blow_up(st, cid)
        for (i, j), old in prev.items():
            if i in st.blown or j in st.blown:
                continue
            new = st.relation(i, j)
            # (a) disjoint and transversal are absorbing
            if old is Relation.DISJOINT:
                assert new is Relation.DISJOINT
            if old is Relation.TRANSVERSAL:
                assert new in (Relation.TRANSVERSAL, Relation.DISJOINT)
            # (b) an ncnt face pair separates the moment its meet is blown
            ti, tj = st.by_id(i), st.by_id(j)
            if (
                old is Relation.NCNT
                and ti.kind == "face"
                and tj.kind == "face"
                and intersect(ti.face, tj.face) == f
            ):
                assert new is Relation.DISJOINT
        prev = {
            (i, j): st.relation(i, j)
            for i, j in itertools.combinations(ids, 2)
            if i not in st.blown and j not in st.blown
        }
    # (c) protected containments survive the whole schedule
    for (i, j), old in static.items():
        if i in st.blown or j in st.blown:
            continue
        ti, tj = st.by_id(i), st.by_id(j)
        if ti.kind != "face" or tj.kind != "face":
            continue
        if old is Relation.STRICTLY_SMALLER and _containment_condition(
            ti.face, tj.face, order
        ):
            assert st.relation(i, j) is Relation.STRICTLY_SMALLER, (
                ti.face,
                tj.face,
            )


def test_acceptance_7_persistence_laws():
    """(a)+(b) along all 12 schedules at n=3 and 50 sampled at n=4; (c) on
    randomized center collections with extra tracked bystander faces."""
    faces3 = bo_centers(3)
    for order in enumerate_intersection_orders(faces3, 3):
        _check_persistence(3, order.faces)

    rng = random.Random(7)
    faces4 = bo_centers(4)
    for _ in range(50):
        _check_persistence(4, random_intersection_order(faces4, rng))

    # (c) with bystanders: random closed center collections, the remaining
    # codim >= 2 faces tracked but never blown
    pool = bo_centers(4)
    protected_seen = 0
    for _ in range(60):
        k = rng.randrange(1, 5)
        centers = nt_closure(rng.sample(pool, k), 4)
        extra = [f for f in pool if f not in centers]
        _check_persistence(4, tuple(centers.faces), extra)
        for b1, b2 in itertools.permutations(extra, 2):
            if relation_of(b1, b2) is Relation.STRICTLY_SMALLER and (
                _containment_condition(b1, b2, centers.faces)
            ):
                protected_seen += 1
    assert protected_seen > 0  # the law was exercised, not vacuous
