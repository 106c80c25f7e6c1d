"""Blow-down certificates for the stretched projections.

A projection off one factor (or several) is certified by a sequence of
blow-down moves, each removing centers from the tail of a valid schedule
with named hypothesis checks and per-pair relation facts read off the
engine's relation matrix.  An independent verifier replays the engine and
recomputes every check; b-normality of the resulting map is checked by
pushing each boundary hypersurface through the projection.

Move kinds:
  diagonal-out       remove one maximal boundary diagonal
  face-out           remove one boundary face past the surviving diagonals
  hull-diagonals-out remove every diagonal whose hull face was just removed
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import engine
from .boundary_diagonals import BoundaryDiagonal, chain_order_key
from .diagonals import TransversalFamily, transversal_union
from .errors import CertificateFailure, NormalityViolation
from .faces import Face, Relation, relation_of
from .orders import FaceCollection, is_closed_nt, is_intersection_order
from .spaces import apply_sigma_diag, apply_sigma_face, bo_centers, scat_centers

__all__ = [
    "Move",
    "BlowdownCertificate",
    "split_vertical",
    "certify_pi_bo",
    "certify_pi_scat",
    "verify_certificate",
    "check_b_normality",
    "check_tower_normality",
    "relabel_certificate",
    "move_profile",
]

SCHEMA = "cc-cert/1"


def face_key(f: Face) -> str:
    return "face:" + f.key()


def diag_key(h: BoundaryDiagonal) -> str:
    return "diag:" + h.key()


# --------------------------------------------------------------------------
# certificate data


@dataclass(frozen=True)
class Move:
    kind: str  # "diagonal-out" | "face-out" | "hull-diagonals-out"
    removed: tuple[str, ...]
    checks: tuple[tuple[str, bool], ...]
    pair_facts: tuple[tuple[str, str, str, str], ...]
    # each pair fact: (removed key, other key, relation name, justification)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "removed": list(self.removed),
            "checks": {k: v for k, v in self.checks},
            "pair_facts": [
                {"removed": a, "other": b, "relation": r, "why": w}
                for a, b, r, w in self.pair_facts
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Move":
        return cls(
            kind=str(data["kind"]),
            removed=tuple(data["removed"]),
            checks=tuple(sorted((k, bool(v)) for k, v in data["checks"].items())),
            pair_facts=tuple(
                (p["removed"], p["other"], p["relation"], p["why"])
                for p in data["pair_facts"]
            ),
        )


@dataclass(frozen=True)
class BlowdownCertificate:
    kind: str  # "bo" | "scat"
    n: int
    dropped: tuple[int, ...]
    source_faces: tuple[Face, ...]
    source_diags: tuple[BoundaryDiagonal, ...]
    moves: tuple[Move, ...]
    target_faces: tuple[Face, ...]
    target_diags: tuple[BoundaryDiagonal, ...]
    schema: str = SCHEMA

    def to_json(self) -> dict:
        return {
            "schema": self.schema,
            "kind": self.kind,
            "n": self.n,
            "dropped": list(self.dropped),
            "source_faces": [f.to_json() for f in self.source_faces],
            "source_diags": [h.to_json() for h in self.source_diags],
            "moves": [m.to_json() for m in self.moves],
            "target_faces": [f.to_json() for f in self.target_faces],
            "target_diags": [h.to_json() for h in self.target_diags],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BlowdownCertificate":
        if data.get("schema") != SCHEMA:
            raise CertificateFailure(f"unknown schema {data.get('schema')!r}")
        return cls(
            kind=str(data["kind"]),
            n=int(data["n"]),
            dropped=tuple(int(i) for i in data["dropped"]),
            source_faces=tuple(Face.from_json(f) for f in data["source_faces"]),
            source_diags=tuple(
                BoundaryDiagonal.from_json(h) for h in data["source_diags"]
            ),
            moves=tuple(Move.from_json(m) for m in data["moves"]),
            target_faces=tuple(Face.from_json(f) for f in data["target_faces"]),
            target_diags=tuple(
                BoundaryDiagonal.from_json(h) for h in data["target_diags"]
            ),
        )


# --------------------------------------------------------------------------
# verticality


def split_vertical(
    faces: Iterable[Face], dropped: Iterable[int]
) -> tuple[list[Face], list[Face]]:
    """(vertical, non-vertical): vertical faces avoid every dropped factor."""
    dropped = set(dropped)
    vertical, rest = [], []
    for f in faces:
        (rest if set(f.indices) & dropped else vertical).append(f)
    return vertical, rest


def _diag_class(h: BoundaryDiagonal, dropped: set[int]) -> str:
    """vv: family and hull vertical; nv: family vertical only; nn: neither."""
    fam_vertical = all(
        not (set(m.indices) & dropped) for m in h.family.members
    )
    if not fam_vertical:
        return "nn"
    return "vv" if not (set(h.hull.indices) & dropped) else "nv"


# --------------------------------------------------------------------------
# relation rows from one full replay


def _replay_rows(
    n: int, faces: Sequence[Face], diags: Sequence[BoundaryDiagonal]
) -> dict:
    """key -> {key -> Relation}: the relation of each center to every other
    tracked face/diagonal just before that center was blown up."""
    state = engine.init(n, faces, diags)
    for f in faces:
        state = engine.blow_up(state, state.find_face(f))
    for h in diags:
        state = engine.blow_up(state, state.find_diag(h))
    byid = state.tracked_map()

    def key_of(t):
        if t.kind == "face":
            return face_key(t.face)
        if t.kind == "diag":
            return diag_key(t.diag)
        return None

    rows: dict = {}
    for cid, row in state.step_rows:
        ck = key_of(byid[cid])
        rows[ck] = {
            key_of(byid[i]): r
            for i, r in row.items()
            if byid[i].kind in ("face", "diag")
        }
    return rows


# --------------------------------------------------------------------------
# move recomputation (shared by generator and verifier)


def _fact(rel: Optional[Relation], why: str) -> tuple[str, str]:
    if rel is None:
        raise CertificateFailure("missing relation fact")
    return rel.value, why


def _justify_nested(
    h: BoundaryDiagonal, g: BoundaryDiagonal, present: set
) -> str:
    """Why a removed diagonal may stay contained in a kept later one: same
    hull, or strictly deeper hull with the trace of the kept family on the
    removed hull also scheduled (and hence blown earlier)."""
    if g.hull == h.hull:
        return "nested-same-hull"
    if (
        relation_of(h.hull, g.hull) is Relation.STRICTLY_SMALLER
        and BoundaryDiagonal(h.hull, g.family) in present
    ):
        return "nested-trace-present"
    raise CertificateFailure(
        f"cannot justify removing {h} under containing {g}"
    )



def _collection_closed(
    items: Sequence[BoundaryDiagonal], C: Sequence[Face], n: int
) -> bool:
    """Closure of a diagonal collection relative to the retained faces:
    same-hull families closed under the family union, and for every item
    each strictly deeper retained face carries the same family."""
    present = set(items)
    by_hull: dict = {}
    for h in items:
        by_hull.setdefault(h.hull, []).append(h)
    for hull, hs in by_hull.items():
        for h1, h2 in itertools.combinations(hs, 2):
            u = transversal_union(h1.family, h2.family)
            if BoundaryDiagonal(hull, u) not in present:
                return False
    for h in items:
        for a in C:
            if relation_of(a, h.hull) is Relation.STRICTLY_SMALLER:
                if BoundaryDiagonal(a, h.family) not in present:
                    return False
    return True


def _diag_out_move(
    h: BoundaryDiagonal,
    C: Sequence[Face],
    G: Sequence[BoundaryDiagonal],
    rows: dict,
    n: int,
) -> Move:
    """Remove one diagonal from the tail of the schedule.

    Requires: the current diagonal collection is closed, every hull is a
    tracked face, no retained diagonal has the same family over a strictly
    bigger hull, and the retained diagonals over the same hull are closed
    under the family union.  Every later retained diagonal must be
    separated, transversal, or contain the removed one with its trace on
    the removed hull scheduled earlier.
    """
    if h not in G:
        raise CertificateFailure(f"{h} not retained")
    ctx = FaceCollection(n, tuple(C))
    same_hull = [g for g in G if g != h and g.hull == h.hull]
    union_closed = True
    for g1, g2 in itertools.combinations(same_hull + [h], 2):
        u = transversal_union(g1.family, g2.family)
        cand = BoundaryDiagonal(h.hull, u)
        if cand != h and cand not in same_hull:
            union_closed = False
    checks = {
        "collection-closed": _collection_closed(G, C, n),
        "hulls-tracked": all(g.hull in C for g in G),
        "no-bigger-hull-same-family": not any(
            g.family == h.family
            and relation_of(g.hull, h.hull) is Relation.STRICTLY_LARGER
            for g in G
            if g != h
        ),
        "same-hull-union-closed": union_closed,
    }
    pos = {g: i for i, g in enumerate(G)}
    facts = []
    present = set(G)
    for g in G:
        if g == h or pos[g] < pos[h]:
            continue
        rel = rows[diag_key(h)].get(diag_key(g))
        if rel is Relation.DISJOINT:
            r, w = _fact(rel, "separated")
        elif rel is Relation.TRANSVERSAL:
            r, w = _fact(rel, "transversal")
        elif rel is Relation.STRICTLY_SMALLER:
            r, w = _fact(rel, _justify_nested(h, g, present))
        else:
            raise CertificateFailure(
                f"unjustifiable relation {rel} between removed {h} and {g}"
            )
        facts.append((diag_key(h), diag_key(g), r, w))
    return Move(
        "diagonal-out",
        (diag_key(h),),
        tuple(sorted(checks.items())),
        tuple(facts),
    )


def _face_rows(
    n: int, C: Sequence[Face], G: Sequence[BoundaryDiagonal], b: Face
) -> dict:
    """Relation of the (tracked, never blown) face b to each diagonal of G
    just before that diagonal is blown, in the schedule that blows every
    other face first and then G in its given order."""
    state = engine.init(n, tuple(C), tuple(G))
    bid = state.find_face(b)
    for f in C:
        if f != b:
            state = engine.blow_up(state, state.find_face(f))
    out = {}
    for g in G:
        out[diag_key(g)] = state.relation(bid, state.find_diag(g))
        state = engine.blow_up(state, state.find_diag(g))
    return out


def _face_out_move(
    b: Face,
    C: Sequence[Face],
    G: Sequence[BoundaryDiagonal],
    n: int,
) -> Move:
    """Remove one face past the surviving diagonals.

    Requires: the face collection stays closed with and without the face
    (so the face can be scheduled last), no retained family uses it, and
    in the schedule with the face left unblown every retained diagonal is
    separated from it, transversal to it, or contained in it (hull equal
    to the face) at the moment that diagonal is blown.
    """
    if b not in C:
        raise CertificateFailure(f"{b} not retained")
    rest = [f for f in C if f != b]
    checks = {
        "faces-closed": is_closed_nt(FaceCollection(n, tuple(C))),
        "faces-closed-without": is_closed_nt(FaceCollection(n, tuple(rest))),
        "face-can-come-last": is_intersection_order(
            FaceCollection(n, tuple(rest) + (b,))
        ),
        "collection-closed": _collection_closed(G, C, n),
        "families-avoid-face": all(
            b not in g.family.members for g in G
        ),
        "hulls-still-tracked": all(
            g.hull in rest or g.hull == b for g in G
        ),
    }
    rows = _face_rows(n, C, G, b)
    facts = []
    for g in G:
        rel = rows[diag_key(g)]
        if rel is Relation.DISJOINT:
            r, w = _fact(rel, "separated")
        elif rel is Relation.TRANSVERSAL:
            r, w = _fact(rel, "transversal")
        elif rel is Relation.STRICTLY_LARGER and g.hull == b:
            r, w = _fact(rel, "contained-in-face")
        else:
            raise CertificateFailure(
                f"unjustifiable relation {rel} between removed {b} and {g}"
            )
        facts.append((face_key(b), diag_key(g), r, w))
    return Move(
        "face-out", (face_key(b),), tuple(sorted(checks.items())), tuple(facts)
    )


def _hull_diags_out_move(
    b: Face,
    removed: Sequence[BoundaryDiagonal],
    C: Sequence[Face],
    G: Sequence[BoundaryDiagonal],
    n: int,
) -> Move:
    """Remove every retained diagonal whose hull face is no longer tracked.

    Requires: the hull face was already removed, each family stays inside
    the retained faces, and what remains is closed.  In the schedule over
    the retained faces, later retained diagonals must be separated,
    transversal, or same-family over a strictly bigger hull at the moment
    the removed diagonal is blown.
    """
    removed = sorted(removed, key=chain_order_key, reverse=True)
    keep = [g for g in G if g not in set(removed)]
    checks = {
        "face-already-removed": b not in C,
        "families-still-tracked": all(
            all(m in C for m in g.family.members) for g in removed
        ),
        "remaining-closed": _collection_closed(keep, C, n),
        "hulls-match": all(g.hull == b for g in removed),
    }
    rows = _replay_rows(n, tuple(C), tuple(G))
    pos = {g: i for i, g in enumerate(G)}
    present = set(G)
    facts = []
    for h in removed:
        for g in keep:
            if pos[g] < pos[h]:
                continue
            rel = rows[diag_key(h)].get(diag_key(g))
            if rel is Relation.DISJOINT:
                r, w = _fact(rel, "separated")
            elif rel is Relation.TRANSVERSAL:
                r, w = _fact(rel, "transversal")
            elif rel is Relation.STRICTLY_SMALLER:
                r, w = _fact(rel, _justify_nested(h, g, present))
            else:
                raise CertificateFailure(
                    f"unjustifiable relation {rel} between removed {h} and {g}"
                )
            facts.append((diag_key(h), diag_key(g), r, w))
    return Move(
        "hull-diagonals-out",
        tuple(diag_key(h) for h in removed),
        tuple(sorted(checks.items())),
        tuple(facts),
    )


# --------------------------------------------------------------------------
# certificate generation


def certify_pi_bo(n: int, dropped: Iterable[int]) -> BlowdownCertificate:
    """Certify the projection of the fully blown-up boundary product off the
    given factors: remove every non-vertical face, lowest codimension
    first."""
    dropped = frozenset(dropped)
    if not dropped <= set(range(1, n + 1)):
        raise ValueError("dropped factors out of range")
    faces = bo_centers(n)
    C = list(faces)
    moves = []
    for b in reversed(faces):
        if not (set(b.indices) & dropped):
            continue
        moves.append(_face_out_move(b, C, [], n))
        C.remove(b)
    vertical, _ = split_vertical(faces, dropped)
    if C != vertical:
        raise CertificateFailure("leftover non-vertical faces")
    return BlowdownCertificate(
        kind="bo",
        n=n,
        dropped=tuple(sorted(dropped)),
        source_faces=tuple(faces),
        source_diags=(),
        moves=tuple(moves),
        target_faces=tuple(C),
        target_diags=(),
    )


def certify_pi_scat(n: int, factor: Optional[int] = None) -> BlowdownCertificate:
    """Certify the projection of the scattering-stretched product off one
    factor: drop the diagonals with non-vertical families from the tail,
    then each non-vertical face followed by its orphaned hull diagonals."""
    factor = n if factor is None else factor
    if not 1 <= factor <= n:
        raise ValueError("factor out of range")
    dropped = {factor}
    faces, diags = scat_centers(n)
    rows = _replay_rows(n, faces, diags)
    C = list(faces)
    G = list(diags)
    moves = []
    for h in reversed(diags):
        if _diag_class(h, dropped) != "nn":
            continue
        moves.append(_diag_out_move(h, C, G, rows, n))
        G.remove(h)
    for b in reversed(faces):
        if not (set(b.indices) & dropped):
            continue
        moves.append(_face_out_move(b, C, G, n))
        C.remove(b)
        orphans = [g for g in G if g.hull == b]
        if orphans:
            moves.append(_hull_diags_out_move(b, orphans, C, G, n))
            G = [g for g in G if g.hull != b]
    expect_faces, _ = split_vertical(faces, dropped)
    expect_diags = [h for h in diags if _diag_class(h, dropped) == "vv"]
    if C != expect_faces or G != expect_diags:
        raise CertificateFailure("leftover non-vertical centers")
    return BlowdownCertificate(
        kind="scat",
        n=n,
        dropped=(factor,),
        source_faces=tuple(faces),
        source_diags=tuple(diags),
        moves=tuple(moves),
        target_faces=tuple(C),
        target_diags=tuple(G),
    )


# --------------------------------------------------------------------------
# independent verification


def verify_certificate(cert: BlowdownCertificate) -> dict:
    """Replay the schedule, recompute every check and pair fact of every
    move, and confirm the recorded certificate matches and succeeds."""
    if cert.schema != SCHEMA:
        raise CertificateFailure(f"unknown schema {cert.schema!r}")
    if cert.kind == "bo":
        faces: list[Face] = bo_centers(cert.n)
        diags: list[BoundaryDiagonal] = []
    elif cert.kind == "scat":
        faces, diags = scat_centers(cert.n)
    else:
        raise CertificateFailure(f"unknown kind {cert.kind!r}")
    if tuple(faces) != cert.source_faces or tuple(diags) != cert.source_diags:
        raise CertificateFailure("source centers do not match the claimed space")
    rows = _replay_rows(cert.n, faces, diags)
    by_key: dict = {face_key(f): f for f in faces}
    by_key.update({diag_key(h): h for h in diags})
    C = list(faces)
    G = list(diags)
    for idx, move in enumerate(cert.moves):
        try:
            objs = [by_key[k] for k in move.removed]
        except KeyError as exc:
            raise CertificateFailure(f"move {idx}: unknown center {exc}")
        if move.kind == "diagonal-out":
            (h,) = objs
            expected = _diag_out_move(h, C, G, rows, cert.n)
            G.remove(h)
        elif move.kind == "face-out":
            (b,) = objs
            expected = _face_out_move(b, C, G, cert.n)
            C.remove(b)
        elif move.kind == "hull-diagonals-out":
            hulls = {h.hull for h in objs}
            if len(hulls) != 1:
                raise CertificateFailure(f"move {idx}: mixed hulls")
            (b,) = hulls
            expected = _hull_diags_out_move(b, objs, C, G, cert.n)
            G = [g for g in G if g not in set(objs)]
        else:
            raise CertificateFailure(f"move {idx}: unknown kind {move.kind!r}")
        if expected != move:
            raise CertificateFailure(f"move {idx}: recorded move does not verify")
        if not all(v for _, v in move.checks):
            failed = [k for k, v in move.checks if not v]
            raise CertificateFailure(f"move {idx}: failed checks {failed}")
    if tuple(C) != cert.target_faces or tuple(G) != cert.target_diags:
        raise CertificateFailure("surviving centers do not match the target")
    return {
        "ok": True,
        "kind": cert.kind,
        "n": cert.n,
        "dropped": list(cert.dropped),
        "moves": len(cert.moves),
        "pair_facts": sum(len(m.pair_facts) for m in cert.moves),
        "target_faces": len(cert.target_faces),
        "target_diags": len(cert.target_diags),
    }


# --------------------------------------------------------------------------
# b-normality of the projection


def _project_face(face: Face, dropped: frozenset[int]) -> Face:
    kept = sorted(set(range(1, face.n + 1)) - dropped)
    renum = {i: k + 1 for k, i in enumerate(kept)}
    m = len(kept)
    return Face(
        m,
        tuple(
            (renum[i], lab) for i, lab in face.assignment if i not in dropped
        ),
    )


def _project_descriptor(desc: tuple, n: int, dropped: frozenset[int]) -> tuple:
    """Push one boundary-hypersurface descriptor through the projection."""
    kept = sorted(set(range(1, n + 1)) - dropped)
    renum = {i: k + 1 for k, i in enumerate(kept)}
    kind = desc[0]
    if kind == "whole":
        return desc
    if kind == "original":
        _, j, lab = desc
        if j in dropped:
            return ("whole",)
        return ("original", renum[j], lab)
    if kind == "front-face":
        b = _project_face(desc[1], dropped)
        if b.codim == 0:
            return ("whole",)
        if b.codim == 1:
            ((j, lab),) = b.assignment
            return ("original", j, lab)
        return ("front-face", b)
    if kind == "front-diagonal":
        h = desc[1]
        hull = _project_face(h.hull, dropped)
        members = [
            _project_face(f, dropped)
            for f in h.family.members
        ]
        members = [f for f in members if f.codim >= 2]
        if not members:
            return _project_descriptor(("front-face", h.hull), n, dropped)
        fam = TransversalFamily(hull.n, tuple(members))
        return ("front-diagonal", BoundaryDiagonal(hull, fam))
    raise NormalityViolation(f"unknown descriptor {desc!r}")


def _descriptor_json(desc: tuple) -> dict:
    kind = desc[0]
    if kind == "whole":
        return {"kind": "whole"}
    if kind == "original":
        return {"kind": "original", "index": desc[1], "label": desc[2]}
    if kind == "front-face":
        return {"kind": "front-face", "face": desc[1].to_json()}
    return {"kind": "front-diagonal", "diag": desc[1].to_json()}


def _source_hypersurfaces(cert: BlowdownCertificate) -> list[tuple]:
    out: list[tuple] = [
        ("original", j, "b") for j in range(1, cert.n + 1)
    ]
    out.extend(("front-face", f) for f in cert.source_faces)
    out.extend(("front-diagonal", h) for h in cert.source_diags)
    return out


def _target_sets(cert: "BlowdownCertificate") -> tuple[set, set]:
    """Target centers renumbered into the target ambient."""
    dropped = frozenset(cert.dropped)
    faces = {_project_face(f, dropped) for f in cert.target_faces}
    diags = set()
    for h in cert.target_diags:
        hull = _project_face(h.hull, dropped)
        fam = TransversalFamily(
            hull.n, tuple(_project_face(m, dropped) for m in h.family.members)
        )
        diags.add(BoundaryDiagonal(hull, fam))
    return faces, diags


def _check_image(desc: tuple, target_faces, target_diags) -> None:
    kind = desc[0]
    if kind in ("whole", "original"):
        return
    if kind == "front-face":
        if desc[1] not in target_faces:
            raise NormalityViolation(
                f"image face {desc[1]} is not blown up in the target"
            )
        return
    if desc[1] not in target_diags:
        raise NormalityViolation(
            f"image diagonal {desc[1]} is not blown up in the target"
        )


def check_b_normality(cert: BlowdownCertificate) -> dict:
    """Image of every source boundary hypersurface under the projection must
    again be a boundary hypersurface of the target (or the whole target)."""
    dropped = frozenset(cert.dropped)
    tfaces, tdiags = _target_sets(cert)
    images = []
    for desc in _source_hypersurfaces(cert):
        img = _project_descriptor(desc, cert.n, dropped)
        _check_image(img, tfaces, tdiags)
        images.append(
            {"source": _descriptor_json(desc), "image": _descriptor_json(img)}
        )
    return {"ok": True, "n": cert.n, "dropped": list(cert.dropped),
            "hypersurfaces": images}


def check_tower_normality(certs: Sequence[BlowdownCertificate]) -> dict:
    """b-normality of the composite projection given one certificate per
    stage (each dropping factors from the previous stage's target)."""
    if not certs:
        raise ValueError("empty tower")
    tfaces, tdiags = _target_sets(certs[-1])
    images = []
    for desc in _source_hypersurfaces(certs[0]):
        img = desc
        for cert in certs:
            img = _project_descriptor(img, cert.n, frozenset(cert.dropped))
        _check_image(img, tfaces, tdiags)
        images.append(
            {"source": _descriptor_json(desc), "image": _descriptor_json(img)}
        )
    return {"ok": True, "stages": len(certs), "hypersurfaces": images}


# --------------------------------------------------------------------------
# permutation equivariance helpers


def _relabel_key(key: str, sigma: dict) -> str:
    if key.startswith("face:"):
        import json as _json

        return face_key(
            apply_sigma_face(sigma, Face.from_json(_json.loads(key[5:])))
        )
    import json as _json

    return diag_key(
        apply_sigma_diag(sigma, BoundaryDiagonal.from_json(_json.loads(key[5:])))
    )


def relabel_certificate(cert: BlowdownCertificate, sigma: dict) -> "BlowdownCertificate":
    """Apply a factor permutation to every center mentioned; the move list
    keeps its order (which need not be a canonical order afterwards)."""
    return BlowdownCertificate(
        kind=cert.kind,
        n=cert.n,
        dropped=tuple(sorted(sigma[i] for i in cert.dropped)),
        source_faces=tuple(apply_sigma_face(sigma, f) for f in cert.source_faces),
        source_diags=tuple(apply_sigma_diag(sigma, h) for h in cert.source_diags),
        moves=tuple(
            Move(
                m.kind,
                tuple(_relabel_key(k, sigma) for k in m.removed),
                m.checks,
                tuple(
                    (_relabel_key(a, sigma), _relabel_key(b, sigma), r, w)
                    for a, b, r, w in m.pair_facts
                ),
            )
            for m in cert.moves
        ),
        target_faces=tuple(apply_sigma_face(sigma, f) for f in cert.target_faces),
        target_diags=tuple(apply_sigma_diag(sigma, h) for h in cert.target_diags),
    )


def move_profile(cert: BlowdownCertificate, sigma: Optional[dict] = None) -> Counter:
    """Multiset of (move kind, removed centers), optionally relabeled: the
    order-insensitive fingerprint used for equivariance comparisons."""
    out: Counter = Counter()
    for m in cert.moves:
        keys = (
            frozenset(m.removed)
            if sigma is None
            else frozenset(_relabel_key(k, sigma) for k in m.removed)
        )
        out[(m.kind, keys)] += 1
    return out
