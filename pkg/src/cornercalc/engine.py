"""Core state machine for iterated boundary blow-up.

Every tracked submanifold carries a constraint set: a set of boundary
symbols (vanishing boundary functions, original or front-face) plus a
sub-partition of diagonal identifications.  Blowing up a center rewrites
the constraint sets of everything the center contains, records the
center's constraints as forbidden (they can never again all vanish), and
recomputes the pairwise relation matrix.  Face-face pairs are
additionally pushed through the statement-level transition rule and
cross-checked against the constraint model; any disagreement or any pair
outside the proven rules raises UnresolvedRelation.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .boundary_diagonals import BoundaryDiagonal, meet_H
from .diagonals import diagonal_of
from .errors import (
    EmptyMeet,
    IllegalCenter,
    IncoherentTriple,
    InvalidTracked,
    UnresolvedRelation,
)
from .faces import EMPTY, Face, Relation, dotplus, intersect, relation_of

__all__ = [
    "ConstraintSet",
    "Tracked",
    "BlowupState",
    "init",
    "face_transition",
    "transition_of",
    "blow_up",
    "replay",
    "diag_transition",
    "is_resolved",
    "hypersurfaces",
    "relation_matrix",
    "export_dot",
]


# --------------------------------------------------------------------------
# constraint sets


def _merge_blocks(blocks: Iterable[frozenset[int]]) -> frozenset[frozenset[int]]:
    """Union-find closure: overlapping blocks are merged."""
    pending = [set(b) for b in blocks]
    merged: list[set[int]] = []
    for block in pending:
        absorbed = block
        keep = []
        for m in merged:
            if m & absorbed:
                absorbed = absorbed | m
            else:
                keep.append(m)
        keep.append(absorbed)
        merged = keep
    return frozenset(frozenset(m) for m in merged)


@dataclass(frozen=True)
class ConstraintSet:
    """Boundary symbols plus diagonal identification blocks."""

    bnd: frozenset
    blocks: frozenset

    def __post_init__(self):
        object.__setattr__(self, "blocks", _merge_blocks(self.blocks))

    def union(self, other: "ConstraintSet") -> "ConstraintSet":
        return ConstraintSet(self.bnd | other.bnd, self.blocks | other.blocks)

    @property
    def closed_bnd(self) -> frozenset:
        """Boundary symbols closed under block identification: on a
        diagonal block every member's boundary function vanishes as soon
        as one of them does."""
        bnd = set(self.bnd)
        for block in self.blocks:
            labs = {s[2] for s in bnd if s[0] == "x" and s[1] in block}
            for lab in labs:
                bnd.update(("x", j, lab) for j in block)
        return frozenset(bnd)

    def contains(self, other: "ConstraintSet") -> bool:
        """All of other's constraints hold here (closure-aware for blocks)."""
        if not self.closed_bnd >= other.bnd:
            return False
        return all(
            any(b <= mine for mine in self.blocks) for b in other.blocks
        )

    @property
    def support(self) -> frozenset[int]:
        idx = {s[1] for s in self.bnd if s[0] == "x"}
        for b in self.blocks:
            idx |= b
        return frozenset(idx)


def _face_cset(face: Face) -> ConstraintSet:
    return ConstraintSet(
        frozenset(("x", i, lab) for i, lab in face.assignment), frozenset()
    )


def _diag_cset(diag: BoundaryDiagonal) -> ConstraintSet:
    blocks = frozenset(
        frozenset(b) for b in diagonal_of(diag.family).blocks
    )
    return ConstraintSet(_face_cset(diag.hull).bnd, blocks)


def _symbol_relation(
    c1: ConstraintSet, c2: ConstraintSet, forbidden: Sequence[ConstraintSet]
) -> Relation:
    union = c1.union(c2)
    if any(union.contains(f) for f in forbidden):
        return Relation.DISJOINT
    if c1 == c2:
        return Relation.EQUAL
    if c1.contains(c2):
        return Relation.STRICTLY_SMALLER
    if c2.contains(c1):
        return Relation.STRICTLY_LARGER
    if not (c1.bnd & c2.bnd) and not (c1.support & c2.support):
        return Relation.TRANSVERSAL
    return Relation.NCNT


def _symbol_disjoint(
    c1: ConstraintSet, c2: ConstraintSet, forbidden: Sequence[ConstraintSet]
) -> bool:
    union = c1.union(c2)
    return any(union.contains(f) for f in forbidden)


def _static_diag_relation(h1: BoundaryDiagonal, h2: BoundaryDiagonal) -> Relation:
    """Relation of two boundary diagonals before any diagonal is blown.

    Containment is decided by the meet (hull intersection, family union):
    the meet equals one of the pair exactly when that one is contained in
    the other.  Hulls meeting transversally give a transversal pair; a
    label conflict of the hulls gives a disjoint pair.
    """
    if h1 == h2:
        return Relation.EQUAL
    try:
        m = meet_H(h1, h2)
    except EmptyMeet:
        return Relation.DISJOINT
    if m == h1:
        return Relation.STRICTLY_SMALLER
    if m == h2:
        return Relation.STRICTLY_LARGER
    if relation_of(h1.hull, h2.hull) is Relation.TRANSVERSAL:
        return Relation.TRANSVERSAL
    return Relation.NCNT


# --------------------------------------------------------------------------
# tracked items


@dataclass(frozen=True)
class Tracked:
    """A submanifold followed through the blow-up: face, diagonal, or front face."""

    id: int
    kind: str  # "face" | "diag" | "front"
    face: Optional[Face] = None
    diag: Optional[BoundaryDiagonal] = None
    center_id: Optional[int] = None  # for kind == "front"

    def encoding(self, tracked_by_id=None) -> dict:
        if self.kind == "face":
            return {"kind": "face", "face": self.face.to_json()}
        if self.kind == "diag":
            return {"kind": "diag", "diag": self.diag.to_json()}
        center = tracked_by_id[self.center_id]
        return {"kind": "front", "center": center.encoding(tracked_by_id)}

    def key(self, tracked_by_id=None) -> str:
        return json.dumps(
            self.encoding(tracked_by_id), sort_keys=True, separators=(",", ":")
        )

    def label(self, tracked_by_id=None) -> str:
        if self.kind == "face":
            return repr(self.face)
        if self.kind == "diag":
            return repr(self.diag)
        return f"ff({tracked_by_id[self.center_id].label(tracked_by_id)})"


# --------------------------------------------------------------------------
# the transition rule for face pairs


def _derive(
    r12: Relation,
    r1b: Relation,
    r2b: Relation,
    dotplus_strict: bool,
    meet_in_center: bool,
) -> Relation:
    R = Relation
    if r12 is R.DISJOINT:
        return R.DISJOINT
    if r12 is R.EQUAL:
        raise IncoherentTriple("tracked faces must be distinct")
    if R.DISJOINT in (r1b, r2b):
        if meet_in_center:
            raise IncoherentTriple(
                "center disjoint from a face cannot contain their intersection"
            )
        return r12
    b1_in_c = r1b is R.STRICTLY_SMALLER
    b2_in_c = r2b is R.STRICTLY_SMALLER
    if r12 is R.TRANSVERSAL:
        if meet_in_center and not b1_in_c and not b2_in_c:
            return R.DISJOINT
        return R.TRANSVERSAL
    if r12 is R.STRICTLY_LARGER:
        return _derive(
            R.STRICTLY_SMALLER, r2b, r1b, dotplus_strict, meet_in_center
        ).swap()
    if r12 is R.STRICTLY_SMALLER:
        if (not b1_in_c) or (b1_in_c and r2b is R.TRANSVERSAL) or b2_in_c:
            return R.STRICTLY_SMALLER
        if b1_in_c and r2b is R.STRICTLY_LARGER:
            return R.TRANSVERSAL
        return R.NCNT
    # r12 is NCNT
    if meet_in_center and not b1_in_c and not b2_in_c:
        return R.DISJOINT
    if (b1_in_c or b2_in_c) and dotplus_strict:
        return R.TRANSVERSAL
    return R.NCNT


_REALIZABLE: Optional[frozenset] = None


def _realizable_inputs() -> frozenset:
    """All input tuples realizable by three distinct index sets.

    The five inputs depend only on which regions of the three-set Venn
    diagram are occupied, so enumerating one witness element per occupied
    region over all occupancy patterns is exhaustive.
    """
    global _REALIZABLE
    if _REALIZABLE is not None:
        return _REALIZABLE
    found = set()
    regions = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    regions.remove((0, 0, 0))
    for k in range(1, 8):
        for occupied in itertools.combinations(regions, k):
            s1, s2, sc = set(), set(), set()
            for elem, (a, b, c) in enumerate(occupied):
                if a:
                    s1.add(elem)
                if b:
                    s2.add(elem)
                if c:
                    sc.add(elem)
            if s1 == s2 or s1 == sc or s2 == sc:
                continue

            def rel(x, y):
                if x == y:
                    return Relation.EQUAL
                if x > y:
                    return Relation.STRICTLY_SMALLER
                if x < y:
                    return Relation.STRICTLY_LARGER
                if not x & y:
                    return Relation.TRANSVERSAL
                return Relation.NCNT

            dp = s1 & s2
            found.add(
                (
                    rel(s1, s2),
                    rel(s1, sc),
                    rel(s2, sc),
                    sc >= dp and sc != dp,
                    sc <= (s1 | s2),
                )
            )
    _REALIZABLE = frozenset(found)
    return _REALIZABLE


def face_transition(
    r12: Relation,
    r1b: Relation,
    r2b: Relation,
    dotplus_strict: bool,
    meet_in_center: bool,
) -> Relation:
    """Relation of the lifts of two distinct faces after blowing a third.

    dotplus_strict: the center is strictly inside the smallest common face
    of the pair.  meet_in_center: the pair's intersection lies inside the
    center.  The latter goes beyond the four inputs originally envisaged:
    the four alone do not determine disjointness (two centers can induce
    identical relation inputs yet differ on whether they swallow the
    intersection), so the witness predicate is taken explicitly.
    """
    R = Relation
    if r12 is not R.DISJOINT and R.DISJOINT not in (r1b, r2b):
        key = (r12, r1b, r2b, dotplus_strict, meet_in_center)
        if key not in _realizable_inputs():
            raise IncoherentTriple(f"no index-set witness for inputs {key}")
    return _derive(r12, r1b, r2b, dotplus_strict, meet_in_center)


def transition_of(
    b1: Face, b2: Face, center: Face, r12: Optional[Relation] = None
) -> Relation:
    """face_transition with all predicates computed from the face data.

    r12 defaults to the static relation; pass the current matrix entry to
    apply the rule mid-schedule (valid along intersection-orders).
    """
    if len({b1, b2, center}) != 3:
        raise IncoherentTriple("faces and center must be pairwise distinct")
    if r12 is None:
        r12 = relation_of(b1, b2)
    r1b = relation_of(b1, center)
    r2b = relation_of(b2, center)
    meet = intersect(b1, b2)
    meet_in_center = (
        meet is not EMPTY
        and relation_of(meet, center)
        in (Relation.EQUAL, Relation.STRICTLY_SMALLER)
    )
    if r12 is Relation.DISJOINT or Relation.DISJOINT in (r1b, r2b):
        dp_strict = False
    else:
        dp = dotplus(b1, b2)
        dp_strict = relation_of(center, dp) is Relation.STRICTLY_SMALLER
    return _derive(r12, r1b, r2b, dp_strict, meet_in_center)


# --------------------------------------------------------------------------
# state


@dataclass(frozen=True)
class BlowupState:
    n: int
    labels: tuple[str, ...]
    tracked: tuple[Tracked, ...]
    csets: tuple[ConstraintSet, ...]
    relations: dict  # (i, j) with i < j -> Relation
    history: tuple[int, ...]
    blown: frozenset
    forbidden: tuple[ConstraintSet, ...]
    # per blown center: mapping other-id -> relation just before that blow
    step_rows: tuple = ()

    def by_id(self, i: int) -> Tracked:
        return self.tracked[i]

    def relation(self, i: int, j: int) -> Relation:
        if i == j:
            return Relation.EQUAL
        a, b = min(i, j), max(i, j)
        r = self.relations[(a, b)]
        return r if (i, j) == (a, b) else r.swap()

    def active_ids(self) -> list[int]:
        return [t.id for t in self.tracked if t.id not in self.blown]

    def find_face(self, face: Face) -> Optional[int]:
        for t in self.tracked:
            if t.kind == "face" and t.face == face:
                return t.id
        return None

    def find_diag(self, diag: BoundaryDiagonal) -> Optional[int]:
        for t in self.tracked:
            if t.kind == "diag" and t.diag == diag:
                return t.id
        return None

    def find_front(self, center_id: int) -> Optional[int]:
        for t in self.tracked:
            if t.kind == "front" and t.center_id == center_id:
                return t.id
        return None

    def tracked_map(self) -> dict:
        return {t.id: t for t in self.tracked}

    def to_json(self) -> dict:
        byid = self.tracked_map()
        return {
            "n": self.n,
            "labels": list(self.labels),
            "tracked": [t.encoding(byid) for t in self.tracked],
            "history": list(self.history),
            "relations": [
                [self.relation(i, j).code for j in range(len(self.tracked))]
                for i in range(len(self.tracked))
            ],
        }


def init(
    n: int,
    tracked_faces: Sequence[Face] = (),
    tracked_diags: Sequence[BoundaryDiagonal] = (),
    labels: Sequence[str] = ("b",),
) -> BlowupState:
    """Fresh state: everything tracked, nothing blown, full matrix."""
    labels = tuple(labels)
    tracked: list[Tracked] = []
    csets: list[ConstraintSet] = []
    for f in tracked_faces:
        if f.n != n:
            raise InvalidTracked(f"face {f} not in ambient {n}")
        tracked.append(Tracked(len(tracked), "face", face=f))
        csets.append(_face_cset(f))
    for d in tracked_diags:
        if d.n != n:
            raise InvalidTracked(f"diagonal {d} not in ambient {n}")
        tracked.append(Tracked(len(tracked), "diag", diag=d))
        csets.append(_diag_cset(d))
    if len({c for c in csets}) != len(csets):
        raise InvalidTracked("duplicate tracked submanifolds")
    forbidden: list[ConstraintSet] = []
    if len(labels) > 1:
        for i in range(1, n + 1):
            for la, lb in itertools.combinations(sorted(labels), 2):
                forbidden.append(
                    ConstraintSet(
                        frozenset({("x", i, la), ("x", i, lb)}), frozenset()
                    )
                )
    relations = {}
    for i, j in itertools.combinations(range(len(tracked)), 2):
        if tracked[i].kind == "diag" and tracked[j].kind == "diag":
            r = _static_diag_relation(tracked[i].diag, tracked[j].diag)
        else:
            r = _symbol_relation(csets[i], csets[j], forbidden)
        if r is Relation.EQUAL:
            raise InvalidTracked("two tracked submanifolds coincide")
        relations[(i, j)] = r
    return BlowupState(
        n=n,
        labels=labels,
        tracked=tuple(tracked),
        csets=tuple(csets),
        relations=relations,
        history=(),
        blown=frozenset(),
        forbidden=tuple(forbidden),
        step_rows=(),
    )


def _check_face_center(state: BlowupState, center: Tracked) -> None:
    if center.face.codim < 2:
        raise IllegalCenter(
            "blowing up a hypersurface or the whole space does nothing"
        )
    blown_faces = {
        state.by_id(i).face
        for i in state.blown
        if state.by_id(i).kind == "face"
    }
    for earlier in blown_faces:
        if relation_of(earlier, center.face) is Relation.NCNT:
            meet = intersect(earlier, center.face)
            if meet not in blown_faces:
                raise IllegalCenter(
                    "intersection-order discipline: "
                    f"{earlier} and {center.face} need {meet} blown first"
                )


def _check_diag_center(state: BlowupState, center: Tracked) -> None:
    diag = center.diag
    if not is_resolved(state, diag.family):
        raise IllegalCenter(
            f"family of {diag} not fully blown; its diagonal is not yet "
            "a p-submanifold"
        )
    for t in state.tracked:
        if t.kind != "diag" or t.id == center.id or t.id in state.blown:
            continue
        try:
            m = meet_H(t.diag, diag)
        except EmptyMeet:
            continue
        if m == t.diag and t.diag != diag:
            raise IllegalCenter(
                f"maximality discipline: {t.diag} is strictly inside "
                f"{diag} and must be blown first"
            )


def blow_up(state: BlowupState, center_id: int) -> BlowupState:
    """Blow up a tracked center; returns the successor state."""
    if not 0 <= center_id < len(state.tracked):
        raise IllegalCenter(f"unknown center id {center_id}")
    if center_id in state.blown:
        raise IllegalCenter("center already blown")
    center = state.by_id(center_id)
    if center.kind == "front":
        raise IllegalCenter("front faces are never blow-up centers")
    if center.kind == "face":
        _check_face_center(state, center)
    else:
        _check_diag_center(state, center)

    S = state.csets[center_id]
    ff_symbol = ("ff", center.key(state.tracked_map()))
    ff_cset = ConstraintSet(frozenset({ff_symbol}), frozenset())
    forbidden = state.forbidden + (S,)

    # rewrite constraint sets of unblown items the center contains
    new_csets = list(state.csets)
    active = [i for i in state.active_ids() if i != center_id]
    for i in active:
        c = state.csets[i]
        if c.contains(S):
            if not S.blocks <= c.blocks:
                raise UnresolvedRelation(
                    "cannot rewrite diagonal constraints of a tracked item "
                    "through this center"
                )
            new_csets[i] = ConstraintSet(
                frozenset({ff_symbol}) | (c.bnd - S.bnd), c.blocks - S.blocks
            )

    ff_id = len(state.tracked)
    tracked = state.tracked + (Tracked(ff_id, "front", center_id=center_id),)
    new_csets.append(ff_cset)

    step_row = {i: state.relation(center_id, i) for i in active}

    relations = dict(state.relations)
    for i, j in itertools.combinations(active, 2):
        old = relations[(i, j)]
        if old is Relation.DISJOINT:
            continue
        ti, tj = state.by_id(i), state.by_id(j)
        both_diag = ti.kind == "diag" and tj.kind == "diag"
        if both_diag:
            # rule-driven: a diagonal pair separates exactly when its meet
            # (a proper sub-diagonal of both) has been blown up, and also
            # whenever the constraint model proves separation outright
            separated = _symbol_disjoint(new_csets[i], new_csets[j], forbidden)
            if center.kind == "diag" and not separated:
                try:
                    separated = meet_H(ti.diag, tj.diag) == center.diag
                except EmptyMeet:  # pragma: no cover - would be DISJOINT already
                    separated = True
            if separated:
                relations[(i, j)] = Relation.DISJOINT
            continue
        if center.kind == "diag":
            # a face and a diagonal separate when their trace (the diagonal
            # restricted to the face's intersection with the hull) is blown
            pair = sorted((ti, tj), key=lambda t: t.kind != "face")
            if pair[0].kind == "face" and pair[1].kind == "diag":
                f, d = pair[0].face, pair[1].diag
                separated = _symbol_disjoint(
                    new_csets[i], new_csets[j], forbidden
                )
                if not separated:
                    m = intersect(f, d.hull)
                    separated = (
                        m is not EMPTY
                        and BoundaryDiagonal(m, d.family) == center.diag
                    )
                if separated:
                    relations[(i, j)] = Relation.DISJOINT
            continue
        new = _symbol_relation(new_csets[i], new_csets[j], forbidden)
        if (
            ti.kind == "face"
            and tj.kind == "face"
            and state.csets[i] == _face_cset(ti.face)
            and state.csets[j] == _face_cset(tj.face)
        ):
            # cross-check against the statement-level rule; its auxiliary
            # predicates are computed from the static face data, so it only
            # speaks for pairs untouched by earlier centers (a face swallowed
            # by an earlier center has rewritten constraints the static
            # predicates no longer describe; those pairs are covered by the
            # guards below)
            ruled = transition_of(ti.face, tj.face, center.face, r12=old)
            if ruled is not new:
                raise UnresolvedRelation(
                    f"rule and constraint model disagree for "
                    f"({ti.face}, {tj.face}) at center {center.face}: "
                    f"{ruled.value} vs {new.value}"
                )
        if old is Relation.TRANSVERSAL and new not in (
            Relation.TRANSVERSAL,
            Relation.DISJOINT,
        ):
            raise UnresolvedRelation(
                "transversal pair may only stay transversal or separate"
            )
        if new is Relation.EQUAL:
            raise UnresolvedRelation("distinct lifts cannot become equal")
        relations[(i, j)] = new

    for i in active:
        old = step_row[i]
        if old is Relation.DISJOINT:
            new = Relation.DISJOINT
        elif center.kind == "diag":
            # everything not separated from a legal diagonal center either
            # strictly contains it or crosses it; the front face is then a
            # hypersurface transversal to the lift.  A surviving ncnt
            # partner (or a diagonal pair whose meet was never blown) has
            # no resolved relation to the front face.
            ok = old is Relation.STRICTLY_SMALLER or (
                state.by_id(i).kind != "diag" and old is Relation.TRANSVERSAL
            )
            if not ok:
                raise UnresolvedRelation(
                    f"relation of the new front face to item {i} is not "
                    f"determined (center relation was {old.value})"
                )
            new = Relation.TRANSVERSAL
        else:
            new = _symbol_relation(new_csets[i], ff_cset, forbidden)
        relations[(min(i, ff_id), max(i, ff_id))] = (
            new if i < ff_id else new.swap()
        )
    # stale entries: pairs involving blown items keep their last value
    for i in state.blown | {center_id}:
        relations[(i, ff_id)] = Relation.NCNT  # placeholder, never consulted

    return BlowupState(
        n=state.n,
        labels=state.labels,
        tracked=tracked,
        csets=tuple(new_csets),
        relations=relations,
        history=state.history + (center_id,),
        blown=state.blown | {center_id},
        forbidden=forbidden,
        step_rows=state.step_rows + ((center_id, step_row),),
    )


def replay(state: BlowupState, center_ids: Iterable[int]) -> BlowupState:
    for cid in center_ids:
        state = blow_up(state, cid)
    return state


def diag_transition(
    state: BlowupState, h1: BoundaryDiagonal, h2: BoundaryDiagonal
) -> Relation:
    """Current relation of two tracked boundary diagonals."""
    i, j = state.find_diag(h1), state.find_diag(h2)
    if i is None or j is None:
        raise InvalidTracked("both diagonals must be tracked")
    return state.relation(i, j)


def is_resolved(state: BlowupState, fam) -> bool:
    """All family members blown (the diagonal's lift is a p-submanifold)."""
    blown_faces = {
        state.by_id(i).face
        for i in state.blown
        if state.by_id(i).kind == "face"
    }
    return all(m in blown_faces for m in fam.members)


@dataclass(frozen=True)
class Hypersurface:
    kind: str  # "original" | "front"
    face: Optional[Face] = None
    label: Optional[str] = None
    center_id: Optional[int] = None


def hypersurfaces(state: BlowupState) -> list[Hypersurface]:
    """Original boundary hypersurfaces plus one front face per blown center."""
    out = [
        Hypersurface("original", face=Face.of(state.n, [i], lab), label=lab)
        for i in range(1, state.n + 1)
        for lab in state.labels
    ]
    out.extend(
        Hypersurface("front", center_id=cid) for cid in state.history
    )
    return out


def relation_matrix(state: BlowupState) -> dict:
    """Canonical matrix over the surviving items (blown centers appear as
    their front faces), independent of the schedule that produced it."""
    byid = state.tracked_map()
    items = sorted(
        (t for t in state.tracked if t.id not in state.blown),
        key=lambda t: t.key(byid),
    )
    keys = [t.key(byid) for t in items]
    codes = [
        [state.relation(a.id, b.id).code for b in items] for a in items
    ]
    return {"items": keys, "relations": codes}


def export_dot(state: BlowupState) -> str:
    """DOT graph of the containment poset (covering relations only)."""
    byid = state.tracked_map()
    items = [t for t in state.tracked if t.id not in state.blown]
    below = {
        (a.id, b.id)
        for a in items
        for b in items
        if a.id != b.id
        and state.relation(a.id, b.id) is Relation.STRICTLY_SMALLER
    }
    covers = {
        (i, j)
        for (i, j) in below
        if not any((i, k) in below and (k, j) in below for k in
                   (t.id for t in items))
    }
    lines = ["digraph faces {"]
    for t in items:
        text = t.label(byid).replace('"', '\\"')
        lines.append(f'  n{t.id} [label="{text}"];')
    for i, j in sorted(covers):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines)
