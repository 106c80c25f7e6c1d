"""Boundary diagonals: hull face + transversal family pairs and their closure.

A boundary diagonal is the trace of a multi-diagonal on a boundary face
(the hull) contained in the intersection of the family.  These are the
centers of the second round of blow-ups; their admissible schedules are
the chain-orders, and the collections that can be blown up at all are the
fc-closed ones.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable

from .diagonals import (
    SubPartition,
    TransversalFamily,
    diagonal_of,
    family_codim,
    transversal_union,
)
from .errors import EmptyMeet, MismatchedAmbient, NotClosed
from .faces import EMPTY, Face, enumerate_faces, intersect
from .orders import FaceCollection, is_closed_nt

__all__ = [
    "BoundaryDiagonal",
    "HCollection",
    "generate_all",
    "meet_H",
    "is_fc_closed",
    "is_intersection_closed",
    "is_chain_order",
    "chain_order_key",
]


@dataclass(frozen=True)
class BoundaryDiagonal:
    """Pair (hull, family) with the hull inside the family's intersection."""

    hull: Face
    family: TransversalFamily

    def __post_init__(self):
        if self.hull.n != self.family.n:
            raise MismatchedAmbient(f"{self.hull.n} != {self.family.n}")
        hull_labels = self.hull.labels
        for member in self.family.members:
            for i, lab in member.assignment:
                if hull_labels.get(i) != lab:
                    raise ValueError(
                        "hull must lie inside every member of the family"
                    )

    @property
    def n(self) -> int:
        return self.hull.n

    def to_json(self) -> dict:
        return {
            "hull": self.hull.to_json(),
            "family": self.family.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "BoundaryDiagonal":
        hull = Face.from_json(data["hull"])
        return cls(hull, TransversalFamily.from_json(hull.n, data["family"]))

    def key(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __repr__(self):
        fam = ",".join(repr(f) for f in self.family.members)
        return f"H({self.hull!r}; {fam})"


def chain_order_key(h: BoundaryDiagonal):
    """Canonical chain-order: family codim desc, hull codim desc, then lex.

    Sorting by this key groups each family into a contiguous block (the
    family appears in the key before the hull data).
    """
    return (
        -family_codim(h.family),
        tuple(f.sort_key() for f in h.family.members),
        -h.hull.codim,
        h.hull.sort_key(),
    )


@dataclass(frozen=True)
class HCollection:
    """Ordered collection of boundary diagonals over a face-collection context."""

    items: tuple[BoundaryDiagonal, ...]
    context: FaceCollection

    def __post_init__(self):
        items = tuple(self.items)
        if len(set(items)) != len(items):
            raise ValueError("items must be distinct")
        ctx = set(self.context.faces)
        for h in items:
            if h.n != self.context.n:
                raise MismatchedAmbient(f"{h.n} != {self.context.n}")
            for member in h.family.members:
                if member not in ctx:
                    raise ValueError(f"family member {member} outside the context")
        if not is_closed_nt(self.context):
            raise NotClosed("context not closed under non-transversal intersection")
        object.__setattr__(self, "items", items)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __contains__(self, h):
        return h in self.items

    def subset(self, items: Iterable[BoundaryDiagonal]) -> "HCollection":
        return HCollection(tuple(items), self.context)


def _hull_scope(n: int, family: TransversalFamily) -> list[Face]:
    """All codim >= 2 faces inside the intersection of the family."""
    base = intersect(family.members[0], family.members[0])
    for member in family.members[1:]:
        base = intersect(base, member)
    assert base is not EMPTY
    fixed = dict(base.assignment)
    free = [i for i in range(1, n + 1) if i not in fixed]
    # labels of extra pinned factors must extend consistently; with the
    # family's labels fixed, any label for free factors would need a label
    # choice -- restrict to the single-label setting used throughout.
    labels = {lab for _, lab in base.assignment}
    if len(labels) != 1:
        raise ValueError("hull enumeration requires a single label")
    (label,) = labels
    out = []
    for k in range(len(free) + 1):
        for extra in itertools.combinations(free, k):
            assignment = dict(fixed)
            for i in extra:
                assignment[i] = label
            f = Face.from_mapping(n, assignment)
            if f.codim >= 2:
                out.append(f)
    return out


def generate_all(context: FaceCollection) -> HCollection:
    """Every boundary diagonal over the context, in the canonical chain-order.

    Families are the transversal subsets of the context; hulls range over
    all codim >= 2 faces inside the family's intersection.
    """
    if not is_closed_nt(context):
        raise NotClosed("context not closed under non-transversal intersection")
    n = context.n
    items: list[BoundaryDiagonal] = []
    pool = list(context.faces)
    for size in range(1, n // 2 + 1):
        for combo in itertools.combinations(pool, size):
            try:
                fam = TransversalFamily(n, combo)
            except ValueError:
                continue
            for hull in _hull_scope(n, fam):
                items.append(BoundaryDiagonal(hull, fam))
    items.sort(key=chain_order_key)
    return HCollection(tuple(items), context)


def meet_H(h1: BoundaryDiagonal, h2: BoundaryDiagonal) -> BoundaryDiagonal:
    """Intersection of two boundary diagonals: (hull meet, family union)."""
    if h1.n != h2.n:
        raise MismatchedAmbient(f"{h1.n} != {h2.n}")
    hull = intersect(h1.hull, h2.hull)
    if hull is EMPTY:
        raise EmptyMeet("hulls are disjoint (label conflict)")
    return BoundaryDiagonal(hull, transversal_union(h1.family, h2.family))


def _boundary_hulls(h: BoundaryDiagonal) -> list[Face]:
    """Codim >= 2 faces strictly inside the hull (same scope as generation)."""
    return [
        f for f in _hull_scope(h.n, h.family)
        if f != h.hull and f.indices > h.hull.indices
    ]


def is_fc_closed(g: HCollection) -> bool:
    """Face-closed and chain-closed.

    Face-closed: for a fixed hull, the families present are closed under
    the transversal union.  Chain-closed: with the family fixed, every
    deeper hull (boundary face of a present hull) is present.
    """
    present = set(g.items)
    by_hull: dict[Face, list[BoundaryDiagonal]] = {}
    for h in g.items:
        by_hull.setdefault(h.hull, []).append(h)
    for hull, hs in by_hull.items():
        for h1, h2 in itertools.combinations(hs, 2):
            u = transversal_union(h1.family, h2.family)
            if BoundaryDiagonal(hull, u) not in present:
                return False
    for h in g.items:
        for smaller in _boundary_hulls(h):
            if BoundaryDiagonal(smaller, h.family) not in present:
                return False
    return True


def is_intersection_closed(g: HCollection) -> bool:
    """Independent characterization: closed under pairwise meets, and each
    family's hull set closed under passage to boundary faces."""
    present = set(g.items)
    for h1, h2 in itertools.combinations(g.items, 2):
        try:
            m = meet_H(h1, h2)
        except EmptyMeet:
            continue
        if m not in present:
            return False
    by_family: dict[TransversalFamily, list[BoundaryDiagonal]] = {}
    for h in g.items:
        by_family.setdefault(h.family, []).append(h)
    for fam, hs in by_family.items():
        hulls = {h.hull for h in hs}
        for h in hs:
            for smaller in _boundary_hulls(h):
                if smaller not in hulls:
                    return False
    return True


def is_chain_order(g: HCollection) -> bool:
    """Contiguous family blocks; family codim weakly decreasing across
    blocks; hull codim weakly decreasing within each block."""
    seen_families: list[TransversalFamily] = []
    for h in g.items:
        if not seen_families or seen_families[-1] != h.family:
            if h.family in seen_families:
                return False  # family block interrupted
            seen_families.append(h.family)
    codims = [family_codim(f) for f in seen_families]
    if any(a < b for a, b in zip(codims, codims[1:])):
        return False
    for fam in seen_families:
        hull_codims = [h.hull.codim for h in g.items if h.family == fam]
        if any(a < b for a, b in zip(hull_codims, hull_codims[1:])):
            return False
    return True
