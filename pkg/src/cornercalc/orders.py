"""Order theory of blow-up schedules for face collections.

An ordered face collection is a blow-up schedule.  Valid schedules are the
intersection-orders: every pair that is neither comparable nor transversal
must have its intersection scheduled no later than the later of the two.
Size-orders (weakly decreasing codimension) are the canonical ones; the
defect functional measures the distance to a size-order and strictly
decreases under the normalizing adjacent swaps.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import MismatchedAmbient, NotClosed, NotIntersectionOrder
from .faces import EMPTY, Face, Relation, intersect, relation_of

__all__ = [
    "FaceCollection",
    "SwapCertificate",
    "SwapMove",
    "is_closed_nt",
    "is_intersection_order",
    "is_size_order",
    "defect",
    "normalize_to_size_order",
    "transversal_components",
    "subcollection_first",
    "nt_closure",
    "size_order",
    "enumerate_intersection_orders",
]


@dataclass(frozen=True)
class FaceCollection:
    """Ordered list of distinct faces; the order is the blow-up schedule."""

    n: int
    faces: tuple[Face, ...]

    def __post_init__(self):
        faces = tuple(self.faces)
        for f in faces:
            if f.n != self.n:
                raise MismatchedAmbient(f"face in ambient {f.n}, collection {self.n}")
        if len(set(faces)) != len(faces):
            raise ValueError("faces must be distinct")
        object.__setattr__(self, "faces", faces)

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __contains__(self, f):
        return f in self.faces

    def reordered(self, faces: Sequence[Face]) -> "FaceCollection":
        if set(faces) != set(self.faces):
            raise ValueError("reordering must preserve the face set")
        return FaceCollection(self.n, tuple(faces))


@dataclass(frozen=True)
class SwapMove:
    pos: int  # 0-based position of the swapped pair (pos, pos+1)
    why: str  # DisjointAtSwap | TransversalAtSwap | DefectMove


@dataclass(frozen=True)
class SwapCertificate:
    moves: tuple[SwapMove, ...]
    defect_trace: tuple[int, ...]  # defect before, then after each move

    def to_json(self) -> dict:
        return {
            "moves": [{"pos": m.pos, "why": m.why} for m in self.moves],
            "defect_trace": list(self.defect_trace),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SwapCertificate":
        return cls(
            tuple(SwapMove(int(m["pos"]), str(m["why"])) for m in data["moves"]),
            tuple(int(d) for d in data["defect_trace"]),
        )


def is_closed_nt(c: FaceCollection) -> bool:
    """Closed under non-transversal intersection."""
    members = set(c.faces)
    for f, g in itertools.combinations(c.faces, 2):
        r = relation_of(f, g)
        if r in (Relation.TRANSVERSAL, Relation.DISJOINT):
            continue
        if intersect(f, g) not in members:
            return False
    return True


def is_intersection_order(c: FaceCollection) -> bool:
    """Every ncnt pair's intersection comes no later than the later element."""
    if not is_closed_nt(c):
        raise NotClosed("collection not closed under non-transversal intersection")
    pos = {f: i for i, f in enumerate(c.faces)}
    for f, g in itertools.combinations(c.faces, 2):
        if relation_of(f, g) is Relation.NCNT:
            if pos[intersect(f, g)] > max(pos[f], pos[g]):
                return False
    return True


def is_size_order(c: FaceCollection) -> bool:
    """Weakly decreasing codimension along the schedule."""
    codims = [f.codim for f in c.faces]
    return all(a >= b for a, b in zip(codims, codims[1:]))


def defect(c: FaceCollection) -> int:
    """Weighted misordering: sum over elements of position times the worst
    codimension excess over any earlier element (positions are 1-based)."""
    total = 0
    for j, fj in enumerate(c.faces):
        worst = 0
        for fi in c.faces[:j]:
            worst = max(worst, fj.codim - fi.codim)
        total += (j + 1) * worst
    return total


def _swap_reason(c: FaceCollection, pos: int) -> str:
    """Justification for swapping the adjacent pair at (pos, pos+1)."""
    f, g = c.faces[pos], c.faces[pos + 1]
    r = relation_of(f, g)
    if r is Relation.TRANSVERSAL:
        return "TransversalAtSwap"
    if r is Relation.NCNT:
        # their intersection is scheduled earlier, so the lifts are disjoint
        meet = intersect(f, g)
        if meet in c.faces[:pos]:
            return "DisjointAtSwap"
        raise NotIntersectionOrder(
            f"swap at {pos}: ncnt pair with intersection not yet blown"
        )
    if r is Relation.DISJOINT:
        return "DisjointAtSwap"
    return "DefectMove"  # nested pair; generic defect-decreasing move


def normalize_to_size_order(c: FaceCollection) -> tuple[FaceCollection, SwapCertificate]:
    """Sort into a size-order by adjacent swaps, certifying each move.

    Each move swaps the first adjacent codimension-increasing pair; the
    defect strictly decreases and every intermediate schedule remains an
    intersection-order.
    """
    if not is_intersection_order(c):
        raise NotIntersectionOrder("input is not an intersection-order")
    current = c
    moves: list[SwapMove] = []
    trace = [defect(current)]
    while not is_size_order(current):
        faces = list(current.faces)
        pos = next(
            i for i in range(len(faces) - 1)
            if faces[i].codim < faces[i + 1].codim
        )
        why = _swap_reason(current, pos)
        faces[pos], faces[pos + 1] = faces[pos + 1], faces[pos]
        current = current.reordered(faces)
        if not is_intersection_order(current):
            raise NotIntersectionOrder(
                f"swap at {pos} left the schedule invalid"
            )
        d = defect(current)
        if d >= trace[-1]:
            raise NotIntersectionOrder(
                f"swap at {pos} failed to decrease the defect"
            )
        moves.append(SwapMove(pos, why))
        trace.append(d)
    return current, SwapCertificate(tuple(moves), tuple(trace))


def transversal_components(c: FaceCollection) -> list[FaceCollection]:
    """Split a closed collection into its pairwise transversal components.

    Components are indexed by the minimal faces (those containing no other
    member); each member lies above exactly one minimal face.
    """
    if not is_closed_nt(c):
        raise NotClosed("collection not closed under non-transversal intersection")
    members = list(c.faces)
    minimal = [
        f for f in members
        if not any(
            g is not f and relation_of(g, f) is Relation.STRICTLY_SMALLER
            for g in members
        )
    ]
    for a, b in itertools.combinations(minimal, 2):
        if relation_of(a, b) not in (Relation.TRANSVERSAL, Relation.DISJOINT):
            raise NotClosed("minimal elements are not pairwise transversal")
    components = []
    assigned: set[Face] = set()
    for a in sorted(minimal, key=Face.sort_key):
        part = [
            f for f in members
            if f == a or relation_of(a, f) is Relation.STRICTLY_SMALLER
        ]
        if any(f in assigned for f in part):
            raise NotClosed("a member lies above two minimal elements")
        assigned.update(part)
        components.append(FaceCollection(c.n, tuple(part)))
    if len(assigned) != len(members):
        raise NotClosed("a member lies above no minimal element")
    return components


def size_order(faces: Iterable[Face], n: int) -> FaceCollection:
    """The canonical size-order: codim descending, lexicographic tie-break."""
    return FaceCollection(n, tuple(sorted(faces, key=Face.sort_key)))


def subcollection_first(c: FaceCollection, c1: Iterable[Face]) -> FaceCollection:
    """Intersection-order on c with all of c1 scheduled first."""
    c1 = list(dict.fromkeys(c1))
    for f in c1:
        if f not in c.faces:
            raise ValueError(f"{f} not a member of the collection")
    part1 = FaceCollection(c.n, tuple(c1))
    rest = [f for f in c.faces if f not in set(c1)]
    if not is_closed_nt(c):
        raise NotClosed("collection not closed")
    if not is_closed_nt(part1):
        raise NotClosed("subcollection not closed")
    ordered = size_order(c1, c.n).faces + size_order(rest, c.n).faces
    out = c.reordered(ordered)
    if not is_intersection_order(out):
        raise NotIntersectionOrder("construction failed to give a valid schedule")
    return out


def nt_closure(faces: Iterable[Face], n: int | None = None) -> FaceCollection:
    """Smallest superset closed under non-transversal intersection, size-ordered."""
    pool = list(dict.fromkeys(faces))
    if n is None:
        if not pool:
            raise ValueError("ambient n required for an empty input")
        n = pool[0].n
    current: set[Face] = set(pool)
    changed = True
    while changed:
        changed = False
        for f, g in itertools.combinations(tuple(current), 2):
            r = relation_of(f, g)
            if r in (Relation.TRANSVERSAL, Relation.DISJOINT):
                continue
            meet = intersect(f, g)
            if meet is not EMPTY and meet not in current:
                current.add(meet)
                changed = True
    return size_order(current, n)


def enumerate_intersection_orders(faces: Iterable[Face], n: int):
    """Yield every intersection-order of the given closed collection."""
    pool = list(faces)
    base = FaceCollection(n, tuple(pool))
    if not is_closed_nt(base):
        raise NotClosed("collection not closed")
    for perm in itertools.permutations(pool):
        c = FaceCollection(n, perm)
        if is_intersection_order(c):
            yield c
