"""Partition algebra of multi-diagonals.

A transversal family is a set of pairwise transversal faces; it cuts out a
multi-diagonal whose combinatorics is the induced sub-partition of the
factor set (each block = the pinned indices of one member).  The
transversal union realizes the intersection of two such diagonals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .errors import MismatchedAmbient
from .faces import DEFAULT_LABEL, Face, Relation, intersect, relation_of

__all__ = [
    "SubPartition",
    "TransversalFamily",
    "FamilyKind",
    "FamilyClassification",
    "diagonal_of",
    "transversal_union",
    "classify_families",
    "refines",
    "family_codim",
    "oracle_diagonal_meet",
    "enumerate_families",
]


@dataclass(frozen=True)
class SubPartition:
    """Pairwise disjoint blocks of {1..n}, each of size >= 2."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        canon = tuple(sorted((tuple(sorted(b)) for b in self.blocks)))
        seen: set[int] = set()
        for block in canon:
            if len(block) < 2:
                raise ValueError("blocks must have size >= 2")
            for i in block:
                if not 1 <= i <= self.n:
                    raise ValueError(f"index {i} outside 1..{self.n}")
                if i in seen:
                    raise ValueError(f"index {i} in two blocks")
                seen.add(i)
        object.__setattr__(self, "blocks", canon)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for b in self.blocks for i in b)

    def to_json(self) -> dict:
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data: dict) -> "SubPartition":
        return cls(int(data["n"]), tuple(tuple(b) for b in data["blocks"]))


@dataclass(frozen=True)
class TransversalFamily:
    """Non-empty set of pairwise transversal faces of codimension >= 2."""

    n: int
    members: tuple[Face, ...]

    def __post_init__(self):
        canon = tuple(sorted(set(self.members), key=Face.sort_key))
        if not canon:
            raise ValueError("family must be non-empty")
        for f in canon:
            if f.n != self.n:
                raise MismatchedAmbient(f"member in ambient {f.n}, family {self.n}")
            if f.codim < 2:
                raise ValueError("members must have codimension >= 2")
        for f, g in itertools.combinations(canon, 2):
            if relation_of(f, g) is not Relation.TRANSVERSAL:
                raise ValueError(f"members {f} and {g} are not transversal")
        object.__setattr__(self, "members", canon)

    @classmethod
    def of(cls, n: int, *index_sets: Iterable[int], label: str = DEFAULT_LABEL):
        return cls(n, tuple(Face.of(n, s, label) for s in index_sets))

    def to_json(self) -> list:
        return [f.to_json() for f in self.members]

    @classmethod
    def from_json(cls, n: int, data: list) -> "TransversalFamily":
        return cls(n, tuple(Face.from_json(f) for f in data))


def diagonal_of(fam: TransversalFamily) -> SubPartition:
    """Sub-partition induced by the family: one block per member."""
    return SubPartition(fam.n, tuple(tuple(sorted(f.indices)) for f in fam.members))


def family_codim(fam: TransversalFamily) -> int:
    """Sum of the members' codimensions."""
    return sum(f.codim for f in fam.members)


def transversal_union(f1: TransversalFamily, f2: TransversalFamily) -> TransversalFamily:
    """Family whose diagonal is the intersection of the two diagonals.

    Members of both families are grouped into chain-components under
    non-transversal (index-overlapping) linkage; each component is
    replaced by the intersection of its faces.
    """
    if f1.n != f2.n:
        raise MismatchedAmbient(f"{f1.n} != {f2.n}")
    pool = list(dict.fromkeys(f1.members + f2.members))
    parent = list(range(len(pool)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(pool)), 2):
        if pool[i].indices & pool[j].indices:
            parent[find(i)] = find(j)
    groups: dict[int, list[Face]] = {}
    for i, f in enumerate(pool):
        groups.setdefault(find(i), []).append(f)
    members = []
    for faces_ in groups.values():
        acc = faces_[0]
        for f in faces_[1:]:
            acc = intersect(acc, f)
        members.append(acc)
    return TransversalFamily(f1.n, tuple(members))


def refines(p1: SubPartition, p2: SubPartition) -> bool:
    """True iff every block of p1 is contained in some block of p2."""
    if p1.n != p2.n:
        raise MismatchedAmbient(f"{p1.n} != {p2.n}")
    blocks2 = [set(b) for b in p2.blocks]
    return all(any(set(b1) <= b2 for b2 in blocks2) for b1 in p1.blocks)


class FamilyKind(Enum):
    TRANSVERSAL = "transversal"
    COMPARABLE = "comparable"
    NCNT = "ncnt"


@dataclass(frozen=True)
class FamilyClassification:
    kind: FamilyKind
    # For COMPARABLE: which argument has the contained diagonal
    # (1 or 2; 0 when the families are equal).  None otherwise.
    contained: Optional[int] = None


def classify_families(f1: TransversalFamily, f2: TransversalFamily) -> FamilyClassification:
    """Classify a pair of multi-diagonals: transversal, comparable, or neither."""
    u = transversal_union(f1, f2)
    s1, s2, su = set(f1.members), set(f2.members), set(u.members)
    if s1 == s2:
        return FamilyClassification(FamilyKind.COMPARABLE, 0)
    if su == s1:
        # intersection of diagonals equals the first: it is the smaller one
        return FamilyClassification(FamilyKind.COMPARABLE, 1)
    if su == s2:
        return FamilyClassification(FamilyKind.COMPARABLE, 2)
    if su == s1 | s2:
        return FamilyClassification(FamilyKind.TRANSVERSAL)
    return FamilyClassification(FamilyKind.NCNT)


def oracle_diagonal_meet(f1: TransversalFamily, f2: TransversalFamily) -> SubPartition:
    """Independent oracle: equivalence closure of both block structures.

    Joins the equivalences generated on {1..n} by the blocks of both
    induced sub-partitions and keeps classes of size >= 2.
    """
    if f1.n != f2.n:
        raise MismatchedAmbient(f"{f1.n} != {f2.n}")
    parent = list(range(f1.n + 1))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for part in (diagonal_of(f1), diagonal_of(f2)):
        for block in part.blocks:
            for i in block[1:]:
                parent[find(block[0])] = find(i)
    classes: dict[int, list[int]] = {}
    for i in range(1, f1.n + 1):
        classes.setdefault(find(i), []).append(i)
    blocks = tuple(tuple(c) for c in classes.values() if len(c) >= 2)
    return SubPartition(f1.n, blocks)


def enumerate_families(
    n: int, labels: Iterable[str] = (DEFAULT_LABEL,)
) -> list[TransversalFamily]:
    """All transversal families over the codim >= 2 faces of the product."""
    from .faces import enumerate_faces

    pool = enumerate_faces(n, min_codim=2, labels=labels)
    out: list[TransversalFamily] = []
    for size in range(1, n // 2 + 1):
        for combo in itertools.combinations(pool, size):
            try:
                out.append(TransversalFamily(n, combo))
            except ValueError:
                continue
    return out
