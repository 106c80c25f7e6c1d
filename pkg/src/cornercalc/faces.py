"""Algebra of boundary faces of an n-fold product of a manifold with boundary.

A face pins a subset of the factors to boundary components: it is encoded
as a partial map from factor indices {1..n} to component labels.  With a
connected boundary there is a single label and a face is just an index
set; pinning more factors gives a deeper (smaller) face.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from . import _rel
from .errors import MismatchedAmbient

__all__ = [
    "DEFAULT_LABEL",
    "EMPTY",
    "Face",
    "Relation",
    "relation_of",
    "intersect",
    "dotplus",
    "enumerate_faces",
]

DEFAULT_LABEL = "b"


class Relation(Enum):
    """Trichotomy (plus disjoint/equal) of an ordered pair of submanifolds."""

    EQUAL = "equal"
    STRICTLY_SMALLER = "strictly_smaller"  # first contained in second
    STRICTLY_LARGER = "strictly_larger"
    TRANSVERSAL = "transversal"
    NCNT = "ncnt"  # neither comparable nor transversal
    DISJOINT = "disjoint"

    def swap(self) -> "Relation":
        if self is Relation.STRICTLY_SMALLER:
            return Relation.STRICTLY_LARGER
        if self is Relation.STRICTLY_LARGER:
            return Relation.STRICTLY_SMALLER
        return self

    @property
    def code(self) -> int:
        return _REL_TO_CODE[self]


_CODE_TO_REL = {
    _rel.EQUAL: Relation.EQUAL,
    _rel.SMALLER: Relation.STRICTLY_SMALLER,
    _rel.LARGER: Relation.STRICTLY_LARGER,
    _rel.TRANSVERSAL: Relation.TRANSVERSAL,
    _rel.NCNT: Relation.NCNT,
    _rel.DISJOINT: Relation.DISJOINT,
}
_REL_TO_CODE = {r: c for c, r in _CODE_TO_REL.items()}

relation_from_code = _CODE_TO_REL.__getitem__


class _Empty:
    """Sentinel for the empty intersection of faces."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EMPTY"


EMPTY = _Empty()


@dataclass(frozen=True)
class Face:
    """A boundary face: n factors, a partial index-to-label assignment."""

    n: int
    assignment: tuple[tuple[int, str], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        items = tuple(sorted(self.assignment))
        seen = set()
        for idx, label in items:
            if not 1 <= idx <= self.n:
                raise ValueError(f"index {idx} outside 1..{self.n}")
            if idx in seen:
                raise ValueError(f"duplicate index {idx}")
            seen.add(idx)
        object.__setattr__(self, "assignment", items)

    @classmethod
    def of(cls, n: int, indices: Iterable[int], label: str = DEFAULT_LABEL) -> "Face":
        return cls(n, tuple((i, label) for i in indices))

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, str]) -> "Face":
        return cls(n, tuple(mapping.items()))

    @property
    def indices(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.assignment)

    @property
    def codim(self) -> int:
        return len(self.assignment)

    @property
    def labels(self) -> dict[int, str]:
        return dict(self.assignment)

    @property
    def mask(self) -> int:
        """Bitmask of pinned indices (bit i-1 for index i)."""
        return sum(1 << (i - 1) for i, _ in self.assignment)

    def single_label(self) -> bool:
        return len({lab for _, lab in self.assignment}) <= 1

    def sort_key(self):
        """Canonical order: codimension descending, then lexicographic."""
        return (-self.codim, self.assignment)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "assignment": {str(i): lab for i, lab in self.assignment},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Face":
        return cls(
            int(data["n"]),
            tuple((int(i), lab) for i, lab in data["assignment"].items()),
        )

    def key(self) -> str:
        """Canonical string encoding, usable as a sort/lookup key."""
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __repr__(self):
        if self.single_label():
            idx = "".join(str(i) for i, _ in self.assignment)
            return f"Face({self.n}:{{{idx}}})" if idx else f"Face({self.n}:whole)"
        body = ",".join(f"{i}:{lab}" for i, lab in self.assignment)
        return f"Face({self.n}:{{{body}}})"


def _check_ambient(b1: Face, b2: Face) -> None:
    if b1.n != b2.n:
        raise MismatchedAmbient(f"{b1.n} != {b2.n}")


def _label_conflict(b1: Face, b2: Face) -> bool:
    d1, d2 = b1.labels, b2.labels
    return any(d1[i] != d2[i] for i in b1.indices & b2.indices)


def relation_of(b1: Face, b2: Face) -> Relation:
    """Static relation of two faces of the same product."""
    _check_ambient(b1, b2)
    if _label_conflict(b1, b2):
        return Relation.DISJOINT
    return relation_from_code(_rel.relation_code(b1.mask, b2.mask))


def intersect(b1: Face, b2: Face):
    """Intersection face (union of assignments), or EMPTY on label conflict."""
    _check_ambient(b1, b2)
    if _label_conflict(b1, b2):
        return EMPTY
    merged = dict(b1.assignment)
    merged.update(b2.assignment)
    return Face.from_mapping(b1.n, merged)


def dotplus(b1: Face, b2: Face) -> Face:
    """Smallest common face containing both: agreeing part of the assignments."""
    _check_ambient(b1, b2)
    if _label_conflict(b1, b2):
        raise ValueError("dotplus undefined for disjoint faces")
    d2 = b2.labels
    common = tuple(
        (i, lab) for i, lab in b1.assignment if i in d2 and d2[i] == lab
    )
    return Face(b1.n, common)


def enumerate_faces(
    n: int,
    min_codim: int = 0,
    labels: Iterable[str] = (DEFAULT_LABEL,),
) -> list[Face]:
    """All faces of codimension >= min_codim, in canonical order."""
    if n < 1:
        raise ValueError("n must be positive")
    labels = tuple(labels)
    out: list[Face] = []
    for subset_size in range(max(min_codim, 0), n + 1):
        for idxs in itertools.combinations(range(1, n + 1), subset_size):
            for labs in itertools.product(labels, repeat=subset_size):
                out.append(Face(n, tuple(zip(idxs, labs))))
    out.sort(key=Face.sort_key)
    return out
