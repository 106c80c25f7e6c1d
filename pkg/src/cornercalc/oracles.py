"""Independent brute-force oracles used for cross-validation.

These deliberately avoid the statement-level rule tables: the lift oracle
follows the local-coordinate bookkeeping of the single blow-up (front-face
defining function rho, projective coordinates t_j summing to 1 on the
front face, surviving boundary functions x_j), and the diagonal oracle
works with literal solution sets of tuples over a small model set.
"""

from __future__ import annotations

import itertools

from .diagonals import SubPartition
from .faces import Face, Relation

__all__ = [
    "lift_symbols",
    "lift_relation_oracle",
    "tuple_diagonal",
    "diagonal_leq_oracle",
]


def lift_symbols(face_mask: int, center_mask: int) -> frozenset:
    """Defining functions of the lift of a face after blowing the center.

    If the face lies inside the center, its lift is the full preimage:
    the front face equation rho plus the leftover boundary functions.
    Otherwise the proper transform: the t-coordinates of the shared
    indices plus the untouched boundary functions.
    """
    if center_mask & ~face_mask == 0:  # face inside center
        sym = {("rho",)}
        rest = face_mask & ~center_mask
    else:
        sym = set()
        shared = face_mask & center_mask
        sym |= {("t", j) for j in _bits(shared)}
        rest = face_mask & ~center_mask
    sym |= {("x", j) for j in _bits(rest)}
    return frozenset(sym)


def _bits(mask: int):
    j = 1
    while mask:
        if mask & 1:
            yield j
        mask >>= 1
        j += 1


def lift_relation_oracle(m1: int, m2: int, mc: int) -> Relation:
    """Relation of the lifts of two faces after blowing a third, computed
    from the coordinate symbol sets alone."""
    s1 = lift_symbols(m1, mc)
    s2 = lift_symbols(m2, mc)
    # the t_j sum to 1 on the front face: if the union of constraints kills
    # every t_j of the center, the sets cannot meet
    tset = {j for s in s1 | s2 if s[0] == "t" for j in [s[1]]}
    if set(_bits(mc)) <= tset:
        return Relation.DISJOINT
    if s1 == s2:
        return Relation.EQUAL
    if s1 > s2:
        return Relation.STRICTLY_SMALLER
    if s2 > s1:
        return Relation.STRICTLY_LARGER
    if not s1 & s2:
        return Relation.TRANSVERSAL
    return Relation.NCNT


def tuple_diagonal(p: SubPartition, model: int = 3) -> frozenset:
    """Solution set of the multi-diagonal over a finite model set: all
    tuples in model^n constant on each block."""
    out = []
    for tup in itertools.product(range(model), repeat=p.n):
        ok = True
        for block in p.blocks:
            vals = {tup[i - 1] for i in block}
            if len(vals) != 1:
                ok = False
                break
        if ok:
            out.append(tup)
    return frozenset(out)


def diagonal_leq_oracle(p1: SubPartition, p2: SubPartition) -> bool:
    """True iff the diagonal of p1 is contained in the diagonal of p2,
    decided on literal tuple solution sets (3 model points suffice to
    separate any two sub-partitions)."""
    return tuple_diagonal(p1) <= tuple_diagonal(p2)
