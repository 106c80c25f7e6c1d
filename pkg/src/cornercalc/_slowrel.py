"""Pure-Python relation kernel on index bitmasks (connected-boundary case).

A boundary face of the n-fold product with connected boundary is just the
set of factors pinned to the boundary, encoded as a bitmask.  This module
implements the static pair trichotomy and the single blow-up transition
rule on raw masks.  cornercalc._fastrel is the compiled twin with the same
API; cornercalc._rel selects whichever is available.

Relation codes:
    0 equal, 1 strictly smaller (first face inside second), 2 strictly
    larger, 3 transversal, 4 neither comparable nor transversal, 5 disjoint.
"""

EQUAL = 0
SMALLER = 1
LARGER = 2
TRANSVERSAL = 3
NCNT = 4
DISJOINT = 5

IMPLEMENTATION = "python"


def relation_code(m1: int, m2: int) -> int:
    """Static relation of the faces with pinned-index masks m1, m2.

    A larger index set pins more factors, hence a smaller face.
    """
    if m1 == m2:
        return EQUAL
    if m1 & m2 == m2:  # m1 is a strict superset: first face is smaller
        return SMALLER
    if m1 & m2 == m1:
        return LARGER
    if m1 & m2 == 0:
        return TRANSVERSAL
    return NCNT


def transition_code(m1: int, m2: int, mc: int) -> int:
    """Relation of the lifts of two distinct faces after blowing up a third.

    m1, m2 are the tracked faces, mc the center; all three distinct.  The
    rule is the case split of the lift lemma, phrased on index masks:
    containment of faces reverses index-set containment, and the smallest
    face containing both has mask m1 & m2.
    """
    r12 = relation_code(m1, m2)
    if r12 == EQUAL:
        raise ValueError("faces must be distinct")
    b1_in_c = mc | m1 == m1  # face 1 inside the center
    b2_in_c = mc | m2 == m2
    meet_in_c = mc & ~(m1 | m2) == 0  # intersection face inside the center

    if r12 == TRANSVERSAL:
        if meet_in_c and not b1_in_c and not b2_in_c:
            return DISJOINT
        return TRANSVERSAL

    if r12 == LARGER:
        swapped = transition_code(m2, m1, mc)
        if swapped == SMALLER:
            return LARGER
        if swapped == LARGER:
            return SMALLER
        return swapped

    if r12 == SMALLER:
        # face 1 inside face 2 (m1 strict superset of m2)
        c_trans_b2 = mc & m2 == 0
        c_in_b2 = m2 & ~mc == 0 and mc != m2  # center strictly inside face 2
        if (not b1_in_c) or (b1_in_c and c_trans_b2) or b2_in_c:
            return SMALLER
        if b1_in_c and c_in_b2:
            return TRANSVERSAL
        return NCNT

    # r12 == NCNT
    if meet_in_c and not b1_in_c and not b2_in_c:
        return DISJOINT
    dp = m1 & m2  # smallest face containing both
    dp_strict = dp & ~mc == 0 and mc != dp  # center strictly inside it
    if (b1_in_c or b2_in_c) and dp_strict:
        return TRANSVERSAL
    return NCNT
