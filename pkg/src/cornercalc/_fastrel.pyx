# cython: boundscheck=False, wraparound=False
"""Compiled relation kernel on index bitmasks (connected-boundary case).

Twin of cornercalc._slowrel with the same API; see that module for the
meaning of the codes and masks.
"""

cdef int EQUAL_C = 0
cdef int SMALLER_C = 1
cdef int LARGER_C = 2
cdef int TRANSVERSAL_C = 3
cdef int NCNT_C = 4
cdef int DISJOINT_C = 5

EQUAL = 0
SMALLER = 1
LARGER = 2
TRANSVERSAL = 3
NCNT = 4
DISJOINT = 5

IMPLEMENTATION = "cython"


cdef int _relation(unsigned long m1, unsigned long m2) nogil:
    if m1 == m2:
        return EQUAL_C
    if (m1 & m2) == m2:
        return SMALLER_C
    if (m1 & m2) == m1:
        return LARGER_C
    if (m1 & m2) == 0:
        return TRANSVERSAL_C
    return NCNT_C


cdef int _transition(unsigned long m1, unsigned long m2, unsigned long mc) nogil:
    cdef int r12 = _relation(m1, m2)
    cdef bint b1_in_c, b2_in_c, meet_in_c, c_trans_b2, c_in_b2, dp_strict
    cdef unsigned long dp
    cdef int swapped
    if r12 == EQUAL_C:
        return -1
    b1_in_c = (mc | m1) == m1
    b2_in_c = (mc | m2) == m2
    meet_in_c = (mc & ~(m1 | m2)) == 0

    if r12 == TRANSVERSAL_C:
        if meet_in_c and not b1_in_c and not b2_in_c:
            return DISJOINT_C
        return TRANSVERSAL_C

    if r12 == LARGER_C:
        swapped = _transition(m2, m1, mc)
        if swapped == SMALLER_C:
            return LARGER_C
        if swapped == LARGER_C:
            return SMALLER_C
        return swapped

    if r12 == SMALLER_C:
        c_trans_b2 = (mc & m2) == 0
        c_in_b2 = (m2 & ~mc) == 0 and mc != m2
        if (not b1_in_c) or (b1_in_c and c_trans_b2) or b2_in_c:
            return SMALLER_C
        if b1_in_c and c_in_b2:
            return TRANSVERSAL_C
        return NCNT_C

    if meet_in_c and not b1_in_c and not b2_in_c:
        return DISJOINT_C
    dp = m1 & m2
    dp_strict = (dp & ~mc) == 0 and mc != dp
    if (b1_in_c or b2_in_c) and dp_strict:
        return TRANSVERSAL_C
    return NCNT_C


def relation_code(m1, m2):
    """Static relation of the faces with pinned-index masks m1, m2."""
    return _relation(<unsigned long> m1, <unsigned long> m2)


def transition_code(m1, m2, mc):
    """Relation of the lifts of two distinct faces after blowing a third."""
    cdef int out = _transition(<unsigned long> m1, <unsigned long> m2,
                               <unsigned long> mc)
    if out < 0:
        raise ValueError("faces must be distinct")
    return out


def sweep_triples(masks):
    """Histogram of transition codes over all ordered distinct triples.

    Used by the benchmark; returns a 6-entry list of counts so both
    kernels can be compared for speed and for agreement.
    """
    cdef list ms = list(masks)
    cdef Py_ssize_t k = len(ms), i, j, c
    cdef unsigned long[64] buf
    cdef long[6] hist
    if k > 64:
        raise ValueError("at most 64 masks")
    for i in range(k):
        buf[i] = <unsigned long> ms[i]
    for i in range(6):
        hist[i] = 0
    with nogil:
        for i in range(k):
            for j in range(k):
                if j == i:
                    continue
                for c in range(k):
                    if c == i or c == j:
                        continue
                    hist[_transition(buf[i], buf[j], buf[c])] += 1
    return [hist[i] for i in range(6)]
