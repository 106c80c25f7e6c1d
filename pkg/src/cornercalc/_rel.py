"""Kernel selector: compiled mask kernel if built, pure-Python otherwise.

Both kernels expose relation_code / transition_code with identical codes;
USING_COMPILED records which one is active.  _slowrel additionally gets a
sweep_triples wrapper here so the benchmark can compare like with like.
"""

from . import _slowrel

try:  # pragma: no cover - exercised only when the extension is built
    from . import _fastrel as kernel

    USING_COMPILED = True
except ImportError:  # pragma: no cover
    kernel = _slowrel
    USING_COMPILED = False

EQUAL = _slowrel.EQUAL
SMALLER = _slowrel.SMALLER
LARGER = _slowrel.LARGER
TRANSVERSAL = _slowrel.TRANSVERSAL
NCNT = _slowrel.NCNT
DISJOINT = _slowrel.DISJOINT

relation_code = kernel.relation_code
transition_code = kernel.transition_code


def sweep_triples_python(masks):
    """Pure-Python counterpart of _fastrel.sweep_triples."""
    hist = [0] * 6
    trans = _slowrel.transition_code
    k = len(masks)
    for i in range(k):
        for j in range(k):
            if j == i:
                continue
            for c in range(k):
                if c == i or c == j:
                    continue
                hist[trans(masks[i], masks[j], masks[c])] += 1
    return hist


def sweep_triples(masks):
    """Histogram of transition codes over ordered distinct triples."""
    if USING_COMPILED:
        return kernel.sweep_triples(masks)
    return sweep_triples_python(masks)
