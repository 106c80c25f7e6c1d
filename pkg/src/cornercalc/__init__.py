"""cornercalc: combinatorial calculus of iterated boundary blow-up.

Symbolic engine and CLI for the boundary-face structure of iterated
blow-ups of products of a manifold with boundary: face and partition
algebra, blow-up schedule validation, a replayable relation-matrix state
machine, and machine-checkable blow-down certificates for the stretched
projections, cross-validated by brute-force oracles at small n.
"""

__version__ = "0.1.0"

from ._rel import USING_COMPILED
from .faces import Face, Relation

__all__ = ["Face", "Relation", "USING_COMPILED", "__version__"]
