"""Exception types shared across the package."""

__all__ = [
    "CornercalcError",
    "MismatchedAmbient",
    "NotClosed",
    "NotIntersectionOrder",
    "InvalidTracked",
    "IncoherentTriple",
    "IllegalCenter",
    "UnresolvedRelation",
    "EmptyMeet",
    "CertificateFailure",
    "NormalityViolation",
]


class CornercalcError(Exception):
    """Base class for all package-specific errors."""


class MismatchedAmbient(CornercalcError, ValueError):
    """Two objects live in products with a different number of factors."""


class NotClosed(CornercalcError, ValueError):
    """A face collection is not closed under non-transversal intersection."""


class NotIntersectionOrder(CornercalcError, ValueError):
    """An ordered collection violates the intersection-order condition."""


class InvalidTracked(CornercalcError, ValueError):
    """A tracked submanifold is malformed, duplicated, or out of ambient."""


class IncoherentTriple(CornercalcError, ValueError):
    """Relation inputs to the transition rule cannot co-occur."""


class IllegalCenter(CornercalcError, ValueError):
    """A blow-up center fails a legality hypothesis; the message names it."""


class UnresolvedRelation(CornercalcError, RuntimeError):
    """No rule determines a pair's new relation; conservative refusal."""


class EmptyMeet(CornercalcError, ValueError):
    """The meet of two boundary diagonals is empty (label conflict)."""


class CertificateFailure(CornercalcError, RuntimeError):
    """A certificate move is not justifiable; the message names the move."""


class NormalityViolation(CornercalcError, RuntimeError):
    """A hypersurface maps into a corner of positive codimension >= 2."""
