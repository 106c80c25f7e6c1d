"""High-level constructors for the stretched products and face descriptors.

build_bo blows up every boundary face of codimension >= 2 in size-order;
build_scat continues with every boundary diagonal in the canonical
chain-order.  describe_lifted_face gives the symbolic product structure
of a lifted face (boundary powers, fractional spheres, blown-up factors).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import engine
from .boundary_diagonals import BoundaryDiagonal, HCollection, generate_all
from .diagonals import TransversalFamily
from .errors import NotClosed, UnresolvedRelation
from .faces import DEFAULT_LABEL, EMPTY, Face, Relation, intersect, relation_of
from .orders import FaceCollection, is_closed_nt, size_order

__all__ = [
    "FaceDescriptor",
    "build_bo",
    "build_ob",
    "build_scat",
    "bo_centers",
    "scat_centers",
    "permute",
    "apply_sigma_face",
    "apply_sigma_diag",
    "describe_lifted_face",
]


def bo_centers(n: int, labels: Sequence[str] = (DEFAULT_LABEL,)) -> list[Face]:
    """Single-component faces of codim >= 2 (constant label), size-ordered."""
    out = []
    for lab in labels:
        for size in range(2, n + 1):
            for idxs in itertools.combinations(range(1, n + 1), size):
                out.append(Face.of(n, idxs, lab))
    return list(size_order(out, n).faces)


def build_bo(n: int, labels: Sequence[str] = (DEFAULT_LABEL,)) -> engine.BlowupState:
    """Blow up all single-component boundary faces in size-order."""
    if n < 2:
        raise ValueError("n must be at least 2")
    centers = bo_centers(n, labels)
    state = engine.init(n, centers, labels=labels)
    for f in centers:
        cid = state.find_face(f)
        # equal-codimension centers must already be pairwise separated
        for g in centers:
            if g != f and g.codim == f.codim:
                gid = state.find_face(g)
                if gid not in state.blown and state.relation(cid, gid) not in (
                    Relation.DISJOINT,
                    Relation.TRANSVERSAL,
                ):
                    raise UnresolvedRelation(
                        f"equal-codimension centers {f} and {g} not separated"
                    )
        state = engine.blow_up(state, cid)
    return state


def build_ob(n: int, labels: Sequence[str] = (DEFAULT_LABEL,)) -> engine.BlowupState:
    """Blow up ALL codim >= 2 faces (mixed labels) in size-order."""
    if len(labels) < 2:
        return build_bo(n, labels)
    from .faces import enumerate_faces

    centers = list(size_order(enumerate_faces(n, 2, labels), n).faces)
    state = engine.init(n, centers, labels=labels)
    for f in centers:
        state = engine.blow_up(state, state.find_face(f))
    return state


def scat_centers(n: int) -> tuple[list[Face], list[BoundaryDiagonal]]:
    faces = bo_centers(n)
    context = FaceCollection(n, tuple(faces))
    return faces, list(generate_all(context).items)


def build_scat(n: int) -> engine.BlowupState:
    """The scattering-stretched product: faces, then diagonals in chain-order."""
    if n < 2:
        raise ValueError("n must be at least 2")
    faces, diags = scat_centers(n)
    state = engine.init(n, faces, diags)
    for f in faces:
        state = engine.blow_up(state, state.find_face(f))
    for h in diags:
        state = engine.blow_up(state, state.find_diag(h))
    return state


def apply_sigma_face(sigma: dict, face: Face) -> Face:
    return Face(face.n, tuple((sigma[i], lab) for i, lab in face.assignment))


def apply_sigma_diag(sigma: dict, diag: BoundaryDiagonal) -> BoundaryDiagonal:
    fam = TransversalFamily(
        diag.n, tuple(apply_sigma_face(sigma, f) for f in diag.family.members)
    )
    return BoundaryDiagonal(apply_sigma_face(sigma, diag.hull), fam)


def permute(state: engine.BlowupState, sigma: dict) -> engine.BlowupState:
    """Rebuild the state with every tracked item relabeled by sigma, blowing
    the relabeled centers in the order induced by the original history."""
    faces = [
        apply_sigma_face(sigma, t.face)
        for t in state.tracked
        if t.kind == "face"
    ]
    diags = [
        apply_sigma_diag(sigma, t.diag)
        for t in state.tracked
        if t.kind == "diag"
    ]
    out = engine.init(state.n, faces, diags, labels=state.labels)
    for cid in state.history:
        t = state.by_id(cid)
        if t.kind == "face":
            out = engine.blow_up(out, out.find_face(apply_sigma_face(sigma, t.face)))
        else:
            out = engine.blow_up(out, out.find_diag(apply_sigma_diag(sigma, t.diag)))
    return out


# --------------------------------------------------------------------------
# symbolic descriptors of lifted faces


@dataclass(frozen=True)
class FaceDescriptor:
    """Symbolic product decomposition of a lifted boundary face.

    Atoms: ("boundary_power", c); ("fractional_sphere", dim, traces);
    ("product", base, traces) where base names a (possibly blown-up)
    factor and traces is a tuple of index frozensets labelling the
    blow-ups performed inside that factor.
    """

    factors: tuple

    def to_json(self) -> list:
        out = []
        for atom in self.factors:
            kind = atom[0]
            if kind == "boundary_power":
                out.append({"kind": kind, "power": atom[1]})
            elif kind == "fractional_sphere":
                out.append(
                    {
                        "kind": kind,
                        "dim": atom[1],
                        "blown": [sorted(s) for s in atom[2]],
                    }
                )
            else:
                out.append(
                    {
                        "kind": kind,
                        "base": atom[1],
                        "blown": [sorted(s) for s in atom[2]],
                    }
                )
        return out


def _traces(faces: Iterable[Face]) -> tuple:
    return tuple(sorted((frozenset(f.indices) for f in faces), key=sorted))


def describe_lifted_face(n: int, context: FaceCollection, b: Face) -> FaceDescriptor:
    """Product structure of the lift of face b after blowing up the context."""
    if not is_closed_nt(context):
        raise NotClosed("context not closed under non-transversal intersection")
    members = list(context.faces)
    smaller = [f for f in members if relation_of(f, b) is Relation.STRICTLY_SMALLER]
    bigger = [f for f in members if relation_of(f, b) is Relation.STRICTLY_LARGER]
    sm_traces = tuple(
        sorted((frozenset(f.indices - b.indices) for f in smaller), key=sorted)
    )
    if b in context:
        c = b.codim
        return FaceDescriptor(
            (
                ("boundary_power", c),
                ("fractional_sphere", c - 1, _traces(bigger)),
                ("product", f"X^{n - c}", sm_traces),
            )
        )
    if bigger:
        minimal = [
            a for a in bigger
            if not any(
                a2 is not a
                and relation_of(a2, a) is Relation.STRICTLY_SMALLER
                for a2 in bigger
            )
        ]
        for a1, a2 in itertools.combinations(minimal, 2):
            if relation_of(a1, a2) is not Relation.TRANSVERSAL:
                raise NotClosed("minimal containing faces must be transversal")
        spheres = tuple(
            (
                "fractional_sphere",
                a.codim - 1,
                _traces(
                    f for f in bigger
                    if relation_of(f, a) is Relation.STRICTLY_SMALLER
                ),
            )
            for a in sorted(minimal, key=Face.sort_key)
        )
        return FaceDescriptor((("product", "B", sm_traces),) + spheres)
    # nothing in the context contains b: only traces cut out by intersections
    traces = set()
    for g in members:
        meet = intersect(g, b)
        if meet is EMPTY or meet == b:
            continue
        traces.add(frozenset(meet.indices))
    return FaceDescriptor(
        (("product", "B", tuple(sorted(traces, key=sorted))),)
    )
