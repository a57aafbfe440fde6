"""Structural flags: matroid, cone, Gorenstein, q-CM levels."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations

from . import _bits
from .cm import is_cm_hochster, q_max
from .complex import SimplicialComplex, cone_apexes_mask, core, link_mask
from .homology import FieldLike, FieldSpec, as_field, reduced_betti
from .resolution import minimal_nonfaces_masks


def _is_pure_induced(delta: SimplicialComplex, w: int) -> bool:
    parts = _bits.maximal(f & w for f in delta.facet_masks)
    return len({_bits.popcount(p) for p in parts}) == 1


def matroid_witness(delta: SimplicialComplex) -> tuple | None:
    """Smallest vertex set (cardinality, then lex) inducing an impure
    subcomplex, or ``None`` for a matroid complex."""
    for w in _bits.canonical_subsets(delta.n):
        if w and not _is_pure_induced(delta, w):
            return delta.labels_of(w)
    return None


def is_matroid(delta: SimplicialComplex) -> bool:
    """Every induced subcomplex (the whole complex included) is pure."""
    return matroid_witness(delta) is None


def circuit_axiom_check(delta: SimplicialComplex) -> bool:
    """Circuit elimination on the minimal non-faces.

    For distinct minimal non-faces ``N1``, ``N2`` sharing a vertex ``v``,
    ``(N1 | N2) - v`` must contain a non-face.
    """
    circuits = minimal_nonfaces_masks(delta)
    for a, b in combinations(circuits, 2):
        shared = a & b
        for v in _bits.iter_bits(shared):
            if delta.is_face_mask((a | b) & ~(1 << v)):
                return False
    return True


def is_gorenstein_star(delta: SimplicialComplex, field: FieldLike = 0) -> bool:
    """Every link (the complex itself included) is a homology sphere of its
    own dimension over the field."""
    fs = as_field(field)
    for group in delta.face_masks:
        for face in group:
            lk = link_mask(delta, face)
            bv = reduced_betti(lk, fs)
            expected = [0] * len(bv)
            expected[-1] = 1
            if list(bv) != expected:
                return False
    return True


def is_gorenstein(delta: SimplicialComplex, field: FieldLike = 0) -> bool:
    """Join of a simplex with a Gorenstein* complex."""
    return is_gorenstein_star(core(delta), field)


def is_cone(delta: SimplicialComplex) -> bool:
    return cone_apexes_mask(delta) != 0


@dataclass(frozen=True)
class ClassificationFlags:
    field: FieldSpec
    is_pure: bool
    is_cone: bool
    is_matroid: bool
    is_cm: bool
    q_max: int | None
    is_2cm: bool
    is_dcm: bool
    is_gorenstein: bool
    is_gorenstein_star: bool

    def to_doc(self) -> dict:
        doc = asdict(self)
        doc["field"] = self.field.characteristic
        return doc


def classify(delta: SimplicialComplex, field: FieldLike = 0) -> ClassificationFlags:
    fs = as_field(field)
    cm = is_cm_hochster(delta, fs)
    q = q_max(delta, fs) if cm else None
    return ClassificationFlags(
        field=fs,
        is_pure=delta.is_pure,
        is_cone=is_cone(delta),
        is_matroid=is_matroid(delta),
        is_cm=cm,
        q_max=q,
        is_2cm=bool(q and q >= 2),
        is_dcm=bool(q and q >= delta.d),
        is_gorenstein=is_gorenstein(delta, fs),
        is_gorenstein_star=is_gorenstein_star(delta, fs),
    )
