"""Simplicial complexes given by their facets.

Vertices are stored internally as dense indices ``0..n-1`` and faces as
integer bitmasks; the original labels are kept in index order so that every
public function speaks in terms of labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Hashable, Iterable, Sequence

from . import _bits
from .errors import (
    DimensionOutOfRange,
    EmptyInput,
    EmptySelection,
    NotAFace,
    TooManyVertices,
    UnknownVertex,
)

MAX_VERTICES = 63
# Analyses enumerating all 2^n vertex subsets are only practical up to here.
PRACTICAL_VERTICES = 24


def _label_order(labels: Iterable[Hashable]) -> list:
    seen: dict = {}
    for lab in labels:
        seen.setdefault(lab, None)
    order = list(seen)
    try:
        return sorted(order)
    except TypeError:
        return order


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite abstract simplicial complex.

    ``facets`` holds bitmasks over ``range(n)`` in canonical order
    (cardinality, then lexicographic on the sorted index tuple).  Build
    instances with :func:`from_facets`; the constructor expects data that is
    already normalized.
    """

    n: int
    facet_masks: tuple[int, ...]
    labels: tuple

    # -- basic shape -------------------------------------------------------

    @property
    def dim(self) -> int:
        return max(_bits.popcount(f) for f in self.facet_masks) - 1

    @property
    def d(self) -> int:
        """Krull dimension of the face ring, ``dim + 1``."""
        return self.dim + 1

    @property
    def codim(self) -> int:
        return self.n - self.d

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def facets(self) -> list[tuple]:
        return [self.labels_of(f) for f in self.facet_masks]

    @property
    def is_pure(self) -> bool:
        return len({_bits.popcount(f) for f in self.facet_masks}) == 1

    @property
    def is_irrelevant(self) -> bool:
        """True for the complex {emptyset}."""
        return self.n == 0

    @property
    def is_simplex(self) -> bool:
        return len(self.facet_masks) == 1 and self.facet_masks[0] == self.vertex_mask

    # -- label <-> mask ----------------------------------------------------

    @cached_property
    def _index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def mask_of(self, labels: Iterable[Hashable]) -> int:
        mask = 0
        for lab in labels:
            try:
                mask |= 1 << self._index[lab]
            except KeyError:
                raise UnknownVertex(f"{lab!r} is not a vertex") from None
        return mask

    def labels_of(self, mask: int) -> tuple:
        return tuple(self.labels[i] for i in _bits.iter_bits(mask))

    # -- faces -------------------------------------------------------------

    @cached_property
    def face_masks(self) -> tuple[tuple[int, ...], ...]:
        """Faces grouped by dimension: entry ``k+1`` lists the k-faces."""
        seen: set[int] = set()
        for f in self.facet_masks:
            seen.update(_bits.submasks(f))
        by_dim: list[list[int]] = [[] for _ in range(self.dim + 2)]
        for m in seen:
            by_dim[_bits.popcount(m)].append(m)
        return tuple(tuple(sorted(group, key=_bits.bits)) for group in by_dim)

    @cached_property
    def face_set(self) -> frozenset[int]:
        return frozenset(m for group in self.face_masks for m in group)

    def is_face_mask(self, mask: int) -> bool:
        return any(mask & ~f == 0 for f in self.facet_masks)

    def faces_masks(self, k: int) -> tuple[int, ...]:
        if not -1 <= k <= self.dim:
            raise DimensionOutOfRange(f"k={k} outside [-1, {self.dim}]")
        return self.face_masks[k + 1]

    def __repr__(self) -> str:
        return f"SimplicialComplex(n={self.n}, facets={self.facets})"


# -- construction ---------------------------------------------------------


def _normalize(masks: Iterable[int], labels: Sequence) -> SimplicialComplex:
    facets = _bits.maximal(masks)
    used = 0
    for f in facets:
        used |= f
    if used != (1 << len(labels)) - 1:
        # drop phantom vertices and re-index densely, keeping label order
        keep = _bits.bits(used)
        remap = {old: new for new, old in enumerate(keep)}
        facets = [
            _bits.from_indices(remap[i] for i in _bits.iter_bits(f)) for f in facets
        ]
        labels = [labels[i] for i in keep]
    if len(labels) > MAX_VERTICES:
        raise TooManyVertices(f"{len(labels)} vertices exceeds the cap of {MAX_VERTICES}")
    facets.sort(key=_bits.canonical_key)
    return SimplicialComplex(len(labels), tuple(facets), tuple(labels))


def from_facets(
    facet_label_lists: Iterable[Iterable[Hashable]],
    labels: Sequence[Hashable] | None = None,
) -> SimplicialComplex:
    """Build a complex from facet label lists.

    Labels are indexed in sorted order when they are mutually comparable and
    in order of first appearance otherwise; an explicit ``labels`` sequence
    overrides both.  Non-maximal and duplicate facets are dropped.

    >>> from_facets([[1, 2], [1], [3]]).facets
    [(3,), (1, 2)]
    """
    facet_lists = [list(f) for f in facet_label_lists]
    if not facet_lists:
        raise EmptyInput("a complex needs at least one facet")
    if labels is None:
        order = _label_order(lab for f in facet_lists for lab in f)
    else:
        order = list(labels)
        missing = {lab for f in facet_lists for lab in f} - set(order)
        if missing:
            raise UnknownVertex(f"labels {sorted(map(repr, missing))} not declared")
    index = {lab: i for i, lab in enumerate(order)}
    masks = [_bits.from_indices(index[lab] for lab in f) for f in facet_lists]
    return _normalize(masks, order)


def _from_masks(delta: SimplicialComplex, masks: Iterable[int]) -> SimplicialComplex:
    """Subcomplex of ``delta`` generated by ``masks`` (labels carried over)."""
    return _normalize(list(masks), delta.labels)


def irrelevant_complex() -> SimplicialComplex:
    return SimplicialComplex(0, (0,), ())


# -- combinatorics ----------------------------------------------------------


def faces(delta: SimplicialComplex, k: int) -> list[tuple]:
    """All k-dimensional faces as label tuples, in canonical order."""
    return [delta.labels_of(m) for m in delta.faces_masks(k)]


def f_vector(delta: SimplicialComplex) -> tuple[int, ...]:
    """``(f_{-1}, f_0, ..., f_{d-1})``."""
    return tuple(len(group) for group in delta.face_masks)


def h_vector(delta: SimplicialComplex) -> tuple[int, ...]:
    """``(h_0, ..., h_d)`` from the f-vector."""
    f = f_vector(delta)
    d = delta.d
    return tuple(
        sum((-1) ** (i - j) * comb(d - j, d - i) * f[j] for j in range(i + 1))
        for i in range(d + 1)
    )


def euler_characteristic(delta: SimplicialComplex, reduced: bool = False) -> int:
    """Unreduced ``sum_{i>=0} (-1)^i f_i``; pass ``reduced=True`` to subtract 1."""
    f = f_vector(delta)
    chi = sum((-1) ** i * f[i + 1] for i in range(delta.dim + 1))
    return chi - 1 if reduced else chi


def induced_mask(delta: SimplicialComplex, w: int) -> SimplicialComplex:
    if w == 0:
        raise EmptySelection("induced subcomplex on the empty set")
    return _from_masks(delta, (f & w for f in delta.facet_masks))


def induced(delta: SimplicialComplex, vertices: Iterable[Hashable]) -> SimplicialComplex:
    """Induced subcomplex on the given vertex labels."""
    return induced_mask(delta, delta.mask_of(vertices))


def delete_vertices(delta: SimplicialComplex, vertices: Iterable[Hashable]) -> SimplicialComplex:
    return induced_mask(delta, delta.vertex_mask & ~delta.mask_of(vertices))


def skeleton(delta: SimplicialComplex, i: int) -> SimplicialComplex:
    """All faces of dimension at most ``i``."""
    if not 0 <= i <= delta.dim:
        raise DimensionOutOfRange(f"skeleton index {i} outside [0, {delta.dim}]")
    size = i + 1
    masks: list[int] = []
    for f in delta.facet_masks:
        if _bits.popcount(f) <= size:
            masks.append(f)
        else:
            masks.extend(_bits.from_indices(c) for c in combinations(_bits.bits(f), size))
    return _from_masks(delta, masks)


def link_mask(delta: SimplicialComplex, face: int) -> SimplicialComplex:
    if not delta.is_face_mask(face):
        raise NotAFace(f"{delta.labels_of(face)} is not a face")
    parts = [f & ~face for f in delta.facet_masks if face & ~f == 0]
    if all(p == 0 for p in parts):
        return irrelevant_complex()
    return _from_masks(delta, parts)


def link(delta: SimplicialComplex, face: Iterable[Hashable]) -> SimplicialComplex:
    """``lk F = {G : G and F disjoint, G u F a face}``."""
    return link_mask(delta, delta.mask_of(face))


def join(first: SimplicialComplex, second: SimplicialComplex) -> SimplicialComplex:
    """Join on disjoint vertex sets.

    If the label sets overlap, labels become ``(1, label)`` and ``(2, label)``.
    """
    if set(first.labels) & set(second.labels):
        labels = [(1, lab) for lab in first.labels] + [(2, lab) for lab in second.labels]
    else:
        labels = list(first.labels) + list(second.labels)
    shift = first.n
    masks = [a | (b << shift) for a in first.facet_masks for b in second.facet_masks]
    return _normalize(masks, labels)


def cone_apexes_mask(delta: SimplicialComplex) -> int:
    common = delta.vertex_mask
    for f in delta.facet_masks:
        common &= f
    return common


def cone_apexes(delta: SimplicialComplex) -> tuple:
    """Vertices lying in every facet."""
    return delta.labels_of(cone_apexes_mask(delta))


def core(delta: SimplicialComplex) -> SimplicialComplex:
    """Delete every cone apex; a simplex has core {emptyset}."""
    apexes = cone_apexes_mask(delta)
    if apexes == delta.vertex_mask:
        return irrelevant_complex()
    if apexes == 0:
        return delta
    return induced_mask(delta, delta.vertex_mask & ~apexes)
