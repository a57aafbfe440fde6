"""Reduced simplicial homology over a prime field or the rationals.

Two rank routines live here.  :func:`rank` is plain dense Gaussian
elimination over a :class:`FieldMatrix` and serves as the reference.
:func:`chain_ranks` works straight on face bitmasks with sparse column
reduction and is the one the Betti-table code runs 2^n times.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

from . import _bits
from .complex import SimplicialComplex
from .errors import DimensionOutOfRange, FaceRingError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: ``characteristic`` is 0 (the rationals) or a prime."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or (c != 0 and not _is_prime(c)):
            raise FaceRingError(f"characteristic must be 0 or a prime, got {c!r}")

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def reduce(self, x):
        if self.characteristic:
            return int(x) % self.characteristic
        return Fraction(x)


FieldLike = Union[FieldSpec, int]


def as_field(field: FieldLike) -> FieldSpec:
    return field if isinstance(field, FieldSpec) else FieldSpec(field)


@dataclass
class FieldMatrix:
    rows: int
    cols: int
    entries: list[list]
    field: FieldSpec

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise FaceRingError("entry storage does not match the declared shape")
        self.entries = [[self.field.reduce(x) for x in row] for row in self.entries]

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldLike) -> "FieldMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)], as_field(field))

    @classmethod
    def identity(cls, size: int, field: FieldLike) -> "FieldMatrix":
        m = cls.zeros(size, size, field)
        for i in range(size):
            m.entries[i][i] = m.field.reduce(1)
        return m


def rank(matrix: FieldMatrix) -> int:
    """Rank by dense Gaussian elimination; exact in every characteristic."""
    p = matrix.field.characteristic
    a = [row[:] for row in matrix.entries]
    r = 0
    for c in range(matrix.cols):
        pivot = next((i for i in range(r, matrix.rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        if p:
            inv = pow(a[r][c], -1, p)
            a[r] = [x * inv % p for x in a[r]]
        else:
            lead = a[r][c]
            a[r] = [x / lead for x in a[r]]
        for i in range(r + 1, matrix.rows):
            factor = a[i][c]
            if factor:
                if p:
                    a[i] = [(x - factor * y) % p for x, y in zip(a[i], a[r])]
                else:
                    a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == matrix.rows:
            break
    return r


def boundary_matrix(delta: SimplicialComplex, k: int, field: FieldLike = 0) -> FieldMatrix:
    """Matrix of the boundary map from k-chains to (k-1)-chains.

    Rows and columns follow :func:`facering.complex.faces`.  For ``k = 0`` the
    single row is the augmentation onto the empty face.
    """
    fs = as_field(field)
    if not 0 <= k <= delta.dim:
        raise DimensionOutOfRange(f"boundary index {k} outside [0, {delta.dim}]")
    cols = delta.faces_masks(k)
    rows = delta.faces_masks(k - 1)
    index = {m: i for i, m in enumerate(rows)}
    entries = [[0] * len(cols) for _ in rows]
    for j, face in enumerate(cols):
        for pos, v in enumerate(_bits.iter_bits(face)):
            entries[index[face ^ (1 << v)]][j] = -1 if pos % 2 else 1
    return FieldMatrix(len(rows), len(cols), entries, fs)


# -- sparse kernel ------------------------------------------------------------


def _rank_gf2(cols: list[int]) -> int:
    pivots: dict[int, int] = {}
    for col in cols:
        while col:
            low = col.bit_length() - 1
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                break
            col ^= other
    return len(pivots)


def _rank_modp(cols: list[dict[int, int]], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for col in cols:
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                inv = pow(col[low], -1, p)
                pivots[low] = {r: v * inv % p for r, v in col.items()}
                break
            factor = col[low]
            for r, v in other.items():
                nv = (col.get(r, 0) - factor * v) % p
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
    return len(pivots)


def _rank_rational(cols: list[dict[int, int]]) -> int:
    # Fraction-free: col <- a*col - b*pivot keeps integer entries, and the
    # content is divided out after every step to keep them small.
    pivots: dict[int, dict[int, int]] = {}
    for col in cols:
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                break
            a, b = other[low], col[low]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {r: a * v for r, v in col.items()}
            for r, v in other.items():
                nv = new.get(r, 0) - b * v
                if nv:
                    new[r] = nv
                else:
                    new.pop(r, None)
            content = 0
            for v in new.values():
                content = gcd(content, v)
                if content == 1:
                    break
            if content > 1:
                new = {r: v // content for r, v in new.items()}
            col = new
    return len(pivots)


def chain_ranks(faces_by_size: Sequence[Sequence[int]], characteristic: int) -> list[int]:
    """Ranks of the augmented boundary maps of a complex.

    ``faces_by_size[s]`` lists the faces with ``s`` vertices (entry 0 is the
    empty face).  Returns ``[rank d_0, rank d_1, ...]`` where ``d_0`` is the
    augmentation, so ``rank d_0`` is 1 whenever there is a vertex.
    """
    top = len(faces_by_size) - 1
    ranks = [0] * top
    if top == 0:
        return ranks
    ranks[0] = 1 if faces_by_size[1] else 0
    for size in range(2, top + 1):
        cells = faces_by_size[size]
        if not cells:
            break
        index = {m: i for i, m in enumerate(faces_by_size[size - 1])}
        if characteristic == 2:
            cols = []
            for face in cells:
                col = 0
                rest = face
                while rest:
                    low = rest & -rest
                    col |= 1 << index[face ^ low]
                    rest ^= low
                cols.append(col)
            ranks[size - 1] = _rank_gf2(cols)
            continue
        dict_cols = []
        for face in cells:
            col = {}
            sign = 1
            rest = face
            while rest:
                low = rest & -rest
                col[index[face ^ low]] = sign
                sign = -sign
                rest ^= low
            dict_cols.append(col)
        if characteristic:
            p = characteristic
            dict_cols = [{r: v % p for r, v in c.items()} for c in dict_cols]
            ranks[size - 1] = _rank_modp(dict_cols, p)
        else:
            ranks[size - 1] = _rank_rational(dict_cols)
    return ranks


def betti_from_ranks(face_counts: Sequence[int], ranks: Sequence[int]) -> tuple[int, ...]:
    """``(b_{-1}, b_0, ..., b_top)`` from face counts and augmented chain ranks.

    ``face_counts[s]`` is the number of faces with ``s`` vertices.
    """
    top = len(face_counts) - 1
    out = [1 - (ranks[0] if top >= 1 else 0)]
    for k in range(top):
        kernel = face_counts[k + 1] - ranks[k]
        image = ranks[k + 1] if k + 1 < top else 0
        out.append(kernel - image)
    return tuple(out)


def reduced_betti(delta: SimplicialComplex, field: FieldLike = 0) -> tuple[int, ...]:
    """Dimensions of reduced homology ``(b_{-1}, b_0, ..., b_dim)``."""
    fs = as_field(field)
    groups = delta.face_masks
    ranks = chain_ranks(groups, fs.characteristic)
    return betti_from_ranks([len(g) for g in groups], ranks)


# -- all induced subcomplexes at once --------------------------------------------


class InducedHomology:
    """Face counts and chain ranks of every induced subcomplex of a complex.

    Entry ``W`` (a vertex bitmask) of :attr:`counts` and :attr:`ranks` describes
    the induced subcomplex on ``W``; everything downstream (Hochster tables,
    Cohen-Macaulay tests, connectivity sequences) reads from here, so each
    induced subcomplex is reduced only once per field.

    ``skeleton(j)`` returns a view describing the j-skeleta of the same
    induced subcomplexes without recomputing anything.
    """

    def __init__(self, delta: SimplicialComplex, field: FieldLike = 0, workers: int = 1,
                 _counts=None, _ranks=None, _top=None):
        self.delta = delta
        self.field = as_field(field)
        if _counts is not None:
            self.counts, self.ranks, self.top = _counts, _ranks, _top
            return
        self.top = delta.dim + 1
        self.counts, self.ranks = _compute_all(delta, self.field.characteristic, workers)

    @property
    def n(self) -> int:
        return self.delta.n

    def dim(self, w: int) -> int:
        c = self.counts[w]
        k = len(c) - 1
        while k > 0 and c[k] == 0:
            k -= 1
        return k - 1

    def betti(self, w: int) -> tuple[int, ...]:
        """``(b_{-1}, ..., b_{top-1})`` of the induced subcomplex on ``w``."""
        return betti_from_ranks(self.counts[w], self.ranks[w])

    def skeleton(self, j: int) -> "InducedHomology":
        size = j + 1
        if not 0 <= j < self.top:
            raise DimensionOutOfRange(f"skeleton index {j} outside [0, {self.top - 1}]")
        counts = [c[: size + 1] for c in self.counts]
        ranks = [r[:size] for r in self.ranks]
        return InducedHomology(self.delta, self.field, _counts=counts, _ranks=ranks, _top=size)


def _induced_rows(delta: SimplicialComplex, characteristic: int, masks):
    groups = delta.face_masks
    top = len(groups) - 1
    counts, ranks = [], []
    empty_counts = (1,) + (0,) * top
    for w in masks:
        if w == 0:
            counts.append(empty_counts)
            ranks.append((0,) * top)
            continue
        outside = ~w
        sub = [g if s == 0 else [f for f in g if not f & outside] for s, g in enumerate(groups)]
        c = tuple(len(g) for g in sub)
        if delta.is_face_mask(w):
            # a simplex: acyclic, ranks follow from the counts
            r = [0] * top
            r[0] = 1
            for s in range(1, top):
                r[s] = c[s] - r[s - 1]
            counts.append(c)
            ranks.append(tuple(r))
            continue
        counts.append(c)
        ranks.append(tuple(chain_ranks(sub, characteristic)))
    return counts, ranks


def _chunk_job(args):
    delta, characteristic, start, stop = args
    return _induced_rows(delta, characteristic, range(start, stop))


def _compute_all(delta: SimplicialComplex, characteristic: int, workers: int):
    total = 1 << delta.n
    if workers <= 1 or total < 256:
        return _induced_rows(delta, characteristic, range(total))
    from concurrent.futures import ProcessPoolExecutor

    step = max(64, total // (workers * 8))
    jobs = [(delta, characteristic, s, min(s + step, total)) for s in range(0, total, step)]
    counts: list = []
    ranks: list = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves job order, so the merge is independent of completion order
        for c, r in pool.map(_chunk_job, jobs):
            counts.extend(c)
            ranks.extend(r)
    return counts, ranks
