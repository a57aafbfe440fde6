"""Graded Betti numbers of face ideals via Hochster's formula.

``beta[i, j]`` counts, over all vertex subsets ``W`` with ``|W| = j``, the
dimension of reduced homology of the induced subcomplex in degree
``j - i - 1``.  Rows ``i`` start at 1 (the generators of the face ideal);
``beta[0, 0] = 1`` is implicit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from . import _bits
from .complex import SimplicialComplex, f_vector, h_vector
from .errors import DegenerateComplex
from .homology import FieldLike, FieldSpec, InducedHomology, as_field


@lru_cache(maxsize=128)
def _induced(delta: SimplicialComplex, characteristic: int) -> InducedHomology:
    return InducedHomology(delta, characteristic)


def induced_homology(delta: SimplicialComplex, field: FieldLike = 0, workers: int = 1) -> InducedHomology:
    """Memoized :class:`InducedHomology` for ``(delta, characteristic)``."""
    fs = as_field(field)
    if workers > 1:
        return InducedHomology(delta, fs, workers=workers)
    return _induced(delta, fs.characteristic)


def _check_nondegenerate_input(delta: SimplicialComplex) -> None:
    if delta.is_irrelevant:
        raise DegenerateComplex("the complex {emptyset} has no face ring to resolve")


@dataclass
class BettiTable:
    n: int
    d: int
    field: FieldSpec
    beta: dict[tuple[int, int], int] = field(default_factory=dict)
    degenerate: bool = False

    @property
    def codim(self) -> int:
        return self.n - self.d

    @property
    def pd(self) -> int:
        return max((i for (i, _j) in self.beta), default=0)

    def row(self, i: int) -> dict[int, int]:
        return {j: b for (ii, j), b in sorted(self.beta.items()) if ii == i}

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.beta.get(key, 0)

    def min_shift(self, i: int) -> int:
        return min(self.row(i))

    def max_shift(self, i: int) -> int:
        return max(self.row(i))

    def to_text(self) -> str:
        """Plain-text grid: one row per homological index i, one column per degree j."""
        if not self.beta:
            return "(zero ideal: empty Betti table)"
        degrees = list(range(min(j for _, j in self.beta), max(j for _, j in self.beta) + 1))
        width = max(3, max(len(str(b)) for b in self.beta.values()), len(str(degrees[-1])))
        lines = ["i\\j " + " ".join(f"{j:>{width}}" for j in degrees)]
        for i in range(1, self.pd + 1):
            cells = [self.beta.get((i, j), 0) for j in degrees]
            lines.append(f"{i:>3} " + " ".join(f"{(b if b else '.'):>{width}}" for b in cells))
        return "\n".join(lines)

    def to_doc(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "field": self.field.characteristic,
            "degenerate": self.degenerate,
            "entries": [[i, j, b] for (i, j), b in sorted(self.beta.items())],
        }


@dataclass(frozen=True)
class ShiftSequences:
    """Minimal and maximal shifts ``m_i``, ``M_i`` for ``i = 1..pd``."""

    m: tuple[int, ...]
    M: tuple[int, ...]


def hochster_betti_table(delta: SimplicialComplex, field: FieldLike = 0, workers: int = 1) -> BettiTable:
    """Betti table of the face ideal of ``delta``.

    A full simplex gives the zero ideal: the returned table is empty and
    flagged ``degenerate``.  ``workers > 1`` fans the subset enumeration out
    over processes; the merged result is identical to the sequential one.
    """
    _check_nondegenerate_input(delta)
    fs = as_field(field)
    table = BettiTable(delta.n, delta.d, fs)
    if delta.is_simplex:
        table.degenerate = True
        return table
    data = induced_homology(delta, fs, workers)
    beta: dict[tuple[int, int], int] = {}
    # each W is reduced once; its whole Betti vector feeds rows i = j - p - 1
    for w in range(1, 1 << delta.n):
        j = _bits.popcount(w)
        bv = data.betti(w)
        for idx, b in enumerate(bv):
            if b:
                p = idx - 1
                i = j - p - 1
                if i >= 1:
                    beta[(i, j)] = beta.get((i, j), 0) + b
    table.beta = dict(sorted(beta.items()))
    return table


@lru_cache(maxsize=256)
def betti_table(delta: SimplicialComplex, characteristic: int = 0) -> BettiTable:
    """Memoized :func:`hochster_betti_table`; treat the result as read-only."""
    return hochster_betti_table(delta, characteristic)


def shifts(table: BettiTable) -> ShiftSequences:
    if table.degenerate:
        return ShiftSequences((), ())
    rows = range(1, table.pd + 1)
    return ShiftSequences(
        tuple(table.min_shift(i) for i in rows),
        tuple(table.max_shift(i) for i in rows),
    )


def minimal_nonfaces_masks(delta: SimplicialComplex) -> list[int]:
    found: set[int] = set()
    face_set = delta.face_set
    for face in face_set:
        for v in range(delta.n):
            bit = 1 << v
            if face & bit:
                continue
            cand = face | bit
            if cand in face_set or cand in found:
                continue
            if all((cand ^ (1 << u)) in face_set for u in _bits.iter_bits(cand)):
                found.add(cand)
    return sorted(found, key=_bits.canonical_key)


def minimal_nonfaces(delta: SimplicialComplex) -> list[tuple]:
    """Inclusion-minimal non-faces, i.e. the generators of the face ideal."""
    return [delta.labels_of(m) for m in minimal_nonfaces_masks(delta)]


def is_pure_resolution(table: BettiTable) -> bool:
    s = shifts(table)
    return s.m == s.M


def is_quasi_pure(table: BettiTable) -> bool:
    s = shifts(table)
    return all(s.m[i] >= s.M[i - 1] for i in range(1, len(s.m)))


def multiplicity(delta: SimplicialComplex) -> int:
    """Number of top-dimensional faces."""
    return f_vector(delta)[-1]


def multiplicity_bounds(table: BettiTable) -> tuple[Fraction, Fraction]:
    """``(prod m_i / c!, prod M_i / c!)`` over the first ``c`` rows.

    A full simplex (codimension 0) reports ``(1, 1)``.
    """
    c = table.codim
    if table.degenerate or c == 0:
        return Fraction(1), Fraction(1)
    s = shifts(table)
    lower = Fraction(prod(s.m[:c]), factorial(c))
    upper = Fraction(prod(s.M[:c]), factorial(c))
    return lower, upper


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a: list[int]) -> list[int]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def k_polynomial(table: BettiTable) -> list[int]:
    """Coefficients of ``1 + sum (-1)^i beta_{i,j} t^j``."""
    top = max((j for _, j in table.beta), default=0)
    coeffs = [0] * (top + 1)
    coeffs[0] = 1
    for (i, j), b in table.beta.items():
        coeffs[j] += (-1) ** i * b
    return _trim(coeffs)


def k_polynomial_check(delta: SimplicialComplex, field: FieldLike = 0) -> bool:
    """Compare the Betti table with ``(1 - t)^(n - d) * h(t)``."""
    fs = as_field(field)
    table = betti_table(delta, fs.characteristic)
    rhs = list(h_vector(delta))
    for _ in range(delta.codim):
        rhs = _poly_mul(rhs, [1, -1])
    return k_polynomial(table) == _trim(rhs)
