"""Cohen-Macaulay tests, q-CM levels and the CM-connectivity sequence.

Two independent CM tests are provided: :func:`is_cm_reisner` looks at the
homology of every link, :func:`is_cm_hochster` at the homology of every
induced subcomplex.  The q-CM machinery reads the induced homology table
once and evaluates every deletion ``Delta_{[n]-U}`` from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

from . import _bits
from .complex import SimplicialComplex, f_vector, link_mask
from .errors import MalformedSequence, NotCM, TheoremViolation
from .homology import FieldLike, FieldSpec, InducedHomology, as_field, reduced_betti
from .reports import Verdict, check, not_applicable
from .resolution import betti_table, induced_homology, shifts

_NEG = -(1 << 30)


# -- plain CM tests -----------------------------------------------------------------


def is_cm_reisner(delta: SimplicialComplex, field: FieldLike = 0) -> bool:
    """Reisner: reduced homology of ``lk F`` vanishes below ``dim - |F|``."""
    fs = as_field(field)
    dim = delta.dim
    for group in delta.face_masks:
        for face in group:
            limit = dim - _bits.popcount(face)  # need H_i = 0 for i < limit
            if limit <= -1:
                continue
            bv = reduced_betti(link_mask(delta, face), fs)
            for i in range(-1, limit):
                if i + 1 < len(bv) and bv[i + 1]:
                    return False
    return True


def _hochster_violation(delta: SimplicialComplex, data: InducedHomology) -> int | None:
    n, top = delta.n, delta.dim
    for w in range(1, 1 << n):
        size = _bits.popcount(w)
        for idx, b in enumerate(data.betti(w)):
            p = idx - 1
            if b and p + (n - size) < top:
                return w
    return None


def is_cm_hochster(delta: SimplicialComplex, field: FieldLike = 0) -> bool:
    """Hochster: ``H_p(Delta_W) = 0`` whenever ``p + (n - |W|) < dim``."""
    if delta.is_irrelevant:
        return True
    fs = as_field(field)
    return _hochster_violation(delta, induced_homology(delta, fs)) is None


def is_cm(delta: SimplicialComplex, field: FieldLike = 0) -> bool:
    return is_cm_hochster(delta, field)


# -- q-CM through the induced table -------------------------------------------------


def _good_deletions(data: InducedHomology) -> list[bool]:
    """``good[V]``: the induced (skeleton) complex on V is CM of full dimension."""
    n = data.n
    target = data.top - 1
    size = 1 << n
    # excess[W] = max(|W| - p) over p with H_p(W) != 0; then take the max over subsets
    excess = [_NEG] * size
    for w in range(size):
        card = _bits.popcount(w)
        best = _NEG
        for idx, b in enumerate(data.betti(w)):
            if b:
                best = max(best, card - (idx - 1))
        excess[w] = best
    for bit in range(n):
        step = 1 << bit
        for v in range(size):
            if v & step and excess[v ^ step] > excess[v]:
                excess[v] = excess[v ^ step]
    return [
        data.dim(v) == target and excess[v] <= _bits.popcount(v) - target
        for v in range(size)
    ]


def _q_search(data: InducedHomology) -> tuple[int, int]:
    """``(q, U)``: first failing deletion set in (cardinality, lex) order."""
    good = _good_deletions(data)
    full = (1 << data.n) - 1
    for u in _bits.canonical_subsets(data.n):
        if not good[full & ~u]:
            return _bits.popcount(u), u
    raise AssertionError("deleting every vertex must fail")  # pragma: no cover


def _skeleton_data(delta: SimplicialComplex, field: FieldSpec, j: int) -> InducedHomology:
    data = induced_homology(delta, field)
    return data if j == delta.dim else data.skeleton(j)


def is_q_cm(delta: SimplicialComplex, q: int, field: FieldLike = 0) -> bool:
    """Every deletion of at most ``q - 1`` vertices is CM of the same dimension."""
    if q < 1:
        raise ValueError("q must be at least 1")
    good = _good_deletions(induced_homology(delta, as_field(field)))
    full = delta.vertex_mask
    for size in range(min(q - 1, delta.n) + 1):
        for u in _bits.masks_by_size(delta.n, size):
            if not good[full & ~u]:
                return False
    return True


def q_max_with_witness(delta: SimplicialComplex, field: FieldLike = 0) -> tuple[int, tuple]:
    """Largest q with ``delta`` q-CM, and the deletion set that breaks q + 1."""
    fs = as_field(field)
    q, u = _q_search(induced_homology(delta, fs))
    if q == 0:
        raise NotCM(f"complex is not Cohen-Macaulay over {fs}")
    return q, delta.labels_of(u)


def q_max(delta: SimplicialComplex, field: FieldLike = 0) -> int:
    return q_max_with_witness(delta, field)[0]


@dataclass(frozen=True)
class ConnectivitySequence:
    values: tuple[int, ...]
    field: FieldSpec
    witnesses: tuple[tuple, ...] = ()

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def to_doc(self) -> dict:
        return {
            "q": list(self.values),
            "field": self.field.characteristic,
            "witnesses": [list(w) for w in self.witnesses],
        }


def connectivity_sequence(delta: SimplicialComplex, field: FieldLike = 0) -> ConnectivitySequence:
    """``(q_0, ..., q_{d-1})`` where ``q_i`` is the q-CM level of the i-skeleton."""
    fs = as_field(field)
    if delta.is_irrelevant or not is_cm_hochster(delta, fs):
        raise NotCM(f"connectivity sequence needs a CM complex (over {fs})")
    values, witnesses = [], []
    for j in range(delta.d):
        q, u = _q_search(_skeleton_data(delta, fs, j))
        values.append(q)
        witnesses.append(delta.labels_of(u))
    if any(a <= b for a, b in zip(values, values[1:])):
        raise TheoremViolation("connectivity strictly decreasing", {"q": values})
    return ConnectivitySequence(tuple(values), fs, tuple(witnesses))


# -- skips of the m-sequence ---------------------------------------------------------


@dataclass(frozen=True)
class SkipTable:
    n: int
    d: int
    m: tuple[int, ...]
    m_prime: tuple[int, ...]
    t: tuple[int, ...]
    s: tuple[int, ...]
    q: tuple[int, ...]

    def to_text(self) -> str:
        width = max(2, len(str(self.n)))
        cols = range(1, len(self.m) + 1)

        def line(head, values):
            return f"{head:<4}" + "".join(f"{v:>{width + 1}}" for v in values)

        out = [
            f"n={self.n} d={self.d}",
            line("i", cols),
            line("m_i", self.m),
            line("m'_i", self.m_prime),
            "",
            f"{'j':>3} {'t_j':>4} {'s_j':>4} {'q_j':>4}",
        ]
        for j in range(self.d):
            out.append(f"{j:>3} {self.t[j]:>4} {self.s[j]:>4} {self.q[j]:>4}")
        return "\n".join(out)

    def to_doc(self) -> dict:
        return {
            "n": self.n, "d": self.d, "m": list(self.m), "m_prime": list(self.m_prime),
            "t": list(self.t), "s": list(self.s), "q": list(self.q),
        }


def skips_from_m_sequence(m, n: int, d: int | None = None) -> SkipTable:
    """Skip bookkeeping for a strictly increasing minimal-shift sequence.

    ``m'_i = m_i - i - 1``; ``t_j`` is the largest ``i`` with ``m'_i < j``
    (0 if none); ``s_j = t_j + j + 1`` and ``q_j = n - s_j + 1``.
    """
    m = tuple(int(x) for x in m)
    if d is None:
        d = n - len(m)
    if len(m) != n - d or d < 1:
        raise MalformedSequence(f"expected {n - d} shifts for n={n}, d={d}, got {len(m)}")
    if any(b <= a for a, b in zip(m, m[1:])):
        raise MalformedSequence("shift sequence must be strictly increasing")
    if m and (m[0] < 2 or m[-1] > n):
        raise MalformedSequence(f"shifts must lie in [2, {n}]")
    m_prime = tuple(mi - i - 1 for i, mi in enumerate(m, start=1))
    t = tuple(sum(1 for x in m_prime if x < j) for j in range(d))
    s = tuple(tj + j + 1 for j, tj in enumerate(t))
    q = tuple(n - sj + 1 for sj in s)
    return SkipTable(n, d, m, m_prime, t, s, q)


# -- theorem checks ----------------------------------------------------------------------


def _require_cm(delta: SimplicialComplex, fs: FieldSpec) -> None:
    if delta.is_irrelevant or not is_cm_hochster(delta, fs):
        raise NotCM(f"complex is not Cohen-Macaulay over {fs}")


def _falling(n: int, k: int) -> int:
    return prod(range(n - k + 1, n + 1))


def verify_main_theorem(delta: SimplicialComplex, field: FieldLike = 0) -> Verdict:
    """Skipped degrees of the m-sequence against ``{n - q_j + 1}``.

    Also compares ``prod m_i / (n-d)!`` with the closed form
    ``n(n-1)...(n-d+1) / prod (n - q_j + 1)``.
    """
    fs = as_field(field)
    _require_cm(delta, fs)
    n, d = delta.n, delta.d
    table = betti_table(delta, fs.characteristic)
    m = shifts(table).m[: n - d]
    q = connectivity_sequence(delta, fs).values
    skipped = sorted(set(range(1, n + 1)) - set(m))
    predicted = sorted(n - qj + 1 for qj in q)
    lhs = Fraction(prod(m), factorial(n - d))
    rhs = Fraction(_falling(n, d), prod(n - qj + 1 for qj in q))
    return check(
        "main_theorem",
        skipped == predicted and lhs == rhs and not table.degenerate,
        skipped=skipped, predicted=predicted, m=list(m), q=list(q),
        product_form=lhs, closed_form=rhs,
    )


def verify_q_estimate(delta: SimplicialComplex, field: FieldLike = 0) -> Verdict:
    """``f_{d-1} >= q_0 q_1 ... q_{d-1} / d!``."""
    fs = as_field(field)
    _require_cm(delta, fs)
    q = connectivity_sequence(delta, fs).values
    top = f_vector(delta)[-1]
    bound = Fraction(prod(q), factorial(delta.d))
    return check("q_estimate", top >= bound, facets=top, bound=bound,
                 slack=top - bound, tight=top == bound, q=list(q))


def is_almost_cm(delta: SimplicialComplex, field: FieldLike = 0) -> bool:
    """The codimension-one skeleton is CM (0-dimensional complexes qualify)."""
    fs = as_field(field)
    if delta.dim <= 0:
        return True
    data = induced_homology(delta, fs).skeleton(delta.dim - 1)
    n, top = delta.n, delta.dim - 1
    for w in range(1, 1 << n):
        size = _bits.popcount(w)
        for idx, b in enumerate(data.betti(w)):
            if b and (idx - 1) + (n - size) < top:
                return False
    return True


def verify_skeleton_proposition(delta: SimplicialComplex, field: FieldLike = 0) -> Verdict:
    """Each codimension-one skeleton gains at least one level of q-CM."""
    fs = as_field(field)
    _require_cm(delta, fs)
    q = connectivity_sequence(delta, fs).values
    gaps = [q[i - 1] - q[i] for i in range(1, len(q))]
    return check("skeleton_proposition", all(g >= 1 for g in gaps), q=list(q), gaps=gaps)


def lower_bound_certificate(delta: SimplicialComplex, field: FieldLike = 0) -> Verdict:
    """Evaluate ``d! prod_{i<d}(n-i) <= prod_{i<d} q_i (n - q_i + 1)``.

    The inequality is asserted only under one of the two hypotheses
    (2-CM with ``q_1 <= n-d+1``, or d-CM); otherwise it is reported.
    """
    fs = as_field(field)
    _require_cm(delta, fs)
    n, d = delta.n, delta.d
    q = connectivity_sequence(delta, fs).values
    level = q[-1]
    two_cm_hyp = level >= 2 and (d < 2 or q[1] <= n - d + 1)
    d_cm_hyp = level >= d
    lhs = factorial(d) * prod(n - i for i in range(1, d))
    rhs = prod(q[i] * (n - q[i] + 1) for i in range(1, d))
    detail = dict(q=list(q), lhs=lhs, rhs=rhs, two_cm_hypothesis=two_cm_hyp,
                  d_cm_hypothesis=d_cm_hyp, inequality=lhs <= rhs)
    if not (two_cm_hyp or d_cm_hyp):
        return not_applicable("lower_bound_certificate", "neither hypothesis holds", **detail)
    return check("lower_bound_certificate", lhs <= rhs, **detail)
