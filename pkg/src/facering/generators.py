"""Named complexes and seeded random families.

Random families draw from :class:`CounterStream`, a counter-based generator
defined by its algorithm rather than by a library, so a ``(seed, stream)``
pair yields the same complexes on every platform:

    key  = splitmix64(splitmix64(seed) ^ stream)
    word = splitmix64(key ^ position)          # position = 0, 1, 2, ...

Bounded integers use rejection sampling on the 64-bit words.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

from . import _bits
from .complex import SimplicialComplex, from_facets
from .complex import join as _join
from .errors import ParameterOutOfRange

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class CounterStream:
    """Deterministic 64-bit words indexed by ``(seed, stream, position)``.

    The only state is :attr:`position`, which each draw advances by one.
    """

    def __init__(self, seed: int, stream: int = 0, position: int = 0):
        self.seed = seed & _MASK64
        self.stream = stream & _MASK64
        self.position = position
        self._key = splitmix64(splitmix64(self.seed) ^ self.stream)

    def word(self) -> int:
        w = splitmix64(self._key ^ self.position)
        self.position += 1
        return w

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound <= 0:
            raise ParameterOutOfRange("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            w = self.word()
            if w < limit:
                return w % bound

    def bernoulli(self, p) -> bool:
        threshold = int(Fraction(p) * (1 << 64))
        return self.word() < threshold

    def shuffle(self, items: list) -> list:
        """Fisher-Yates shuffle (in place, returns ``items``)."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def sample(self, items: Sequence, count: int) -> list:
        """``count`` distinct items, uniformly without replacement."""
        pool = list(items)
        if not 0 <= count <= len(pool):
            raise ParameterOutOfRange(f"cannot draw {count} of {len(pool)} items")
        for i in range(count):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:count]


def _vertices(n: int) -> list[int]:
    return list(range(1, n + 1))


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterOutOfRange(message)


# -- named complexes ---------------------------------------------------------


def simplex(n: int) -> SimplicialComplex:
    """The full simplex on ``n`` vertices."""
    _need(n >= 1, "a simplex needs at least one vertex")
    return from_facets([_vertices(n)])


def simplex_boundary(d: int) -> SimplicialComplex:
    """Boundary of the d-simplex: d+1 vertices, dimension d-1."""
    _need(d >= 1, "simplex_boundary needs d >= 1")
    return from_facets(combinations(_vertices(d + 1), d))


def cycle(n: int) -> SimplicialComplex:
    _need(n >= 3, "a cycle needs at least 3 vertices")
    return from_facets([(i, i % n + 1) for i in range(1, n + 1)])


def path(n: int) -> SimplicialComplex:
    """Path graph on ``n`` vertices (a single vertex when n = 1)."""
    _need(n >= 1, "a path needs at least one vertex")
    if n == 1:
        return from_facets([[1]])
    return from_facets([(i, i + 1) for i in range(1, n)])


def complete_graph(n: int) -> SimplicialComplex:
    _need(n >= 2, "complete_graph needs n >= 2")
    return from_facets(combinations(_vertices(n), 2))


def uniform_matroid(r: int, n: int) -> SimplicialComplex:
    """All subsets of [n] with at most r elements."""
    _need(1 <= r <= n, "uniform_matroid needs 1 <= r <= n")
    return from_facets(combinations(_vertices(n), r))


def cross_polytope_boundary(d: int) -> SimplicialComplex:
    """Boundary of the d-dimensional cross-polytope.

    Vertex ``i`` is antipodal to ``i + d``; facets pick one vertex per pair.
    """
    _need(d >= 1, "cross_polytope_boundary needs d >= 1")
    facets = []
    for choice in range(1 << d):
        facets.append([i + 1 + (d if choice >> i & 1 else 0) for i in range(d)])
    return from_facets(facets, labels=_vertices(2 * d))


def cyclic_polytope_facets(d: int, n: int) -> list[tuple[int, ...]]:
    """Facets of the cyclic polytope C(n, d) by Gale's evenness condition."""
    out = []
    for s in combinations(range(1, n + 1), d):
        members = set(s)
        ok = True
        outside = [v for v in range(1, n + 1) if v not in members]
        for a, b in zip(outside, outside[1:]):
            if sum(1 for v in s if a < v < b) % 2:
                ok = False
                break
        if ok:
            out.append(s)
    return out


def cyclic_polytope_boundary(d: int, n: int) -> SimplicialComplex:
    """Boundary complex of C(n, d): n vertices, dimension d-1."""
    _need(d >= 2, "cyclic_polytope_boundary needs d >= 2")
    _need(n >= d + 1, "cyclic_polytope_boundary needs n >= d + 1")
    return from_facets(cyclic_polytope_facets(d, n))


def rp2_six_vertex() -> SimplicialComplex:
    """Six-vertex triangulation of the real projective plane (10 triangles)."""
    return from_facets([
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
        (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
    ])


def _is_forest(edges: Sequence[tuple]) -> bool:
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def graphic_matroid(edges: Iterable[tuple]) -> SimplicialComplex:
    """Complex of forests: vertices are the edges, faces the acyclic edge sets.

    Edges are normalized to sorted pairs; loops and repeated edges are
    rejected.
    """
    ground = [tuple(sorted(e)) for e in edges]
    _need(len(ground) > 0, "graphic_matroid needs at least one edge")
    _need(all(u != v for u, v in ground), "loops are not supported")
    _need(len(set(ground)) == len(ground), "parallel edges are not supported")
    ground.sort()
    m = len(ground)
    _need(m <= 20, "graphic_matroid enumerates edge subsets; keep m <= 20")
    forests = []
    for mask in range(1 << m):
        chosen = [ground[i] for i in _bits.iter_bits(mask)]
        if _is_forest(chosen):
            forests.append(mask)
    facets = [[ground[i] for i in _bits.iter_bits(f)] for f in _bits.maximal(forests)]
    return from_facets(facets, labels=ground)


def cone(delta: SimplicialComplex, apex="apex") -> SimplicialComplex:
    """Join with a single new vertex ``apex``."""
    return _join(delta, from_facets([[apex]]))


def join(first: SimplicialComplex, second: SimplicialComplex) -> SimplicialComplex:
    return _join(first, second)


def disjoint_union(first: SimplicialComplex, second: SimplicialComplex) -> SimplicialComplex:
    labels = [(1, lab) for lab in first.labels] + [(2, lab) for lab in second.labels]
    facets = [[(1, lab) for lab in f] for f in first.facets]
    facets += [[(2, lab) for lab in f] for f in second.facets]
    return from_facets(facets, labels=labels)


# -- random families ------------------------------------------------------------


def random_pure(n: int, d: int, count: int, seed: int, stream: int = 0) -> SimplicialComplex:
    """``count`` distinct d-subsets of [n], drawn uniformly without replacement.

    Vertices that end up in no facet are dropped by normalization.
    """
    _need(1 <= d <= n, "random_pure needs 1 <= d <= n")
    _need(1 <= count <= comb(n, d), "random_pure count out of range")
    rng = CounterStream(seed, stream)
    pool = list(combinations(_vertices(n), d))
    return from_facets(rng.sample(pool, count))


def random_graph_edges(n: int, p, seed: int, stream: int = 0) -> list[tuple[int, int]]:
    """G(n, p) edges; pairs are tested in lexicographic order."""
    _need(n >= 1, "random_graph needs n >= 1")
    _need(0 <= Fraction(p) <= 1, "edge probability must lie in [0, 1]")
    rng = CounterStream(seed, stream)
    return [e for e in combinations(_vertices(n), 2) if rng.bernoulli(p)]


def random_graph(n: int, p, seed: int, stream: int = 0) -> SimplicialComplex:
    """G(n, p) as a 1-dimensional complex; isolated vertices are kept."""
    edges = random_graph_edges(n, p, seed, stream)
    covered = {v for e in edges for v in e}
    facets = [list(e) for e in edges] + [[v] for v in _vertices(n) if v not in covered]
    return from_facets(facets)


def random_mixed(n: int, d: int, count: int, seed: int, stream: int = 0) -> SimplicialComplex:
    """``count`` random faces of sizes 1..d (sizes uniform, then subsets uniform)."""
    _need(1 <= d <= n, "random_mixed needs 1 <= d <= n")
    _need(count >= 1, "random_mixed needs count >= 1")
    rng = CounterStream(seed, stream)
    facets = []
    for _ in range(count):
        size = 1 + rng.below(d)
        facets.append(rng.sample(_vertices(n), size))
    # make sure the top dimension is present
    facets.append(rng.sample(_vertices(n), d))
    return from_facets(facets)


def _shelling_ok(facets: list[int], new: int) -> bool:
    """True if ``new`` meets the complex generated by ``facets`` in a pure
    codimension-one subcomplex of its boundary."""
    ridges = [new ^ (1 << v) for v in _bits.iter_bits(new)]
    present = [r for r in ridges if any(r & ~f == 0 for f in facets)]
    if not present:
        return False
    for g in _bits.submasks(new):
        if g == new:
            continue
        in_old = any(g & ~f == 0 for f in facets)
        in_ridges = any(g & ~r == 0 for r in present)
        if in_old != in_ridges:
            return False
    return True


def random_shellable(n: int, d: int, count: int, seed: int, stream: int = 0) -> SimplicialComplex:
    """Random shellable pure complex with facets of size ``d`` on at most n vertices.

    Candidate d-subsets are shuffled and added greedily whenever the shelling
    condition holds, sweeping the list until ``count`` facets are placed or
    no candidate fits.  Shellable complexes are Cohen-Macaulay over every
    field.
    """
    _need(1 <= d <= n, "random_shellable needs 1 <= d <= n")
    _need(count >= 1, "random_shellable needs count >= 1")
    rng = CounterStream(seed, stream)
    order = rng.shuffle([_bits.from_indices(c) for c in combinations(range(n), d)])
    chosen = [order[0]]
    rest = order[1:]
    grew = True
    while grew and len(chosen) < count:
        grew = False
        remaining = []
        for cand in rest:
            if len(chosen) < count and _shelling_ok(chosen, cand):
                chosen.append(cand)
                grew = True
            else:
                remaining.append(cand)
        rest = remaining
    return from_facets([[i + 1 for i in _bits.iter_bits(f)] for f in chosen])


# -- family specs -----------------------------------------------------------------


@dataclass(frozen=True)
class Family:
    name: str
    build: Callable[..., SimplicialComplex]
    params: tuple[str, ...]
    random: bool = False


def _graphic_random(n: int, p, seed: int, stream: int = 0) -> SimplicialComplex:
    edges = random_graph_edges(n, p, seed, stream)
    if not edges:
        # an edgeless graph has no matroid to speak of; fall back to one edge
        edges = [(1, 2)]
    return graphic_matroid(edges)


def _random_pure_family(n: int, d: int, count: int | None = None, seed: int = 0, stream: int = 0):
    if count is None:
        count = 1 + CounterStream(seed, stream, position=1 << 32).below(comb(n, d))
    return random_pure(n, d, count, seed, stream)


def _random_shellable_family(n: int, d: int, count: int | None = None, seed: int = 0, stream: int = 0):
    if count is None:
        count = 1 + CounterStream(seed, stream, position=1 << 32).below(comb(n, d))
    return random_shellable(n, d, count, seed, stream)


FAMILIES: dict[str, Family] = {
    f.name: f
    for f in [
        Family("simplex_boundary", simplex_boundary, ("d",)),
        Family("cycle", cycle, ("n",)),
        Family("path", path, ("n",)),
        Family("complete_graph", complete_graph, ("n",)),
        Family("uniform_matroid", uniform_matroid, ("r", "n")),
        Family("cross_polytope_boundary", cross_polytope_boundary, ("d",)),
        Family("cyclic_polytope_boundary", cyclic_polytope_boundary, ("d", "n")),
        Family("rp2_six_vertex", rp2_six_vertex, ()),
        Family("random_pure", _random_pure_family, ("n", "d", "count"), random=True),
        Family("random_shellable", _random_shellable_family, ("n", "d", "count"), random=True),
        Family("random_mixed", random_mixed, ("n", "d", "count"), random=True),
        Family("random_graph", random_graph, ("n", "p"), random=True),
        Family("graphic_random", _graphic_random, ("n", "p"), random=True),
    ]
}


def _coerce(value):
    if isinstance(value, str):
        for conv in (int, Fraction):
            try:
                return conv(value)
            except (ValueError, ZeroDivisionError):
                pass
    return value


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus parameters; ``build(trial)`` is deterministic.

    For random families the trial index selects the stream, so trials are
    independent of each other and of evaluation order.
    """

    name: str
    params: tuple[tuple[str, object], ...] = ()
    seed: int = 0

    @classmethod
    def create(cls, name: str, params: dict | None = None, seed: int = 0) -> "FamilySpec":
        if name not in FAMILIES:
            raise ParameterOutOfRange(f"unknown family {name!r}; known: {sorted(FAMILIES)}")
        fam = FAMILIES[name]
        params = {k: _coerce(v) for k, v in (params or {}).items()}
        unknown = set(params) - set(fam.params)
        if unknown:
            raise ParameterOutOfRange(f"family {name} has no parameter(s) {sorted(unknown)}")
        return cls(name, tuple(sorted(params.items())), seed)

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "FamilySpec":
        """``"name"``, ``"name:3"`` or ``"name:n=8,d=2"`` (positional or keyword)."""
        name, _, rest = text.partition(":")
        tokens = [t for t in rest.replace(",", " ").split() if t]
        return cls.from_tokens(name.strip(), tokens, seed)

    @classmethod
    def from_tokens(cls, name: str, tokens: Sequence[str], seed: int = 0) -> "FamilySpec":
        if name not in FAMILIES:
            raise ParameterOutOfRange(f"unknown family {name!r}; known: {sorted(FAMILIES)}")
        order = FAMILIES[name].params
        params: dict = {}
        positional = 0
        for tok in tokens:
            if "=" in tok:
                k, v = tok.split("=", 1)
                params[k.strip()] = v.strip()
            else:
                if positional >= len(order):
                    raise ParameterOutOfRange(f"too many parameters for {name}")
                params[order[positional]] = tok
                positional += 1
        return cls.create(name, params, seed)

    @property
    def family(self) -> Family:
        return FAMILIES[self.name]

    def build(self, trial: int = 0) -> SimplicialComplex:
        kwargs = dict(self.params)
        if self.family.random:
            kwargs.update(seed=self.seed, stream=trial)
        try:
            return self.family.build(**kwargs)
        except TypeError as exc:
            raise ParameterOutOfRange(f"bad parameters for {self.name}: {exc}") from None

    def to_doc(self) -> dict:
        return {
            "family": self.name,
            "params": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.params},
            "seed": self.seed,
        }
