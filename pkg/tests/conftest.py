"""Shared zoo of complexes and brute-force oracles.

The oracles work on frozensets of labels with plain dense elimination and
share no code with the bitmask/sparse machinery they check.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import pytest

from facering import generators as gen
from facering.complex import SimplicialComplex, from_facets
from facering.generators import CounterStream

CHARS = (0, 2, 3)

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# -- oracles ------------------------------------------------------------------------


def oracle_faces(facets) -> set[frozenset]:
    out = set()
    for f in facets:
        f = list(f)
        for k in range(len(f) + 1):
            out.update(frozenset(c) for c in combinations(f, k))
    return out


def oracle_rank(rows: list[list[int]], p: int) -> int:
    a = [[Fraction(x) if p == 0 else x % p for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(a)):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c] != 0:
                if p == 0:
                    f = a[i][c] / a[rank][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
                else:
                    f = a[i][c] * pow(a[rank][c], p - 2, p) % p
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def oracle_betti(faces: set[frozenset], p: int) -> tuple[int, ...]:
    """Reduced Betti numbers (b_{-1}, b_0, ..., b_top) of a face set."""
    top = max(len(f) for f in faces) - 1
    by_dim = {k: sorted(tuple(sorted(f, key=repr)) for f in faces if len(f) == k + 1)
              for k in range(-1, top + 1)}
    ranks = {}
    for k in range(0, top + 1):
        rows = by_dim[k - 1]
        idx = {r: i for i, r in enumerate(rows)}
        mat = [[0] * len(by_dim[k]) for _ in rows]
        for j, face in enumerate(by_dim[k]):
            for pos in range(len(face)):
                mat[idx[face[:pos] + face[pos + 1:]]][j] = (-1) ** pos
        ranks[k] = oracle_rank(mat, p) if rows and by_dim[k] else 0
    out = []
    for k in range(-1, top + 1):
        out.append(len(by_dim[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0))
    return tuple(out)


def oracle_induced(faces: set[frozenset], w) -> set[frozenset]:
    w = frozenset(w)
    return {f for f in faces if f <= w}


def oracle_betti_table(delta: SimplicialComplex, p: int) -> dict[tuple[int, int], int]:
    faces = oracle_faces(delta.facets)
    table: dict[tuple[int, int], int] = {}
    for j in range(1, delta.n + 1):
        for w in combinations(delta.labels, j):
            bv = oracle_betti(oracle_induced(faces, w), p)
            for idx, b in enumerate(bv):
                i = j - (idx - 1) - 1
                if b and i >= 1:
                    table[(i, j)] = table.get((i, j), 0) + b
    return table


def oracle_minimal_nonfaces(delta: SimplicialComplex) -> list[frozenset]:
    faces = oracle_faces(delta.facets)
    out = []
    for k in range(1, delta.n + 1):
        for s in combinations(delta.labels, k):
            s = frozenset(s)
            if s not in faces and all(s - {v} in faces for v in s):
                out.append(s)
    return out


def oracle_is_matroid(delta: SimplicialComplex) -> bool:
    faces = oracle_faces(delta.facets)
    for k in range(1, delta.n + 1):
        for w in combinations(delta.labels, k):
            sub = oracle_induced(faces, w)
            maximal = [f for f in sub if not any(f < g for g in sub)]
            if len({len(f) for f in maximal}) > 1:
                return False
    return True


def oracle_h_vector(f: tuple[int, ...]) -> tuple[int, ...]:
    """h from f = (f_{-1}, ..., f_{d-1}) by the binomial transform."""
    from math import comb

    d = len(f) - 1
    return tuple(
        sum((-1) ** (i - j) * comb(d - j, d - i) * f[j] for j in range(i + 1))
        for i in range(d + 1)
    )


# -- zoo ------------------------------------------------------------------------------


@lru_cache(maxsize=None)
def named_zoo() -> tuple[tuple[str, SimplicialComplex], ...]:
    """The deterministic CM families used by the acceptance suites."""
    out = []
    out += [(f"simplex_boundary({d})", gen.simplex_boundary(d)) for d in range(1, 6)]
    out += [(f"cycle({n})", gen.cycle(n)) for n in range(3, 11)]
    out += [(f"complete_graph({n})", gen.complete_graph(n)) for n in range(3, 9)]
    out += [(f"uniform_matroid({r},{n})", gen.uniform_matroid(r, n))
            for n in range(2, 9) for r in range(1, n)]
    out += [(f"cross_polytope_boundary({d})", gen.cross_polytope_boundary(d)) for d in range(1, 5)]
    out += [(f"cyclic_polytope_boundary(4,{n})", gen.cyclic_polytope_boundary(4, n)) for n in range(6, 11)]
    out += [(f"cyclic_polytope_boundary(5,{n})", gen.cyclic_polytope_boundary(5, n)) for n in range(7, 11)]
    return tuple(out)


@lru_cache(maxsize=None)
def random_cm_zoo(count: int = 200, seed: int = 2024) -> tuple[tuple[str, SimplicialComplex], ...]:
    """Seeded random shellable complexes with at most 10 vertices."""
    out = []
    trial = 0
    while len(out) < count:
        rng = CounterStream(seed, trial, position=1 << 40)
        n = 4 + rng.below(7)
        d = 1 + rng.below(min(4, n - 1))
        from math import comb
        want = 2 + rng.below(comb(n, d) - 1)
        delta = gen.random_shellable(n, d, want, seed, trial)
        trial += 1
        if delta.is_simplex:
            continue
        out.append((f"random_shellable(n={n},d={d},count={want},trial={trial - 1})", delta))
    return tuple(out)


@lru_cache(maxsize=None)
def random_low_dim(count: int = 500, seed: int = 99) -> tuple[tuple[str, SimplicialComplex], ...]:
    """Seeded random 1- and 2-dimensional complexes (pure and mixed), n <= 10."""
    out = []
    trial = 0
    while len(out) < count:
        rng = CounterStream(seed, trial, position=1 << 40)
        n = 3 + rng.below(8)
        d = 2 + rng.below(2)
        kind = rng.below(3)
        if kind == 0:
            from math import comb
            delta = gen.random_pure(n, d, 1 + rng.below(comb(n, d)), seed, trial)
        elif kind == 1:
            delta = gen.random_mixed(n, d, 1 + rng.below(3 * n), seed, trial)
        else:
            delta = gen.random_graph(n, Fraction(1 + rng.below(9), 10), seed, trial)
        trial += 1
        if delta.dim not in (1, 2) or delta.is_simplex:
            continue
        out.append((f"random(kind={kind},n={n},trial={trial - 1})", delta))
    return tuple(out)


@lru_cache(maxsize=None)
def matroid_zoo() -> tuple[tuple[str, SimplicialComplex], ...]:
    """Uniform matroids, graphic matroids of every graph on at most 5 vertices
    (up to isomorphism), and cones and joins of a sample of them."""
    import networkx as nx

    out = [(f"uniform_matroid({r},{n})", gen.uniform_matroid(r, n))
           for n in range(2, 9) for r in range(1, n)]
    graphic = []
    for idx, g in enumerate(nx.graph_atlas_g()):
        if g.number_of_nodes() > 5 or g.number_of_edges() == 0:
            continue
        edges = [(u + 1, v + 1) for u, v in g.edges()]
        graphic.append((f"graphic(atlas {idx})", gen.graphic_matroid(edges)))
    out += graphic
    for name, delta in graphic[::6]:
        out.append((f"cone({name})", gen.cone(delta)))
    small = [g for g in graphic if g[1].n <= 4]
    for (a, x), (b, y) in zip(small[::3], small[1::3]):
        out.append((f"join({a},{b})", gen.join(x, y)))
    out.append(("join(U(2,4),U(1,3))", gen.join(gen.uniform_matroid(2, 4), gen.uniform_matroid(1, 3))))
    return tuple(out)


@pytest.fixture
def c5():
    return gen.cycle(5)


@pytest.fixture
def octahedron():
    return gen.cross_polytope_boundary(3)


@pytest.fixture
def two_edges():
    return from_facets([[1, 2], [3, 4]])
