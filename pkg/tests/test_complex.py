from __future__ import annotations

import itertools

import pytest

from facering import generators as gen
from facering.complex import (
    core,
    cone_apexes,
    delete_vertices,
    euler_characteristic,
    f_vector,
    faces,
    from_facets,
    h_vector,
    induced,
    irrelevant_complex,
    join,
    link,
    skeleton,
)
from facering.errors import (
    DimensionOutOfRange,
    EmptyInput,
    EmptySelection,
    NotAFace,
    TooManyVertices,
    UnknownVertex,
)

from conftest import named_zoo, oracle_faces, oracle_h_vector


def test_duplicates_merge():
    delta = from_facets([[1, 2], [2, 3], [1, 2]])
    assert delta.n == 3
    assert delta.facets == [(1, 2), (2, 3)]


def test_subsets_absorbed():
    delta = from_facets([[1, 2], [1], [3]])
    assert delta.n == 3
    assert sorted(delta.facets) == [(1, 2), (3,)]


def test_c5_construction(c5):
    assert c5.n == 5 and c5.dim == 1 and len(c5.facets) == 5


def test_empty_input_rejected():
    with pytest.raises(EmptyInput):
        from_facets([])


def test_vertex_cap():
    with pytest.raises(TooManyVertices):
        from_facets([[i] for i in range(64)])


def test_irrelevant_complex():
    e = irrelevant_complex()
    assert e.is_irrelevant and e.dim == -1 and e.n == 0
    assert f_vector(e) == (1,)


def test_facet_order_is_canonical():
    base = [[1, 2, 3], [2, 4], [3, 4], [5]]
    reps = {repr(from_facets(list(p)).facets) for p in itertools.permutations(base)}
    assert len(reps) == 1


def test_non_comparable_labels_keep_first_appearance():
    delta = from_facets([["b", 2], [2, "a"]])
    assert delta.labels == ("b", 2, "a")


def test_faces():
    tet = gen.simplex_boundary(3)
    assert len(faces(tet, 1)) == 6
    assert faces(tet, -1) == [()]
    assert sorted(faces(gen.cycle(5), 1)) == [(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]
    with pytest.raises(DimensionOutOfRange):
        faces(tet, 3)


def test_f_and_h_examples(c5):
    tet = gen.simplex_boundary(3)
    assert f_vector(tet) == (1, 4, 6, 4)
    assert h_vector(tet) == (1, 1, 1, 1)
    assert f_vector(c5) == (1, 5, 5)
    assert h_vector(c5) == (1, 3, 1)
    assert h_vector(gen.simplex(4)) == (1, 0, 0, 0, 0)


@pytest.mark.parametrize("name,delta", named_zoo())
def test_h_vector_invariants(name, delta):
    f = f_vector(delta)
    h = h_vector(delta)
    assert h == oracle_h_vector(f)
    assert sum(h) == f[-1]
    assert h[0] == 1
    assert h[1] == delta.n - delta.d
    expected = oracle_faces(delta.facets)
    assert sum(f) == len(expected)


def test_induced_examples(c5):
    sub = induced(c5, [1, 2, 4])
    assert sorted(sub.facets) == [(1, 2), (4,)]
    assert induced(c5, c5.labels).facets == c5.facets
    k4 = gen.complete_graph(4)
    for w in itertools.combinations(k4.labels, 3):
        assert len(induced(k4, w).facets) == 3
    with pytest.raises(EmptySelection):
        induced(c5, [])
    with pytest.raises(UnknownVertex):
        induced(c5, [9])


def test_induced_composes():
    delta = gen.cyclic_polytope_boundary(4, 7)
    w = [1, 2, 4, 5, 7]
    w2 = [2, 4, 7]
    assert induced(induced(delta, w), w2).facets == induced(delta, w2).facets


def test_skeleton():
    assert len(skeleton(gen.simplex_boundary(3), 0).facets) == 4
    delta = gen.cross_polytope_boundary(4)
    assert skeleton(skeleton(delta, 2), 1).facets == skeleton(delta, 1).facets
    with pytest.raises(DimensionOutOfRange):
        skeleton(delta, 4)


def test_link_examples(c5):
    lk = link(c5, [1])
    assert sorted(lk.facets) == [(2,), (5,)]
    with pytest.raises(NotAFace):
        link(c5, [1, 3])
    top = link(c5, [1, 2])
    assert top.is_irrelevant


def test_link_and_skeleton_commute():
    delta = gen.cross_polytope_boundary(4)
    for v in delta.labels:
        for i in range(0, delta.dim - 1):
            a = link(skeleton(delta, i + 1), [v])
            b = skeleton(link(delta, [v]), i)
            assert a.facets == b.facets


def test_cone_and_core(c5):
    coned = gen.cone(c5)
    assert cone_apexes(coned) == ("apex",)
    assert core(coned).facets == c5.facets
    assert cone_apexes(c5) == ()
    assert join(c5, from_facets([["apex"]])).facets == coned.facets


def test_delete_vertices_is_induced_complement(c5):
    assert delete_vertices(c5, [3]).facets == induced(c5, [1, 2, 4, 5]).facets


def test_euler_characteristic(c5):
    assert euler_characteristic(gen.simplex_boundary(3)) == 2
    assert euler_characteristic(from_facets([[1]])) == 1
    assert euler_characteristic(c5) == 0
    assert euler_characteristic(c5, reduced=True) == -1
