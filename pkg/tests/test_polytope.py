from fractions import Fraction
from itertools import combinations, permutations

import pytest

from ribbon_moduli.errors import EmptyResult, InvalidFamily, ResourceLimit
from ribbon_moduli.polytope import (
    chain_lattice_isomorphism,
    face_lattice,
    nestohedron,
    ordered_set_partitions,
    permutohedron,
    permutohedron_chain_faces,
    stability_check,
    standard_simplex,
    vertices,
)

FIG7 = [{4}, {1, 4}, {2, 4}, {3, 4}]


def test_simplices():
    assert len(standard_simplex([1, 2, 3]).vertices) == 3
    assert face_lattice(standard_simplex([1, 2, 3, 4])).f_vector == (4, 6, 4)
    assert standard_simplex([1]).vertices == ((Fraction(1),),)
    assert face_lattice(standard_simplex([1, 2, 3])).f_vector == (3, 3)


def test_simplex_vertices():
    assert set(standard_simplex([1, 2, 3]).vertices) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_empty_family_is_simplex():
    assert nestohedron([1, 2, 3], []).vertices == standard_simplex([1, 2, 3]).vertices


def test_p3_vertices():
    P = permutohedron([1, 2, 3], Fraction(1, 8))
    expected = {tuple(Fraction(x, 8) for x in p) for p in permutations((1, 2, 5))}
    assert set(P.vertices) == expected


def test_p4_f_vector():
    L = permutohedron([1, 2, 3, 4]).lattice
    assert L.f_vector == (24, 36, 14)
    assert L.euler_relation_holds()


def test_fig7_polytope():
    P = nestohedron([1, 2, 3, 4], FIG7)
    L = P.lattice
    assert len(L.facets) == 8
    # golden values from the first exact run, cross-checked by the active-set oracle
    assert L.f_vector == (12, 18, 8)
    assert set(vertices(P, "active_set")) == set(P.vertices)


def test_triangle_truncation_is_hexagon():
    assert nestohedron("abc", ["a", "b", "c"]).lattice.f_vector == (6, 6)


def test_edge_cuts_in_a_triangle_add_no_facets():
    # cutting an edge of a triangle is parallel to it, so only the vertex cuts matter
    assert nestohedron("abc", ["a", "b", "c", "ac", "bc"]).lattice.f_vector == (6, 6)


@pytest.mark.parametrize("S,B", [
    ([1, 2, 3, 4], FIG7),
    ([1, 2, 3, 4], [{1}, {2}, {1, 2}]),
    ([1, 2, 3, 4, 5], [{1}, {1, 2}, {1, 2, 3}]),
])
def test_cut_and_active_set_agree(S, B):
    P = nestohedron(S, B)
    assert set(vertices(P, "active_set")) == set(vertices(P, "cut"))


def test_invalid_families():
    with pytest.raises(InvalidFamily):
        nestohedron([1, 2, 3], [set()])
    with pytest.raises(InvalidFamily):
        nestohedron([1, 2, 3], [{1, 2, 3}])
    with pytest.raises(InvalidFamily):
        nestohedron([1, 2, 3], [{4}])


def test_alpha_too_large_is_empty():
    with pytest.raises(EmptyResult):
        permutohedron([1, 2, 3], Fraction(1, 2))


def test_dimension_limit():
    with pytest.raises(ResourceLimit):
        standard_simplex(range(12)).vertices


def test_unknown_method():
    with pytest.raises(ValueError):
        vertices(standard_simplex([1, 2]), "magic")


def test_chain_face_rectangle():
    faces = permutohedron_chain_faces([1, 2, 3, 4])
    face = next(f for f in faces if f.chain == (frozenset({1, 2, 3, 4}), frozenset({1, 3})))
    assert face.dim == 2
    assert face.blocks == (frozenset({2, 4}), frozenset({1, 3}))


def test_chain_counts():
    faces = permutohedron_chain_faces([1, 2, 3, 4])
    by_k = {}
    for f in faces:
        by_k[len(f.chain) - 1] = by_k.get(len(f.chain) - 1, 0) + 1
    assert by_k == {0: 1, 1: 14, 2: 36, 3: 24}
    assert sum(1 for f in permutohedron_chain_faces([1, 2, 3]) if f.dim == 0) == 6


def test_ordered_set_partitions_count():
    # Fubini numbers 1, 3, 13, 75
    assert [sum(1 for _ in ordered_set_partitions(range(k))) for k in (1, 2, 3, 4)] == [1, 3, 13, 75]


@pytest.mark.parametrize("n", [3, 4])
def test_chain_lattice_isomorphism(n):
    S = list(range(1, n + 1))
    match = chain_lattice_isomorphism(S, permutohedron(S).lattice)
    assert all(c.dim == f.dim for c, f in match.items())


def test_stability():
    assert stability_check([1, 2, 3], [])
    assert stability_check([1, 2, 3, 4], [b for k in (1, 2, 3) for b in combinations([1, 2, 3, 4], k)])
    assert stability_check([1, 2, 3, 4], FIG7)
    assert not stability_check([1, 2, 3], [{1}, {2}, {3}], Fraction(1, 2))


def test_monotone_under_added_cuts():
    base = nestohedron([1, 2, 3, 4], [{4}]).lattice
    more = nestohedron([1, 2, 3, 4], [{4}, {1, 4}]).lattice
    base_facets = {t for f in base.facets for t in f.tags}
    more_facets = {t for f in more.facets for t in f.tags}
    assert base_facets <= more_facets
    assert len(more.facets) == len(base.facets) + 1


def test_deterministic():
    a = permutohedron([1, 2, 3, 4])
    b = permutohedron([1, 2, 3, 4])
    assert a.vertices == b.vertices and a.lattice.faces == b.lattice.faces
