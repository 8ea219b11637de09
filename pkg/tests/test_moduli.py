from fractions import Fraction

import pytest

from ribbon_moduli.enumeration import enumerate_graphs, identify_shape
from ribbon_moduli.errors import NotASurface
from ribbon_moduli.moduli import (
    Attachment,
    OrbiCellComplex,
    assemble_complex,
    building_family,
    compact_cell,
    complex_stats,
)


def fs(*sets):
    return frozenset(frozenset(s) for s in sets)


def test_theta_family(theta):
    fam = building_family(theta)
    assert fam.B == fs({0}, {1}, {2})
    assert fam.A == fs({0, 1}, {0, 2}, {1, 2}, {0, 1, 2})


def test_double_noose_family(double_noose):
    a, b, c = 0, 1, 2  # loops (1 2), (3 4) and the middle edge (5 6)
    assert building_family(double_noose).B == fs({a}, {b}, {c}, {a, c}, {b, c})


def test_figure_eight_family(figure_eight):
    assert building_family(figure_eight).B == fs({0}, {1})


def test_families_are_aut_invariant():
    for t in [(0, 3), (1, 1), (1, 2)]:
        for c in enumerate_graphs(t):
            assert building_family(c.graph).is_invariant(c.aut.edge_action_elements)


def test_theta_cell_is_hexagon(theta):
    cell = compact_cell(theta)
    assert cell.lattice.f_vector == (6, 6)
    assert cell.vertex_action == (tuple(range(6)),)


def test_double_noose_cell_is_hexagon(double_noose):
    # the two edge cuts are parallel to the loop facets, leaving a hexagon
    assert compact_cell(double_noose).lattice.f_vector == (6, 6)


def test_figure_eight_cell(figure_eight):
    cell = compact_cell(figure_eight)
    assert len(cell.polytope.vertices) == 2
    assert all(0 < x < 1 for v in cell.polytope.vertices for x in v)


def test_twisted_theta_cell(twisted_theta):
    cell = compact_cell(twisted_theta)
    assert cell.lattice.f_vector == (6, 6)
    assert len(set(cell.vertex_action)) == 3


def test_open_03():
    C = assemble_complex((0, 3))
    st = complex_stats(C)
    assert st.cells_by_dim == (0, 3, 4)
    assert st.orbifold_euler == 1


def test_open_11():
    st = complex_stats(assemble_complex((1, 1)))
    assert st.cells_by_dim == (0, 1, 1)
    assert st.orbifold_euler == Fraction(-1, 12)


def test_compact_03_is_disc():
    C = assemble_complex((0, 3), compact=True)
    st = complex_stats(C)
    assert st.cells_by_dim == (18, 21, 4)
    assert (st.euler, st.boundary_circles, st.components, st.is_surface) == (1, 1, 1, True)


def test_compact_11():
    st = complex_stats(assemble_complex((1, 1), compact=True))
    assert st.boundary_circles == 1 and st.is_surface
    assert st.euler == 1


def test_attachments_drop_dimension():
    C = assemble_complex((0, 3), compact=True)
    for a in C.attachments:
        assert C.cells[a.source].dim - len(a.forest) == C.cells[a.target].dim
        assert len(a.vertex_map) == len(C.cells[a.target].polytope.vertices)


def test_attachment_targets_03():
    C = assemble_complex((0, 3))
    names = {(identify_shape(C.cells[a.source].entry.graph), identify_shape(C.cells[a.target].entry.graph))
             for a in C.attachments}
    assert names == {("theta", "figure eight"), ("double noose", "figure eight")}


def test_compact_12_glues_consistently():
    C = assemble_complex((1, 2), compact=True)
    st = complex_stats(C)
    assert st.orbifold_euler == Fraction(-1, 12)
    assert st.euler is None and len(st.cells_by_dim) == 6


def test_not_a_surface_detected():
    # glue a second double noose onto the figure eight already shared by theta and a double noose
    C = assemble_complex((0, 3), compact=True)
    dn = [i for i, c in enumerate(C.cells) if identify_shape(c.entry.graph) == "double noose"]
    first = next(a for a in C.attachments if a.source == dn[0])
    second = next(a for a in C.attachments if a.source == dn[1])
    fake = Attachment(dn[1], second.forest, first.target, second.edge_map, second.vertex_map)
    bad = OrbiCellComplex(C.top_type, True, C.catalog, C.poset, C.cells, C.attachments + (fake,))
    with pytest.raises(NotASurface):
        complex_stats(bad)
    assert complex_stats(bad, surface_check=False).is_surface is False
