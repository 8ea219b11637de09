from fractions import Fraction

import pytest

from ribbon_moduli.enumeration import (
    collapse_poset,
    edge_bounds,
    enumerate_graphs,
    identify_shape,
    labelings,
    resolve_budget,
    verify_closure,
)
from ribbon_moduli.errors import ResourceLimit


@pytest.mark.parametrize("t,bounds", [((0, 3), (2, 3)), ((1, 1), (2, 3)), ((0, 1), (0, -3))])
def test_edge_bounds(t, bounds):
    assert edge_bounds(t) == bounds


def test_empty_type_has_no_graphs():
    assert len(enumerate_graphs((0, 1))) == 0


def test_03_catalog():
    cat = enumerate_graphs((0, 3))
    shapes = sorted(identify_shape(c.graph) for c in cat)
    assert shapes == ["double noose"] * 3 + ["figure eight"] * 3 + ["theta"]
    assert [len(v) for v in cat.by_edge_count.values()] == [3, 4]


def test_11_catalog():
    cat = enumerate_graphs((1, 1))
    assert sorted(identify_shape(c.graph) for c in cat) == ["twisted figure eight", "twisted theta"]


def test_split_matches_brute_force():
    for t in [(0, 3), (1, 1)]:
        a = enumerate_graphs(t, method="split")
        b = enumerate_graphs(t, method="brute")
        assert [c.key for c in a] == [c.key for c in b]


# frozen from the exact enumeration; the orbifold Euler sums below are an independent check
@pytest.mark.parametrize("t,count", [((0, 4), 327), ((1, 2), 43)])
def test_catalog_sizes(t, count):
    assert len(enumerate_graphs(t)) == count


@pytest.mark.parametrize("t,chi", [((0, 3), 1), ((1, 1), Fraction(-1, 12)), ((0, 4), 1), ((1, 2), Fraction(-1, 12))])
def test_signed_automorphism_sum_matches_euler_characteristic(t, chi):
    # sum of (-1)^(e-1)/|Aut| equals (-1)^(n-1) chi(M_{g,n}): chi(M_{0,4}) = -1, chi(M_{1,2}) = 1/12
    cat = enumerate_graphs(t)
    total = sum(Fraction((-1) ** (c.edge_count - 1), c.aut.order) for c in cat)
    assert total == chi


def test_threads_do_not_change_catalog():
    a = enumerate_graphs((0, 4), threads=1)
    b = enumerate_graphs((0, 4), threads=4)
    assert [c.key for c in a] == [c.key for c in b]


def test_budget(monkeypatch):
    with pytest.raises(ResourceLimit):
        enumerate_graphs((0, 5))
    monkeypatch.setenv("RIBBON_MODULI_BUDGET", "6")
    assert resolve_budget() == 6
    with pytest.raises(ResourceLimit):
        enumerate_graphs((0, 4))


def test_labelings_of_theta(theta):
    assert len(labelings(theta)) == 1


def test_poset_03():
    cat = enumerate_graphs((0, 3))
    poset = collapse_poset(cat)
    out = {c.index: len(poset.arrows_from(c.index)) for c in cat}
    by_shape = {}
    for c in cat:
        by_shape.setdefault(identify_shape(c.graph), []).append(out[c.index])
    assert by_shape == {"figure eight": [0, 0, 0], "double noose": [1, 1, 1], "theta": [3]}
    targets = {a.target for a in poset.arrows}
    assert {identify_shape(cat.classes[t].graph) for t in targets} == {"figure eight"}
    assert verify_closure(poset) == []


def test_poset_11():
    poset = collapse_poset(enumerate_graphs((1, 1)))
    assert len(poset.arrows) == 1
    assert verify_closure(poset) == []


def test_closure_12():
    assert verify_closure(collapse_poset(enumerate_graphs((1, 2)))) == []
