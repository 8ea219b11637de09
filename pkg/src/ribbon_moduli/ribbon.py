"""Ribbon graphs as half-edge permutation data.

A ribbon graph is a pair of permutations of the half-edge set ``H``:
``sigma0`` rotates half-edges around their vertex and ``sigma1`` swaps the two
halves of each edge. Boundary cycles are the orbits of
``sigma_inf = sigma0^-1 sigma1`` (apply ``sigma1`` first).

Internally half-edges are ``0..2e-1`` and edges are numbered by their
smallest half-edge. :func:`build_graph`, :func:`boundary_cycles` and the JSON
format use 1-based half-edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from . import kernels
from .errors import (
    Disconnected,
    GraphError,
    LabelMismatch,
    LoopContraction,
    NotForest,
    NotInvolution,
    ValenceTooLow,
)


class TopologicalType(NamedTuple):
    genus: int
    cycles: int


class TriangulationCounts(NamedTuple):
    faces: int
    edges: int
    vertices: int
    euler: int


def perm_cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycles of ``perm``, each starting at its least element."""
    seen = [False] * len(perm)
    out = []
    for h in range(len(perm)):
        if seen[h]:
            continue
        cyc = []
        x = h
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        out.append(tuple(cyc))
    return out


def perm_inverse(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def perm_compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """``a o b``: apply ``b`` first."""
    return tuple(a[b[i]] for i in range(len(b)))


def _orbit_index(perm: Sequence[int]) -> tuple[list[tuple[int, ...]], list[int]]:
    cycles = perm_cycles(perm)
    index = [0] * len(perm)
    for i, cyc in enumerate(cycles):
        for h in cyc:
            index[h] = i
    return cycles, index


@dataclass(frozen=True)
class HalfEdgeSystem:
    """Validated ``(sigma0, sigma1)`` pair on ``range(2e)``."""

    sigma0: tuple[int, ...]
    sigma1: tuple[int, ...]

    def __post_init__(self) -> None:
        s0, s1 = self.sigma0, self.sigma1
        size = len(s1)
        if size == 0 or size % 2 or len(s0) != size:
            raise NotInvolution("half-edge count must be even, positive and shared by both permutations")
        if sorted(s1) != list(range(size)) or any(s1[s1[h]] != h or s1[h] == h for h in range(size)):
            raise NotInvolution("sigma1 must be a fixed-point-free involution")
        if sorted(s0) != list(range(size)):
            raise GraphError("sigma0 is not a permutation of the half-edges")
        for cyc in perm_cycles(s0):
            if len(cyc) < 3:
                raise ValenceTooLow(f"vertex {[h + 1 for h in cyc]} has valence {len(cyc)} < 3")
        seen = {0}
        stack = [0]
        while stack:
            h = stack.pop()
            for x in (s0[h], s1[h]):
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        if len(seen) != size:
            raise Disconnected("sigma0 and sigma1 do not act transitively")

    @property
    def half_edge_count(self) -> int:
        return len(self.sigma1)


@dataclass(frozen=True)
class RibbonGraph:
    """A half-edge system with its boundary cycles labeled ``1..n``.

    ``half_edge_label[h]`` is the label of the boundary cycle through ``h``.
    A label of 0 everywhere denotes an unlabeled graph (used only for
    unlabeled canonical forms).
    """

    system: HalfEdgeSystem
    half_edge_label: tuple[int, ...]

    def __post_init__(self) -> None:
        labels = self.half_edge_label
        if len(labels) != self.system.half_edge_count:
            raise LabelMismatch("one label per half-edge is required")
        if all(x == 0 for x in labels):
            return
        seen = []
        for orbit in self.boundary_orbits_unordered:
            vals = {labels[h] for h in orbit}
            if len(vals) != 1:
                raise LabelMismatch("labels are not constant on a boundary cycle")
            seen.append(vals.pop())
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise LabelMismatch("labels must biject onto the boundary cycles")

    # -- raw permutation data -------------------------------------------
    @property
    def sigma0(self) -> tuple[int, ...]:
        return self.system.sigma0

    @property
    def sigma1(self) -> tuple[int, ...]:
        return self.system.sigma1

    @cached_property
    def sigma_inf(self) -> tuple[int, ...]:
        inv0 = perm_inverse(self.sigma0)
        return tuple(inv0[self.sigma1[h]] for h in range(len(inv0)))

    @property
    def half_edge_count(self) -> int:
        return len(self.sigma1)

    # -- cells ----------------------------------------------------------
    @cached_property
    def _vertex_data(self):
        return _orbit_index(self.sigma0)

    @property
    def vertices(self) -> list[tuple[int, ...]]:
        return self._vertex_data[0]

    @property
    def vertex_of(self) -> list[int]:
        return self._vertex_data[1]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((h, self.sigma1[h]) for h in range(self.half_edge_count) if h < self.sigma1[h])

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        out = [0] * self.half_edge_count
        for i, (a, b) in enumerate(self.edges):
            out[a] = out[b] = i
        return tuple(out)

    @property
    def edge_count(self) -> int:
        return self.half_edge_count // 2

    @cached_property
    def boundary_orbits_unordered(self) -> list[tuple[int, ...]]:
        return perm_cycles(self.sigma_inf)

    @cached_property
    def boundary_orbits(self) -> list[tuple[int, ...]]:
        """Boundary cycles (0-based, cyclic order of ``sigma_inf``) in label order."""
        orbits = self.boundary_orbits_unordered
        if self.is_labeled:
            return sorted(orbits, key=lambda o: self.half_edge_label[o[0]])
        return orbits

    @property
    def is_labeled(self) -> bool:
        return self.half_edge_label[0] != 0

    @property
    def cycle_count(self) -> int:
        return len(self.boundary_orbits_unordered)

    def loops(self) -> list[int]:
        vo = self.vertex_of
        return [i for i, (a, b) in enumerate(self.edges) if vo[a] == vo[b]]

    def __repr__(self) -> str:
        s0 = "".join("(" + " ".join(str(h + 1) for h in c) + ")" for c in self.vertices)
        s1 = "".join(f"({a + 1} {b + 1})" for a, b in self.edges)
        return f"RibbonGraph(sigma0={s0}, sigma1={s1}, labels={self.half_edge_label})"


def from_arrays(sigma0: Sequence[int], sigma1: Sequence[int],
                half_edge_label: Sequence[int] | None = None) -> RibbonGraph:
    """Validated graph from 0-based permutation arrays.

    Without labels, boundary cycles are labeled by ascending least half-edge.
    """
    system = HalfEdgeSystem(tuple(sigma0), tuple(sigma1))
    if half_edge_label is None:
        g = RibbonGraph(system, (0,) * len(sigma1))
        half_edge_label = default_labels(g)
    return RibbonGraph(system, tuple(half_edge_label))


def default_labels(g: RibbonGraph) -> tuple[int, ...]:
    lab = [0] * g.half_edge_count
    orbits = sorted(g.boundary_orbits_unordered, key=min)
    for i, orbit in enumerate(orbits, start=1):
        for h in orbit:
            lab[h] = i
    return tuple(lab)


def build_graph(sigma0_cycles: Iterable[Iterable[int]], sigma1_pairs: Iterable[Iterable[int]],
                labels: Mapping[int, int] | None = None) -> RibbonGraph:
    """Build a graph from 1-based cycle notation.

    ``labels`` maps each boundary label to any half-edge on that cycle. When
    omitted, cycles are labeled by ascending least half-edge.
    """
    pairs = [tuple(p) for p in sigma1_pairs]
    size = 2 * len(pairs)
    s1 = [-1] * size
    for p in pairs:
        if len(p) != 2:
            raise NotInvolution(f"{p} is not a transposition")
        a, b = p[0] - 1, p[1] - 1
        if not (0 <= a < size and 0 <= b < size) or a == b or s1[a] >= 0 or s1[b] >= 0:
            raise NotInvolution(f"sigma1 pair {p} overlaps, repeats or leaves 1..{size}")
        s1[a], s1[b] = b, a
    s0 = list(range(size))
    seen = set()
    for cyc in sigma0_cycles:
        cyc = [h - 1 for h in cyc]
        for i, h in enumerate(cyc):
            if not 0 <= h < size or h in seen:
                raise GraphError(f"sigma0 cycle entry {h + 1} repeats or leaves 1..{size}")
            seen.add(h)
            s0[h] = cyc[(i + 1) % len(cyc)]
    g = from_arrays(s0, s1)
    if labels is None:
        return g
    lab = [0] * size
    for label, rep in labels.items():
        rep = int(rep) - 1
        if not 0 <= rep < size:
            raise LabelMismatch(f"label {label} points at unknown half-edge {rep + 1}")
        orbit = next(o for o in g.boundary_orbits_unordered if rep in o)
        for h in orbit:
            if lab[h]:
                raise LabelMismatch("two labels on one boundary cycle")
            lab[h] = int(label)
    if 0 in lab:
        raise LabelMismatch("some boundary cycle has no label")
    return RibbonGraph(g.system, tuple(lab))


def to_cycles(g: RibbonGraph) -> tuple[list[list[int]], list[list[int]], dict[int, int]]:
    """1-based ``(sigma0 cycles, sigma1 pairs, label -> representative)``."""
    s0 = [[h + 1 for h in c] for c in g.vertices]
    s1 = [[a + 1, b + 1] for a, b in g.edges]
    labels = {g.half_edge_label[o[0]]: min(o) + 1 for o in g.boundary_orbits}
    return s0, s1, labels


def boundary_cycles(g: RibbonGraph) -> list[tuple[int, ...]]:
    """Boundary cycles as 1-based cyclic sequences, in label order."""
    return [tuple(h + 1 for h in orbit) for orbit in g.boundary_orbits]


def boundary_subgraph(g: RibbonGraph, label: int) -> frozenset[int]:
    """Edge ids touched by the boundary cycle carrying ``label``."""
    orbit = g.boundary_orbits[label - 1]
    return frozenset(g.edge_of[h] for h in orbit)


def top_type(g: RibbonGraph) -> TopologicalType:
    v, e, n = len(g.vertices), g.edge_count, g.cycle_count
    twice = 2 - v + e - n
    if twice < 0 or twice % 2:
        raise AssertionError(f"corrupted graph data: 2g = {twice}")
    return TopologicalType(twice // 2, n)


def triangulation_counts(g: RibbonGraph) -> TriangulationCounts:
    e = g.edge_count
    faces, edges, verts = 2 * e, 3 * e, len(g.vertices) + g.cycle_count
    return TriangulationCounts(faces, edges, verts, verts - edges + faces)


# -- canonical forms and isomorphisms -------------------------------------

def _canonical(g: RibbonGraph, labeled: bool):
    labels = g.half_edge_label if labeled else (0,) * g.half_edge_count
    return kernels.canonical(g.sigma0, g.sigma1, labels)


def canonical_form(g: RibbonGraph, labeled: bool = True) -> tuple[int, ...]:
    """Relabeling-invariant encoding; equal iff the graphs are isomorphic."""
    return _canonical(g, labeled)[0]


def relabel(g: RibbonGraph, perm: Sequence[int]) -> RibbonGraph:
    """Graph transported along the half-edge bijection ``h -> perm[h]``."""
    size = g.half_edge_count
    s0 = [0] * size
    s1 = [0] * size
    lab = [0] * size
    for h in range(size):
        s0[perm[h]] = perm[g.sigma0[h]]
        s1[perm[h]] = perm[g.sigma1[h]]
        lab[perm[h]] = g.half_edge_label[h]
    return RibbonGraph(HalfEdgeSystem(tuple(s0), tuple(s1)), tuple(lab))


def canonical_graph(g: RibbonGraph) -> RibbonGraph:
    """The representative whose half-edge numbering is the canonical traversal."""
    _, orders = _canonical(g, True)
    order = orders[0]
    perm = [0] * len(order)
    for new, old in enumerate(order):
        perm[old] = new
    return relabel(g, perm)


def _iso_from_orders(src_order: Sequence[int], dst_order: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(src_order)
    for a, b in zip(src_order, dst_order):
        out[a] = b
    return tuple(out)


def isomorphism(g: RibbonGraph, h: RibbonGraph, labeled: bool = True) -> tuple[int, ...] | None:
    """A (label-preserving) half-edge bijection ``eta`` with ``eta g = h eta``, or None."""
    if g.half_edge_count != h.half_edge_count:
        return None
    eg, og = _canonical(g, labeled)
    eh, oh = _canonical(h, labeled)
    if eg != eh:
        return None
    return _iso_from_orders(og[0], oh[0])


def is_isomorphism(g: RibbonGraph, h: RibbonGraph, eta: Sequence[int], labeled: bool = True) -> bool:
    size = g.half_edge_count
    if size != h.half_edge_count or sorted(eta) != list(range(size)):
        return False
    for x in range(size):
        if eta[g.sigma0[x]] != h.sigma0[eta[x]] or eta[g.sigma1[x]] != h.sigma1[eta[x]]:
            return False
        if labeled and g.half_edge_label[x] != h.half_edge_label[eta[x]]:
            return False
    return True


@dataclass(frozen=True)
class AutomorphismGroup:
    elements: tuple[tuple[int, ...], ...]
    edge_action_elements: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def edge_action_order(self) -> int:
        return len(self.edge_action_elements)


def edge_action(g: RibbonGraph, eta: Sequence[int]) -> tuple[int, ...]:
    return tuple(g.edge_of[eta[a]] for a, _ in g.edges)


def automorphism_group(g: RibbonGraph, labeled: bool = True) -> AutomorphismGroup:
    """All (label-preserving) automorphisms and their image acting on edges."""
    _, orders = _canonical(g, labeled)
    elements = sorted(_iso_from_orders(orders[0], o) for o in orders)
    edge_elems = sorted({edge_action(g, eta) for eta in elements})
    return AutomorphismGroup(tuple(elements), tuple(edge_elems))


def cycle_action(g: RibbonGraph, eta: Sequence[int]) -> tuple[int, ...]:
    """Permutation of boundary-cycle indices (positions in ``boundary_orbits``)."""
    where = {}
    for i, orbit in enumerate(g.boundary_orbits):
        for h in orbit:
            where[h] = i
    return tuple(where[eta[o[0]]] for o in g.boundary_orbits)


# -- forests and collapses ------------------------------------------------

def is_forest(g: RibbonGraph, edge_set: Iterable[int]) -> bool:
    parent = list(range(len(g.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    vo = g.vertex_of
    for e in edge_set:
        a, b = g.edges[e]
        ra, rb = find(vo[a]), find(vo[b])
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def contract_tracked(g: RibbonGraph, edge: int) -> tuple[RibbonGraph, tuple[int, ...]]:
    """Contract a non-loop edge; also return old -> new half-edge map (-1 if removed)."""
    h, k = g.edges[edge]
    if g.vertex_of[h] == g.vertex_of[k]:
        raise LoopContraction(f"edge {edge} is a loop")
    s0 = list(g.sigma0)
    # splice: (h a1..ap)(k b1..bq) -> (a1..ap b1..bq)
    pred_h = g.vertices[g.vertex_of[h]]
    pred_h = pred_h[pred_h.index(h) - 1]
    pred_k = g.vertices[g.vertex_of[k]]
    pred_k = pred_k[pred_k.index(k) - 1]
    s0[pred_h] = g.sigma0[k]
    s0[pred_k] = g.sigma0[h]
    keep = [x for x in range(g.half_edge_count) if x not in (h, k)]
    new = [-1] * g.half_edge_count
    for i, x in enumerate(keep):
        new[x] = i
    ns0 = tuple(new[s0[x]] for x in keep)
    ns1 = tuple(new[g.sigma1[x]] for x in keep)
    labels = tuple(g.half_edge_label[x] for x in keep)
    return RibbonGraph(HalfEdgeSystem(ns0, ns1), labels), tuple(new)


def contract(g: RibbonGraph, edge: int) -> RibbonGraph:
    return contract_tracked(g, edge)[0]


def collapse_forest_tracked(g: RibbonGraph, forest: Iterable[int]) -> tuple[RibbonGraph, tuple[int, ...]]:
    forest = sorted(set(forest))
    if len(forest) >= g.edge_count or not is_forest(g, forest):
        raise NotForest(f"{forest} is not a proper forest")
    mapping = tuple(range(g.half_edge_count))
    cur = g
    for e in forest:
        rep = mapping[g.edges[e][0]]
        cur, step = contract_tracked(cur, cur.edge_of[rep])
        mapping = tuple(step[m] if m >= 0 else -1 for m in mapping)
    return cur, mapping


def collapse_forest(g: RibbonGraph, forest: Iterable[int]) -> RibbonGraph:
    return collapse_forest_tracked(g, forest)[0]


def edge_map_from_halfedges(g: RibbonGraph, target: RibbonGraph, half_map: Sequence[int]) -> dict[int, int]:
    """Induced edge map for the surviving edges."""
    out = {}
    for i, (a, _) in enumerate(g.edges):
        if half_map[a] >= 0:
            out[i] = target.edge_of[half_map[a]]
    return out


# -- metrics --------------------------------------------------------------

def perimeter_map(g: RibbonGraph, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Boundary-cycle lengths in label order for simplex coordinates ``x``.

    Edge length is ``x_e / 2``, so a point of the open simplex maps to a
    decoration vector summing to 1.
    """
    x = [Fraction(v) for v in x]
    if len(x) != g.edge_count or any(v <= 0 for v in x) or sum(x) != 1:
        raise ValueError("metric must be strictly positive and sum to 1")
    return tuple(sum((x[g.edge_of[h]] for h in orbit), Fraction(0)) / 2 for orbit in g.boundary_orbits)
