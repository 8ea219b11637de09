"""Enumeration of labeled ribbon graphs of a topological type and their collapse poset.

Unlabeled classes are grown from the one-vertex graphs by vertex splitting
(the inverse of contracting a non-loop edge), deduplicated by unlabeled
canonical form at each edge count. The brute-force route over all ``sigma0``
with a fixed standard ``sigma1`` is kept as an independent cross-check for
small half-edge counts.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import GraphError, ResourceLimit
from .ribbon import (
    AutomorphismGroup,
    RibbonGraph,
    TopologicalType,
    automorphism_group,
    canonical_form,
    canonical_graph,
    collapse_forest_tracked,
    cycle_action,
    edge_action,
    from_arrays,
    is_forest,
    isomorphism,
    top_type,
)

DEFAULT_BUDGET = 12
BRUTE_FORCE_LIMIT = 8
BUDGET_ENV = "RIBBON_MODULI_BUDGET"


def edge_bounds(t: TopologicalType | tuple[int, int]) -> tuple[int, int]:
    g, n = t
    return 2 * g + n - 1, 6 * g - 6 + 3 * n


def resolve_budget(max_half_edges: int | None = None) -> int:
    if max_half_edges is not None:
        return int(max_half_edges)
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class CatalogEntry:
    index: int
    graph: RibbonGraph
    key: tuple[int, ...]
    aut: AutomorphismGroup

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    @property
    def dim(self) -> int:
        return self.graph.edge_count - 1


@dataclass
class GraphCatalog:
    top_type: TopologicalType
    classes: tuple[CatalogEntry, ...]
    _by_key: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._by_key = {c.key: c for c in self.classes}

    @property
    def by_edge_count(self) -> dict[int, tuple[CatalogEntry, ...]]:
        out: dict[int, list[CatalogEntry]] = {}
        for c in self.classes:
            out.setdefault(c.edge_count, []).append(c)
        return {e: tuple(v) for e, v in sorted(out.items())}

    def lookup(self, g: RibbonGraph) -> CatalogEntry:
        return self._by_key[canonical_form(g)]

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.classes)


# -- unlabeled generation -------------------------------------------------

def _matchings(items: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first = items[0]
    for i in range(1, len(items)):
        rest = list(items[1:i]) + list(items[i + 1:])
        for m in _matchings(rest):
            yield [(first, items[i])] + m


def one_vertex_graphs(e: int) -> list[RibbonGraph]:
    size = 2 * e
    s0 = [(h + 1) % size for h in range(size)]
    out = []
    for m in _matchings(list(range(size))):
        s1 = [0] * size
        for a, b in m:
            s1[a], s1[b] = b, a
        out.append(from_arrays(s0, s1))
    return out


def vertex_splits(g: RibbonGraph) -> Iterator[RibbonGraph]:
    """Every graph with one more edge whose contraction of that edge gives ``g``."""
    size = g.half_edge_count
    x, y = size, size + 1
    for cyc in g.vertices:
        d = len(cyc)
        if d < 4:
            continue
        for i in range(d):
            for a in range(2, d - 1):
                arc1 = [cyc[(i + j) % d] for j in range(a)]
                arc2 = [cyc[(i + j) % d] for j in range(a, d)]
                s0 = list(g.sigma0) + [0, 0]
                for arc, new in ((arc1, x), (arc2, y)):
                    ring = arc + [new]
                    for j, h in enumerate(ring):
                        s0[h] = ring[(j + 1) % len(ring)]
                s1 = list(g.sigma1) + [y, x]
                yield from_arrays(s0, s1)


def _dedupe(graphs: Iterable[RibbonGraph]) -> dict[tuple[int, ...], RibbonGraph]:
    out: dict[tuple[int, ...], RibbonGraph] = {}
    for g in graphs:
        key = canonical_form(g, labeled=False)
        if key not in out:
            out[key] = g
    return out


def _map(fn, items, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(i) for i in items]


def unlabeled_by_splitting(t: TopologicalType, threads: int = 1) -> dict[int, list[RibbonGraph]]:
    g, n = t
    e_min, e_max = edge_bounds(t)
    out: dict[int, list[RibbonGraph]] = {}
    if e_min > e_max or e_min < 1:
        return out
    level = {k: v for k, v in _dedupe(
        gr for gr in one_vertex_graphs(e_min) if top_type(gr) == (g, n)).items()}
    out[e_min] = [level[k] for k in sorted(level)]
    for e in range(e_min + 1, e_max + 1):
        parents = out[e - 1]
        children = _map(lambda p: list(vertex_splits(p)), parents, threads)
        level = _dedupe(c for group in children for c in group)
        out[e] = [level[k] for k in sorted(level)]
    return out


def _cyclic_arrangements(block: Sequence[int]) -> Iterator[tuple[int, ...]]:
    first, rest = block[0], block[1:]
    for perm in itertools.permutations(rest):
        yield (first,) + perm


def _blocks(items: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """Set partitions of ``items`` into blocks of size at least 3."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k in range(2, len(rest) + 1):
        for others in itertools.combinations(rest, k):
            remaining = [x for x in rest if x not in others]
            if 0 < len(remaining) < 3:
                continue
            for tail in _blocks(remaining):
                yield [(first,) + others] + tail


def brute_force_sigma0(e: int) -> Iterator[list[int]]:
    """All ``sigma0`` on ``2e`` half-edges with every cycle of length >= 3."""
    size = 2 * e
    for partition in _blocks(list(range(size))):
        for arrangement in itertools.product(*(list(_cyclic_arrangements(b)) for b in partition)):
            s0 = [0] * size
            for cyc in arrangement:
                for j, h in enumerate(cyc):
                    s0[h] = cyc[(j + 1) % len(cyc)]
            yield s0


def unlabeled_by_brute_force(t: TopologicalType) -> dict[int, list[RibbonGraph]]:
    g, n = t
    e_min, e_max = edge_bounds(t)
    out: dict[int, list[RibbonGraph]] = {}
    for e in range(max(e_min, 1), e_max + 1):
        if 2 * e > BRUTE_FORCE_LIMIT:
            raise ResourceLimit(f"brute-force enumeration limited to {BRUTE_FORCE_LIMIT} half-edges")
        s1 = [h ^ 1 for h in range(2 * e)]
        found = []
        for s0 in brute_force_sigma0(e):
            try:
                gr = from_arrays(s0, s1)
            except GraphError:
                continue
            if top_type(gr) == (g, n):
                found.append(gr)
        level = _dedupe(found)
        out[e] = [level[k] for k in sorted(level)]
    return out


# -- labeling ------------------------------------------------------------

def labelings(g: RibbonGraph) -> list[RibbonGraph]:
    """One graph per orbit of boundary labelings under the unlabeled automorphisms."""
    n = g.cycle_count
    group = [cycle_action(g, eta) for eta in automorphism_group(g, labeled=False).elements]
    reps = set()
    for lab in itertools.permutations(range(1, n + 1)):
        reps.add(min(tuple(lab[p[i]] for i in range(n)) for p in group))
    out = []
    for lab in sorted(reps):
        half = [0] * g.half_edge_count
        for i, orbit in enumerate(g.boundary_orbits):
            for h in orbit:
                half[h] = lab[i]
        out.append(RibbonGraph(g.system, tuple(half)))
    return out


def enumerate_graphs(t: TopologicalType | tuple[int, int], max_half_edges: int | None = None,
                     method: str = "split", threads: int = 1) -> GraphCatalog:
    """All labeled ribbon graphs of type ``t`` up to isomorphism."""
    t = TopologicalType(*t)
    e_min, e_max = edge_bounds(t)
    budget = resolve_budget(max_half_edges)
    if e_min <= e_max and 2 * e_max > budget:
        raise ResourceLimit(f"type {tuple(t)} needs {2 * e_max} half-edges; budget is {budget}")
    if method == "split":
        unlabeled = unlabeled_by_splitting(t, threads)
    elif method == "brute":
        unlabeled = unlabeled_by_brute_force(t)
    else:
        raise ValueError(f"unknown enumeration method {method!r}")

    def expand(u: RibbonGraph) -> list[CatalogEntry]:
        rows = []
        for lab in labelings(u):
            rep = canonical_graph(lab)
            rows.append((canonical_form(rep), rep))
        return rows

    flat = [u for e in sorted(unlabeled) for u in unlabeled[e]]
    rows = [r for group in _map(expand, flat, threads) for r in group]
    rows.sort(key=lambda r: (r[1].edge_count, r[0]))
    classes = tuple(CatalogEntry(i, rep, key, automorphism_group(rep)) for i, (key, rep) in enumerate(rows))
    return GraphCatalog(t, classes)


# -- collapse poset ------------------------------------------------------

@dataclass(frozen=True)
class Arrow:
    source: int
    forest: tuple[int, ...]
    target: int
    half_map: tuple[int, ...]  # source half-edge -> target half-edge, -1 on the forest

    def edge_map(self, catalog: GraphCatalog) -> dict[int, int]:
        src = catalog.classes[self.source].graph
        tgt = catalog.classes[self.target].graph
        return {i: tgt.edge_of[self.half_map[a]] for i, (a, _) in enumerate(src.edges) if self.half_map[a] >= 0}


@dataclass(frozen=True)
class CollapsePoset:
    catalog: GraphCatalog
    arrows: tuple[Arrow, ...]

    def arrows_from(self, index: int) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.source == index)


def forests(g: RibbonGraph) -> list[tuple[int, ...]]:
    """Non-empty proper edge subsets spanning forests."""
    e = g.edge_count
    out = []
    for k in range(1, e):
        for sub in itertools.combinations(range(e), k):
            if is_forest(g, sub):
                out.append(sub)
    return out


def forest_orbit_reps(g: RibbonGraph, aut: AutomorphismGroup) -> list[tuple[int, ...]]:
    reps = set()
    for f in forests(g):
        reps.add(min(tuple(sorted(p[i] for i in f)) for p in aut.edge_action_elements))
    return sorted(reps, key=lambda f: (len(f), f))


def collapse_arrow(catalog: GraphCatalog, entry: CatalogEntry, forest: Sequence[int]) -> Arrow:
    collapsed, half = collapse_forest_tracked(entry.graph, forest)
    target = catalog.lookup(collapsed)
    eta = isomorphism(collapsed, target.graph)
    half_map = tuple(eta[h] if h >= 0 else -1 for h in half)
    return Arrow(entry.index, tuple(forest), target.index, half_map)


def collapse_poset(catalog: GraphCatalog) -> CollapsePoset:
    arrows = []
    for entry in catalog:
        for f in forest_orbit_reps(entry.graph, entry.aut):
            arrows.append(collapse_arrow(catalog, entry, f))
    return CollapsePoset(catalog, tuple(arrows))


def verify_closure(poset: CollapsePoset) -> list[str]:
    """Check that collapsing ``F`` then ``F'`` equals collapsing ``F u F'``."""
    cat = poset.catalog
    problems = []
    for first in poset.arrows:
        src = cat.classes[first.source]
        inverse = {v: k for k, v in first.edge_map(cat).items()}
        mid = cat.classes[first.target]
        for f2 in forests(mid.graph):
            lifted = tuple(sorted(set(first.forest) | {inverse[e] for e in f2}))
            if len(lifted) >= src.edge_count or not is_forest(src.graph, lifted):
                problems.append(f"{first.source}:{first.forest}+{f2} is not a forest upstairs")
                continue
            two_step = collapse_arrow(cat, mid, f2).target
            one_step = collapse_arrow(cat, src, lifted).target
            if two_step != one_step:
                problems.append(f"{first.source}:{first.forest}+{f2} lands on {two_step} vs {one_step}")
    return problems


def identify_shape(g: RibbonGraph) -> str:
    """Short name for the genus 0 / genus 1 graphs with at most three edges."""
    t = top_type(g)
    loops = len(g.loops())
    names = {
        ((0, 3), 3, 0): "theta", ((0, 3), 3, 2): "double noose", ((0, 3), 2, 2): "figure eight",
        ((1, 1), 3, 0): "twisted theta", ((1, 1), 2, 2): "twisted figure eight",
    }
    return names.get((tuple(t), g.edge_count, loops), f"graph(g={t.genus},n={t.cycles},e={g.edge_count})")
