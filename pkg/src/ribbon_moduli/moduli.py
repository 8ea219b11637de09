"""Rational cells, compact rational cells and their assembly into complexes.

A graph with edge set ``E`` contributes the open simplex on ``E``. Its
compact version truncates the simplex along the faces spanned by the
building family ``B``: complements of edge sets that are not forests.
Cells are glued along forest collapses, and each cell is folded by the
edge action of its automorphism group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .enumeration import CatalogEntry, CollapsePoset, GraphCatalog, _map, collapse_poset, enumerate_graphs
from .errors import GluingMismatch, NotASurface, ResourceLimit
from .polytope import FaceLattice, HPolytope, default_alpha, nestohedron, stability_check, standard_simplex
from .ribbon import RibbonGraph, TopologicalType, automorphism_group, canonical_form, is_forest

MAX_HALVINGS = 12


@dataclass(frozen=True)
class BuildingFamily:
    edge_count: int
    A: frozenset[frozenset[int]]
    B: frozenset[frozenset[int]]

    def is_invariant(self, edge_perms: Iterable[Sequence[int]]) -> bool:
        return all(frozenset(p[i] for i in b) in self.B for p in edge_perms for b in self.B)


def building_family(g: RibbonGraph) -> BuildingFamily:
    edges = range(g.edge_count)
    full = frozenset(edges)
    A = frozenset(
        frozenset(sub)
        for k in range(1, g.edge_count + 1)
        for sub in itertools.combinations(edges, k)
        if not is_forest(g, sub)
    )
    B = frozenset(full - a for a in A) - {frozenset()}
    return BuildingFamily(g.edge_count, A, B)


# -- cells ---------------------------------------------------------------

@dataclass(frozen=True)
class RationalCell:
    """Open simplex on the edges of one catalog class."""

    entry: CatalogEntry

    @property
    def dim(self) -> int:
        return self.entry.edge_count - 1

    @property
    def group(self) -> tuple[tuple[int, ...], ...]:
        return self.entry.aut.edge_action_elements

    @property
    def polytope(self) -> HPolytope:
        return standard_simplex(range(self.entry.edge_count))


@dataclass(frozen=True)
class CompactRationalCell:
    entry: CatalogEntry
    family: BuildingFamily
    alpha: Fraction
    polytope: HPolytope
    vertex_action: tuple[tuple[int, ...], ...]  # one vertex permutation per edge-action element

    @property
    def dim(self) -> int:
        return self.entry.edge_count - 1

    @property
    def group(self) -> tuple[tuple[int, ...], ...]:
        return self.entry.aut.edge_action_elements

    @property
    def lattice(self) -> FaceLattice:
        return self.polytope.lattice


def _vertex_permutation(P: HPolytope, edge_perm: Sequence[int]) -> tuple[int, ...]:
    index = {v: i for i, v in enumerate(P.vertices)}
    out = []
    for v in P.vertices:
        w = [Fraction(0)] * len(v)
        for i, x in enumerate(v):
            w[edge_perm[i]] = x
        out.append(index[tuple(w)])
    return tuple(out)


def stable_alpha(n: int, B: Iterable[frozenset[int]], alpha: Fraction | None = None) -> Fraction:
    """Largest ``alpha / 2**k`` certified by :func:`stability_check`."""
    S = tuple(range(n))
    B = list(B)
    a = default_alpha(S) if alpha is None else Fraction(alpha)
    for _ in range(MAX_HALVINGS):
        if stability_check(S, B, a):
            return a
        a /= 2
    raise ResourceLimit("no stable truncation depth found")


def compact_cell(g: RibbonGraph | CatalogEntry, alpha: Fraction | None = None) -> CompactRationalCell:
    if isinstance(g, RibbonGraph):
        entry = CatalogEntry(-1, g, canonical_form(g), automorphism_group(g))
    else:
        entry = g
    fam = building_family(entry.graph)
    a = stable_alpha(entry.edge_count, fam.B, alpha)
    P = nestohedron(range(entry.edge_count), fam.B, a)
    action = tuple(_vertex_permutation(P, p) for p in entry.aut.edge_action_elements)
    return CompactRationalCell(entry, fam, a, P, action)


# -- assembly ------------------------------------------------------------

@dataclass(frozen=True)
class Attachment:
    source: int
    forest: tuple[int, ...]
    target: int
    edge_map: tuple[tuple[int, int], ...]
    vertex_map: tuple[tuple[int, int], ...]  # source polytope vertex -> target polytope vertex


@dataclass(frozen=True)
class OrbiCellComplex:
    top_type: TopologicalType
    compact: bool
    catalog: GraphCatalog
    poset: CollapsePoset
    cells: tuple  # RationalCell or CompactRationalCell, indexed like the catalog
    attachments: tuple[Attachment, ...]

    @property
    def dim(self) -> int:
        return max(c.dim for c in self.cells)

    def vertex_actions(self, i: int) -> tuple[tuple[int, ...], ...]:
        c = self.cells[i]
        if isinstance(c, CompactRationalCell):
            return c.vertex_action
        return c.group  # simplex vertices are the edges


def _vertex_tags(lattice: FaceLattice) -> dict[int, frozenset]:
    return {next(iter(f.vertices)): f.tags for f in lattice.faces if f.dim == 0}


def _map_tag(tag: tuple, forest: frozenset[int], emap: dict[int, int]):
    kind, val = tag
    if kind == "facet":
        return None if val in forest else ("facet", emap[val])
    return ("cut", frozenset(emap[i] for i in val if i not in forest))


def glue_compact(src: CompactRationalCell, tgt: CompactRationalCell, forest: Sequence[int],
                 emap: dict[int, int]) -> tuple[tuple[int, int], ...]:
    """Vertex map from the ``x_F = 0`` face of ``src`` onto ``tgt``.

    Vertices are matched through their facet provenance tags; the map must
    carry faces of the source face onto faces of the target.
    """
    F = frozenset(forest)
    sl, tl = src.lattice, tgt.lattice
    region = frozenset(i for i, v in enumerate(src.polytope.vertices) if all(v[f] == 0 for f in F))
    t_tags = _vertex_tags(tl)
    known = frozenset(t for s in t_tags.values() for t in s)
    by_sig: dict[frozenset, int] = {}
    for v, tags in t_tags.items():
        by_sig.setdefault(tags, v)
    s_tags = _vertex_tags(sl)
    vmap = {}
    for v in sorted(region):
        sig = frozenset(m for m in (_map_tag(t, F, emap) for t in s_tags[v]) if m in known)
        if sig not in by_sig:
            raise GluingMismatch(f"vertex {v} of class {src.entry.index} has no partner in class {tgt.entry.index}")
        vmap[v] = by_sig[sig]
    if sorted(vmap.values()) != sorted(t_tags):
        raise GluingMismatch(f"collapse of {tuple(forest)} is not a bijection on vertices")
    t_faces = {f.vertices: f.dim for f in tl.faces}
    for f in sl.faces:
        if f.dim >= 0 and f.vertices <= region:
            img = frozenset(vmap[v] for v in f.vertices)
            if t_faces.get(img) != f.dim:
                raise GluingMismatch(f"collapse of {tuple(forest)} does not preserve faces")
    return tuple(sorted(vmap.items()))


def assemble_complex(t: TopologicalType | tuple[int, int], compact: bool = False, alpha: Fraction | None = None,
                     max_half_edges: int | None = None, threads: int = 1) -> OrbiCellComplex:
    t = TopologicalType(*t)
    catalog = enumerate_graphs(t, max_half_edges, threads=threads)
    poset = collapse_poset(catalog)
    if compact:
        cells = tuple(_map(lambda c: compact_cell(c, alpha), catalog.classes, threads))
    else:
        cells = tuple(RationalCell(c) for c in catalog)
    attachments = []
    for arrow in poset.arrows:
        emap = arrow.edge_map(catalog)
        if compact:
            vmap = glue_compact(cells[arrow.source], cells[arrow.target], arrow.forest, emap)
        else:
            vmap = tuple(sorted(emap.items()))
        attachments.append(Attachment(arrow.source, arrow.forest, arrow.target, tuple(sorted(emap.items())), vmap))
    return OrbiCellComplex(t, compact, catalog, poset, cells, tuple(attachments))


# -- quotient statistics ---------------------------------------------------

class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True)
class ComplexStats:
    cells_by_dim: tuple[int, ...]
    orbifold_euler: Fraction
    euler: int | None
    boundary_circles: int | None
    components: int | None
    is_surface: bool | None


def orbifold_euler(C: OrbiCellComplex) -> Fraction:
    return sum((Fraction((-1) ** c.dim, c.entry.aut.order) for c in C.cells), Fraction(0))


def _identifications(C: OrbiCellComplex):
    """(cell, vertex map, target cell) triples generating the quotient."""
    for i in range(len(C.cells)):
        for perm in C.vertex_actions(i):
            yield i, dict(enumerate(perm)), i
    for a in C.attachments:
        yield a.source, dict(a.vertex_map), a.target


def _cell_faces(C: OrbiCellComplex, i: int) -> list[frozenset[int]]:
    c = C.cells[i]
    if isinstance(c, CompactRationalCell):
        return [f.vertices for f in c.lattice.faces if f.dim >= 0]
    n = c.entry.edge_count
    return [frozenset(s) for k in range(1, n + 1) for s in itertools.combinations(range(n), k)]


def _face_dims(C: OrbiCellComplex, i: int) -> dict[frozenset[int], int]:
    c = C.cells[i]
    if isinstance(c, CompactRationalCell):
        return {f.vertices: f.dim for f in c.lattice.faces if f.dim >= 0}
    return {f: len(f) - 1 for f in _cell_faces(C, i)}


def face_classes(C: OrbiCellComplex) -> dict:
    uf = _UnionFind()
    for i in range(len(C.cells)):
        for f in _cell_faces(C, i):
            uf.add((i, tuple(sorted(f))))
    for src, vmap, tgt in _identifications(C):
        for f in _cell_faces(C, src):
            if f <= vmap.keys():
                uf.union((src, tuple(sorted(f))), (tgt, tuple(sorted(vmap[v] for v in f))))
    return uf.classes()


def _chains(faces: dict[frozenset[int], int]) -> list[tuple[frozenset[int], ...]]:
    by_dim = sorted(faces, key=lambda f: faces[f])
    out = []

    def grow(chain):
        out.append(chain)
        last = chain[-1]
        for f in by_dim:
            if faces[f] > faces[last] and last < f:
                grow(chain + (f,))

    for f in by_dim:
        grow((f,))
    return out


def complex_stats(C: OrbiCellComplex, surface_check: bool = True) -> ComplexStats:
    """Cell counts and orbifold Euler characteristic; for compact complexes
    of dimension at most 2 also the Euler characteristic, connected
    components and boundary circles of the quotient space."""
    orb = orbifold_euler(C)
    if not C.compact:
        counts = [0] * (C.dim + 1)
        for c in C.cells:
            counts[c.dim] += 1
        return ComplexStats(tuple(counts), orb, None, None, None, None)
    classes = face_classes(C)
    counts = [0] * (C.dim + 1)
    dims_cache = {i: _face_dims(C, i) for i in range(len(C.cells))}
    for rep in classes:
        counts[dims_cache[rep[0]][frozenset(rep[1])]] += 1
    if C.dim > 2:
        return ComplexStats(tuple(counts), orb, None, None, None, None)

    def key(i, chain):
        return (i, tuple(tuple(sorted(f)) for f in chain))

    uf = _UnionFind()
    chains = {i: _chains(dims_cache[i]) for i in range(len(C.cells))}
    for i, cs in chains.items():
        for ch in cs:
            uf.add(key(i, ch))
    for src, vmap, tgt in _identifications(C):
        for ch in chains[src]:
            if ch[-1] <= vmap.keys():
                uf.union(key(src, ch), key(tgt, tuple(frozenset(vmap[v] for v in f) for f in ch)))
    groups = uf.classes()
    euler = sum((-1) ** (len(r[1]) - 1) for r in groups)

    def sub(r, drop):
        return uf.find((r[0], r[1][:drop] + r[1][drop + 1:]))

    incidence: dict = {}
    edges = [r for r in groups if len(r[1]) == 2]
    for r in groups:
        if len(r[1]) == 3:
            for d in range(3):
                s = sub(r, d)
                incidence[s] = incidence.get(s, 0) + 1
    surface = all(incidence.get(e, 0) <= 2 for e in edges)
    comp = _UnionFind()
    bnd = _UnionFind()
    for r in groups:
        if len(r[1]) == 1:
            comp.add(r)
    for e in edges:
        a, b = sub(e, 1), sub(e, 0)
        comp.union(a, b)
        if incidence.get(e, 0) == 1:
            bnd.add(a)
            bnd.add(b)
            bnd.union(a, b)
    circles = len(bnd.classes())
    if surface_check and C.dim == 2 and not surface:
        raise NotASurface("a 1-cell lies in more than two 2-cells")
    return ComplexStats(tuple(counts), orb, euler, circles if surface else None, len(comp.classes()), surface)
