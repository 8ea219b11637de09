"""Bordered types, real structures on ribbon graphs and symmetric subcomplexes.

A real structure on a ribbon graph is an involution ``tau`` of the
half-edges with ``tau s1 = s1 tau`` and ``tau s0 tau = s0^-1``. It reverses
the orientation of the thickened surface. Boundary cycles are carried along
by ``rho = s1 tau``, and the fixed metrics of ``tau`` form the symmetric
part of the cell. A bordered surface of type ``(g, b, n, m)`` corresponds to
real structures on its double whose fixed set has ``b`` circles and
separates the double into two halves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .enumeration import CatalogEntry
from .errors import RibbonModuliError
from .linalg import affine_dim
from .moduli import CompactRationalCell, OrbiCellComplex, _UnionFind, _vertex_permutation, assemble_complex
from .ribbon import RibbonGraph, TopologicalType, perm_cycles, perimeter_map


@dataclass(frozen=True)
class BorderedType:
    g: int
    b: int
    n: int
    m: int
    marks: tuple[int, ...] | None = None  # optional split of m over the boundary circles

    def __post_init__(self) -> None:
        if min(self.g, self.b, self.n, self.m) < 0:
            raise ValueError("bordered type entries must be non-negative")
        if self.marks is not None and (len(self.marks) != self.b or sum(self.marks) != self.m):
            raise ValueError("marks must list b counts summing to m")

    @property
    def euler(self) -> Fraction:
        return Fraction(2 - 2 * self.g - self.b - self.n) - Fraction(self.m, 2)

    @property
    def double_type(self) -> TopologicalType:
        return TopologicalType(2 * self.g + self.b - 1, 2 * self.n + self.m)

    @property
    def dim(self) -> int:
        return 6 * self.g + 3 * self.b + 3 * self.n + 2 * self.m - 7


class BorderedInvariants(NamedTuple):
    double_type: TopologicalType
    euler: Fraction
    dim: int


def bordered_invariants(t: BorderedType | tuple[int, int, int, int]) -> BorderedInvariants:
    if not isinstance(t, BorderedType):
        t = BorderedType(*t)
    return BorderedInvariants(t.double_type, t.euler, t.dim)


def standard_pairing(n: int, m: int) -> tuple[int, ...]:
    """Label involution on ``1..2n+m``: labels ``1..m`` fixed, then swapped pairs."""
    out = list(range(1, m + 1))
    for k in range(n):
        a = m + 2 * k + 1
        out += [a + 1, a]
    return tuple(out)


# -- real structures -----------------------------------------------------

@dataclass(frozen=True)
class RealStructure:
    graph: RibbonGraph
    tau: tuple[int, ...]  # 0-based half-edge permutation

    @cached_property
    def rho(self) -> tuple[int, ...]:
        s1 = self.graph.sigma1
        return tuple(s1[t] for t in self.tau)

    @cached_property
    def label_action(self) -> tuple[int, ...]:
        """Image label of each label ``1..n`` (1-based)."""
        g = self.graph
        lab = g.half_edge_label
        return tuple(lab[self.rho[orbit[0]]] for orbit in g.boundary_orbits)

    @cached_property
    def edge_action(self) -> tuple[int, ...]:
        g = self.graph
        return tuple(g.edge_of[self.tau[a]] for a, _ in g.edges)

    @property
    def edge_orbits(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(perm_cycles(self.edge_action)))

    @cached_property
    def fixed_circles(self) -> int:
        return _fixed_circles(self.graph, self.tau, self.rho)

    @cached_property
    def separating(self) -> bool:
        """True when the fixed set cuts the surface in two, so the quotient is orientable."""
        return _complement(self.graph, self.tau, self.rho)[0] == 2

    @cached_property
    def halves(self) -> dict[int, int]:
        """Component of the complement of the fixed set holding each swapped label."""
        return _complement(self.graph, self.tau, self.rho)[1]

    @property
    def orientability_index(self) -> int:
        return 0 if self.separating else 1

    def check(self) -> bool:
        g = self.graph
        t, s0, s1 = self.tau, g.sigma0, g.sigma1
        n = len(t)
        return (sorted(t) == list(range(n))
                and all(t[t[h]] == h for h in range(n))
                and all(t[s1[h]] == s1[t[h]] for h in range(n))
                and all(t[s0[t[h]]] == _inv(s0)[h] for h in range(n)))


def _inv(p: Sequence[int]) -> list[int]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return out


def _propagate(g: RibbonGraph, image0: int) -> tuple[int, ...] | None:
    s0, s1 = g.sigma0, g.sigma1
    s0inv = _inv(s0)
    n = g.half_edge_count
    tau = [-1] * n
    tau[0] = image0
    stack = [0]
    while stack:
        h = stack.pop()
        for src, img in ((s0[h], s0inv[tau[h]]), (s1[h], s1[tau[h]])):
            if tau[src] < 0:
                tau[src] = img
                stack.append(src)
            elif tau[src] != img:
                return None
    return tuple(tau) if -1 not in tau else None


def real_structures(g: RibbonGraph, pairing: Sequence[int] | None = None) -> list[RealStructure]:
    """Every real structure on ``g`` whose label action equals ``pairing``.

    ``pairing`` maps label ``i`` to ``pairing[i-1]``; None accepts any
    label action. A real structure is fixed by the image of one half-edge,
    so at most ``|H|`` candidates are checked.
    """
    if pairing is not None:
        pairing = tuple(pairing)
        if len(pairing) != g.cycle_count or sorted(pairing) != list(range(1, g.cycle_count + 1)):
            raise ValueError("pairing must be a permutation of the labels")
    out = []
    for image0 in range(g.half_edge_count):
        tau = _propagate(g, image0)
        if tau is None:
            continue
        r = RealStructure(g, tau)
        if r.check() and (pairing is None or r.label_action == pairing):
            out.append(r)
    return out


def _fixed_circles(g: RibbonGraph, tau: Sequence[int], rho: Sequence[int]) -> int:
    """Connected components of the fixed point set.

    The surface is cut into triangles ``K_h`` (vertex of ``h``, far vertex,
    cusp of the boundary cycle of ``h``). Fixed pieces are whole edges
    (``tau h = h``), spokes from a cusp to an edge midpoint (``rho h = h``)
    and walls from a vertex to a cusp (``rho h = s_inf h``).
    """
    s1, sinf = g.sigma1, g.sigma_inf
    cusp = {}
    for i, orbit in enumerate(g.boundary_orbits_unordered):
        for h in orbit:
            cusp[h] = ("c", i)
    uf = _UnionFind()
    seen = False
    for h in range(g.half_edge_count):
        segments = []
        if tau[h] == h:
            segments.append((("v", g.vertex_of[h]), ("v", g.vertex_of[s1[h]])))
        if rho[h] == h:
            segments.append((cusp[h], ("m", g.edge_of[h])))
        if rho[h] == sinf[h]:
            # a monogon face can carry both a spoke and a wall
            segments.append((("v", g.vertex_of[s1[h]]), cusp[h]))
        for a, b in segments:
            seen = True
            uf.add(a)
            uf.add(b)
            uf.union(a, b)
    return len(uf.classes()) if seen else 0


def _complement(g: RibbonGraph, tau: Sequence[int], rho: Sequence[int]) -> tuple[int, dict[int, int]]:
    """Components of the surface minus the fixed set, and the component
    holding each cusp that is not fixed (keyed by label).

    Triangles ``K_h`` with ``rho h = h`` are split by their spoke into a
    half at the vertex of ``h`` and a half at the far vertex.
    """
    s1, sinf = g.sigma1, g.sigma_inf
    uf = _UnionFind()

    def piece(h: int, side: str):
        return (h, side if rho[h] == h else "")

    for h in range(g.half_edge_count):
        uf.add(piece(h, "L"))
        uf.add(piece(h, "R"))
    for h in range(g.half_edge_count):
        if tau[h] != h:
            uf.union(piece(h, "L"), piece(s1[h], "R"))
            uf.union(piece(h, "R"), piece(s1[h], "L"))
        if rho[h] != sinf[h]:
            uf.union(piece(h, "R"), piece(sinf[h], "L"))
    roots = sorted(uf.classes())
    side = {}
    for orbit in g.boundary_orbits:
        h = orbit[0]
        if rho[h] not in orbit:
            side[g.half_edge_label[h]] = roots.index(uf.find(piece(h, "")))
    return len(roots), side


def admissible(r: RealStructure, t: BorderedType) -> bool:
    """Fixed set of ``t.b`` circles bounding two halves, with the first label
    of every conjugate pair in the same half (the bordered surface)."""
    if r.fixed_circles != t.b or not r.separating:
        return False
    firsts = {r.halves[t.m + 2 * k + 1] for k in range(t.n)}
    return len(firsts) <= 1


# -- fixed cells ---------------------------------------------------------

@dataclass(frozen=True)
class SymmetricCell:
    """Metrics of one graph that are constant on the edge orbits of ``tau``."""

    structure: RealStructure
    edge_orbits: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.edge_orbits) - 1

    def point(self, weights: Sequence[Fraction] | None = None) -> tuple[Fraction, ...]:
        """The fixed metric spreading ``weights[k]`` evenly over orbit ``k``."""
        k = len(self.edge_orbits)
        w = [Fraction(1, k)] * k if weights is None else [Fraction(v) for v in weights]
        x = [Fraction(0)] * self.structure.graph.edge_count
        for wi, orbit in zip(w, self.edge_orbits):
            for e in orbit:
                x[e] = wi / len(orbit)
        return tuple(x)

    def conjugate_decorations_equal(self, weights: Sequence[Fraction] | None = None) -> bool:
        per = perimeter_map(self.structure.graph, self.point(weights))
        act = self.structure.label_action
        return all(per[i] == per[act[i] - 1] for i in range(len(per)))


def fixed_cell(g: RibbonGraph, tau: RealStructure | Sequence[int]) -> SymmetricCell:
    r = tau if isinstance(tau, RealStructure) else RealStructure(g, tuple(tau))
    if not r.check():
        raise RibbonModuliError("not a real structure on this graph")
    return SymmetricCell(r, r.edge_orbits)


# -- symmetric subcomplex ------------------------------------------------

Key = tuple  # (class index, face vertex set, blocks)


@dataclass(frozen=True)
class SymmetricPiece:
    """One open cell of the symmetric subcomplex, up to identification."""

    key: Key
    dim: int
    structures: tuple[tuple[int, ...], ...]  # tau of every real structure producing this key
    origin: str = "fixed"  # "fixed" for a fixed face, else the fold that created it


@dataclass(frozen=True)
class SymmetricSubcomplex:
    bordered: BorderedType
    compact: bool
    complex: OrbiCellComplex
    pieces: tuple[SymmetricPiece, ...]
    structures: dict = field(default_factory=dict, compare=False)  # class -> admissible structures
    flagged: bool = False  # a stabilizer of dim >= 3 was not resolved

    @property
    def cells_by_dim(self) -> tuple[int, ...]:
        top = max((p.dim for p in self.pieces), default=-1)
        counts = [0] * (top + 1)
        for p in self.pieces:
            counts[p.dim] += 1
        return tuple(counts)

    @property
    def dim(self) -> int:
        return len(self.cells_by_dim) - 1


def _vertex_coords(C: OrbiCellComplex, i: int) -> tuple[tuple[Fraction, ...], ...]:
    c = C.cells[i]
    if isinstance(c, CompactRationalCell):
        return c.polytope.vertices
    n = c.entry.edge_count
    return tuple(tuple(Fraction(int(j == k)) for j in range(n)) for k in range(n))


def _tau_vertex_perm(C: OrbiCellComplex, i: int, r: RealStructure) -> tuple[int, ...]:
    c = C.cells[i]
    if isinstance(c, CompactRationalCell):
        return _vertex_permutation(c.polytope, r.edge_action)
    return r.edge_action


def _faces(C: OrbiCellComplex, i: int) -> list[frozenset[int]]:
    c = C.cells[i]
    if isinstance(c, CompactRationalCell):
        return [f.vertices for f in c.lattice.faces if f.dim >= 0]
    return [frozenset(range(c.entry.edge_count))]


def _orbits(perm: Sequence[int], support: Iterable[int]) -> frozenset[frozenset[int]]:
    support = set(support)
    out = set()
    while support:
        v = min(support)
        orbit = {v}
        w = perm[v]
        while w != v:
            orbit.add(w)
            w = perm[w]
        support -= orbit
        out.add(frozenset(orbit))
    return frozenset(out)


def _barycenter(coords, block) -> tuple[Fraction, ...]:
    pts = [coords[v] for v in block]
    return tuple(sum(col, Fraction(0)) / len(pts) for col in zip(*pts))


def _map_key(key: Key, vmap: dict[int, int], target: int) -> Key:
    _, face, blocks = key
    return (target, frozenset(vmap[v] for v in face), frozenset(frozenset(vmap[v] for v in b) for b in blocks))


def _sort_key(key: Key):
    return (key[0], sorted(key[1]), sorted(sorted(b) for b in key[2]))


def _identification_edges(C: OrbiCellComplex):
    for i in range(len(C.cells)):
        for perm in C.vertex_actions(i):
            yield i, dict(enumerate(perm)), i
    for a in C.attachments:
        yield a.source, dict(a.vertex_map), a.target


def _key_graph(C: OrbiCellComplex, keys: Iterable[Key]):
    """Union-find over keys and the edges realizing each identification."""
    uf = _UnionFind()
    pending = sorted(set(keys), key=_sort_key)
    for k in pending:
        uf.add(k)
    by_cell: dict[int, list[Key]] = {}
    for k in pending:
        by_cell.setdefault(k[0], []).append(k)
    edges: dict[Key, list[tuple[Key, dict[int, int]]]] = {}
    for src, vmap, tgt in _identification_edges(C):
        for k in by_cell.get(src, []):
            if k[1] <= vmap.keys():
                img = _map_key(k, vmap, tgt)
                if img in uf.parent:
                    uf.union(k, img)
                    edges.setdefault(k, []).append((img, vmap))
                    inv = {w: v for v, w in vmap.items()}
                    edges.setdefault(img, []).append((k, inv))
    return uf, edges


def _stabilizer(rep: Key, members: list[Key], edges) -> list[dict[int, int]]:
    """Vertex maps of ``rep`` onto itself obtained by walking identifications."""
    reach = {rep: {v: v for v in rep[1]}}
    stack = [rep]
    loops = set()
    while stack:
        k = stack.pop()
        to_k = reach[k]
        for img, vmap in edges.get(k, []):
            comp = {v: vmap[to_k[v]] for v in rep[1]}
            if img not in reach:
                reach[img] = comp
                stack.append(img)
            else:
                back = {w: v for v, w in reach[img].items()}
                loops.add(tuple(sorted((v, back[comp[v]]) for v in rep[1])))
    group = {tuple(sorted((v, v) for v in rep[1]))}
    frontier = [dict(x) for x in loops]
    gens = [dict(x) for x in loops]
    while frontier:
        new = []
        for a in frontier:
            for b in gens:
                c = tuple(sorted((v, b[a[v]]) for v in rep[1]))
                if c not in group:
                    group.add(c)
                    new.append(dict(c))
        frontier = new
    return [dict(x) for x in sorted(group)]


def _block_action(g: dict[int, int], blocks: frozenset[frozenset[int]]) -> dict[frozenset[int], frozenset[int]] | None:
    out = {}
    for b in blocks:
        img = frozenset(g[v] for v in b)
        if img not in blocks:
            return None
        out[b] = img
    return out


def symmetric_subcomplex(t: BorderedType | tuple[int, int, int, int], compact: bool = False,
                         alpha: Fraction | None = None, max_half_edges: int | None = None,
                         threads: int = 1, complex_: OrbiCellComplex | None = None) -> SymmetricSubcomplex:
    """Fixed loci of admissible real structures, glued and folded.

    Each key ``(class, face, blocks)`` records a face of a cell preserved by
    ``tau`` together with the orbits of ``tau`` on its vertices; the fixed
    part of the face is the hull of the block barycenters. Keys are
    identified through automorphisms and collapse maps. When the
    identifications fold a fixed cell onto itself the fold is resolved for
    cells of dimension at most 2.
    """
    if not isinstance(t, BorderedType):
        t = BorderedType(*t)
    C = complex_ or assemble_complex(t.double_type, compact, alpha, max_half_edges, threads)
    pairing = standard_pairing(t.n, t.m)
    producers: dict[Key, set[tuple[int, ...]]] = {}
    found: dict[int, list[RealStructure]] = {}
    for i, c in enumerate(C.cells):
        rs = [r for r in real_structures(c.entry.graph, pairing) if admissible(r, t)]
        found[i] = rs
        for r in rs:
            vp = _tau_vertex_perm(C, i, r)
            for f in _faces(C, i):
                if all(vp[v] in f for v in f):
                    key = (i, f, _orbits(vp, f))
                    producers.setdefault(key, set()).add(r.tau)
    uf, edges = _key_graph(C, producers)
    classes = uf.classes()
    pieces: list[SymmetricPiece] = []
    extra: list[tuple[Key, str, int]] = []
    flagged = False
    for root in sorted(classes, key=_sort_key):
        members = sorted(classes[root], key=_sort_key)
        rep = members[0]
        coords = _vertex_coords(C, rep[0])
        blocks = rep[2]
        bary = {b: _barycenter(coords, b) for b in blocks}
        d = affine_dim(list(bary.values()))
        taus = tuple(sorted({x for k in members for x in producers.get(k, ())}))
        pieces.append(SymmetricPiece(rep, d, taus))
        if d == 0:
            continue
        acting = []
        for g in _stabilizer(rep, members, edges):
            act = _block_action(g, blocks)
            if act is not None and any(bary[act[b]] != bary[b] for b in blocks):
                acting.append(g)
        if not acting:
            continue
        if d == 1:
            merged = _merge_blocks(blocks, acting)
            extra.append(((rep[0], rep[1], merged), "fold", 0))
        elif d == 2:
            lines = [g for g in acting if _fixed_dim(g, blocks, bary) == 1]
            if len(lines) == 1:
                pieces.append(SymmetricPiece(rep, 1, taus, "wall"))
            elif len(lines) >= 2:
                pieces += [SymmetricPiece(rep, 1, taus, "wall"), SymmetricPiece(rep, 1, taus, "wall"),
                           SymmetricPiece(rep, 0, taus, "center")]
        else:
            flagged = True
    if extra:
        # fold midpoints may coincide with fixed 0-cells; merge before counting
        zero_keys = [p.key for p in pieces if p.dim == 0 and p.origin == "fixed"]
        uf2, _ = _key_graph(C, zero_keys + [k for k, _, _ in extra])
        known = {uf2.find(k) for k in zero_keys}
        for k, origin, dim in extra:
            root = uf2.find(k)
            if root not in known:
                known.add(root)
                pieces.append(SymmetricPiece(k, dim, (), origin))
    pieces.sort(key=lambda p: (p.dim, _sort_key(p.key), p.origin))
    return SymmetricSubcomplex(t, compact, C, tuple(pieces), found, flagged)


def _merge_blocks(blocks, group) -> frozenset[frozenset[int]]:
    uf = _UnionFind()
    for b in blocks:
        uf.add(b)
    for g in group:
        act = _block_action(g, blocks)
        for b in blocks:
            uf.union(b, act[b])
    return frozenset(frozenset().union(*grp) for grp in uf.classes().values())


def _fixed_dim(g: dict[int, int], blocks, bary) -> int:
    act = _block_action(g, blocks)
    pts = []
    for orbit in _orbits_of(act, blocks):
        pts.append(tuple(sum(c, Fraction(0)) / len(orbit) for c in zip(*(bary[b] for b in orbit))))
    return affine_dim(pts)


def _orbits_of(act: dict, items) -> list[list]:
    seen = set()
    out = []
    for x in sorted(items, key=sorted):
        if x in seen:
            continue
        orbit = [x]
        seen.add(x)
        y = act[x]
        while y != x:
            orbit.append(y)
            seen.add(y)
            y = act[y]
        out.append(orbit)
    return out
