"""Exact rational polytopes inside the simplex slice ``sum(x) = 1``.

Every polytope here is the standard simplex on a finite ground set cut by
further halfspaces ``a.x >= b``. Truncating the face spanned by a subset
``b`` uses the halfspace ``sum(x_i for i not in b) >= alpha * (2**k - 1)``
with ``k = |S - b|``; the strictly superadditive depth makes the cuts at
smaller faces deeper, so one family of cuts reproduces truncation in
increasing dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import EmptyResult, InvalidFamily, ResourceLimit
from .linalg import affine_dim, solve

MAX_GROUND = 8
ACTIVE_SET_LIMIT = 200_000

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class Inequality:
    coeffs: tuple[Fraction, ...]
    bound: Fraction
    tag: tuple  # ("facet", i) or ("cut", frozenset b)

    def slack(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * v for a, v in zip(self.coeffs, x) if a), Fraction(0)) - self.bound


@dataclass(frozen=True, eq=False)
class HPolytope:
    """``{x : sum(x) = 1, a.x >= b for every inequality}`` over ``ground_set``."""

    ground_set: tuple[Hashable, ...]
    inequalities: tuple[Inequality, ...]

    @property
    def dim(self) -> int:
        return len(self.ground_set) - 1

    @cached_property
    def _vertex_data(self) -> tuple[tuple[Point, ...], tuple[frozenset[int], ...]]:
        return _cut_vertices(self)

    @property
    def vertices(self) -> tuple[Point, ...]:
        return self._vertex_data[0]

    @property
    def tight_sets(self) -> tuple[frozenset[int], ...]:
        """Indices of the inequalities tight at each vertex."""
        return self._vertex_data[1]

    @cached_property
    def lattice(self) -> "FaceLattice":
        return face_lattice(self)


def _facet(n: int, i: int, label) -> Inequality:
    return Inequality(tuple(Fraction(int(j == i)) for j in range(n)), Fraction(0), ("facet", label))


def standard_simplex(S: Iterable[Hashable]) -> HPolytope:
    S = tuple(S)
    if not S:
        raise InvalidFamily("ground set must be non-empty")
    return HPolytope(S, tuple(_facet(len(S), i, s) for i, s in enumerate(S)))


def depth(alpha: Fraction, k: int) -> Fraction:
    return alpha * (2 ** k - 1)


def default_alpha(S: Sequence) -> Fraction:
    return Fraction(1, 2 ** len(S))


def nestohedron(S: Iterable[Hashable], B: Iterable[Iterable[Hashable]], alpha: Fraction | None = None) -> HPolytope:
    """The simplex on ``S`` truncated along the faces indexed by ``B``."""
    S = tuple(S)
    ground = frozenset(S)
    family = {frozenset(b) for b in B}
    for b in family:
        if not b or b == ground:
            raise InvalidFamily("B may contain neither the empty set nor S")
        if not b <= ground:
            raise InvalidFamily(f"{set(b)} is not a subset of S")
    alpha = default_alpha(S) if alpha is None else Fraction(alpha)
    if alpha <= 0:
        raise InvalidFamily("alpha must be positive")
    n = len(S)
    ineqs = [_facet(n, i, s) for i, s in enumerate(S)]
    for b in sorted(family, key=lambda b: (len(b), sorted(map(str, b)))):
        coeffs = tuple(Fraction(int(s not in b)) for s in S)
        ineqs.append(Inequality(coeffs, depth(alpha, n - len(b)), ("cut", b)))
    P = HPolytope(S, tuple(ineqs))
    P.vertices  # nonemptiness / full-dimensionality check
    return P


def permutohedron(S: Iterable[Hashable], alpha: Fraction | None = None) -> HPolytope:
    S = tuple(S)
    B = [b for k in range(1, len(S)) for b in itertools.combinations(S, k)]
    return nestohedron(S, B, alpha)


# -- vertex enumeration ----------------------------------------------------

def _cut_vertices(P: HPolytope) -> tuple[tuple[Point, ...], tuple[frozenset[int], ...]]:
    """Vertices by cutting the simplex with one halfspace at a time.

    Two vertices on opposite sides of a new hyperplane span an edge exactly
    when no third vertex is tight on every constraint tight at both; the
    new vertex is where that edge meets the plane. Tight sets are bitmasks
    whose low ``|S|`` bits stand for the simplex facets.
    """
    n = len(P.ground_set)
    if n > MAX_GROUND:
        raise ResourceLimit(f"vertex enumeration limited to |S| <= {MAX_GROUND}")
    full = (1 << n) - 1
    verts: list[Point] = [tuple(Fraction(int(j == i)) for j in range(n)) for i in range(n)]
    tight: list[int] = [full ^ (1 << i) for i in range(n)]
    for j, q in enumerate(P.inequalities):
        bit = 1 << (n + j)
        slack = [q.slack(v) for v in verts]
        if max(slack) <= 0 and n > 1:
            raise EmptyResult(f"constraint {q.tag} leaves an empty or degenerate polytope")
        if max(slack) < 0:
            raise EmptyResult(f"constraint {q.tag} leaves an empty polytope")
        plus = [i for i, s in enumerate(slack) if s > 0]
        minus = [i for i, s in enumerate(slack) if s < 0]
        zero = [i for i, s in enumerate(slack) if s == 0]
        new_pts: dict[Point, int] = {}
        for p in plus:
            for m in minus:
                common = tight[p] & tight[m]
                if common.bit_count() < n - 2:
                    continue
                if any(w != p and w != m and tight[w] & common == common for w in range(len(verts))):
                    continue
                t = slack[p] / (slack[p] - slack[m])
                pt = tuple(a + (b - a) * t for a, b in zip(verts[p], verts[m]))
                new_pts[pt] = new_pts.get(pt, 0) | common | bit
        verts, tight = (
            [verts[i] for i in plus + zero] + list(new_pts),
            [tight[i] for i in plus] + [tight[i] | bit for i in zero] + list(new_pts.values()),
        )
    order = sorted(range(len(verts)), key=lambda i: verts[i])
    m = len(P.inequalities)
    return (tuple(verts[i] for i in order),
            tuple(frozenset(j for j in range(m) if tight[i] >> (n + j) & 1) for i in order))


def _active_set_vertices(P: HPolytope) -> tuple[Point, ...]:
    n = len(P.ground_set)
    ineqs = list(P.inequalities)
    if comb(len(ineqs), n - 1) > ACTIVE_SET_LIMIT:
        raise ResourceLimit("active-set search exceeds its subset budget")
    ones = [Fraction(1)] * n
    found = set()
    for sub in itertools.combinations(ineqs, n - 1):
        x = solve([ones] + [list(q.coeffs) for q in sub], [Fraction(1)] + [q.bound for q in sub])
        if x is None:
            continue
        if all(q.slack(x) >= 0 for q in ineqs):
            found.add(tuple(x))
    return tuple(sorted(found))


def vertices(P: HPolytope, method: str = "cut") -> tuple[Point, ...]:
    """All vertices, exactly. ``method`` is "cut" or "active_set"."""
    if method == "cut":
        return P.vertices
    if method == "active_set":
        return _active_set_vertices(P)
    raise ValueError(f"unknown method {method!r}")


# -- face lattice ----------------------------------------------------------

@dataclass(frozen=True)
class Face:
    vertices: frozenset[int]
    dim: int
    tags: frozenset  # provenance tags of the facets containing the face


@dataclass(frozen=True)
class FaceLattice:
    dim: int
    faces: tuple[Face, ...]  # sorted by (dim, vertex tuple); empty face first, polytope last
    facets: tuple[Face, ...]

    @property
    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * max(self.dim, 0)
        for f in self.faces:
            if 0 <= f.dim < self.dim:
                counts[f.dim] += 1
        return tuple(counts)

    def euler_relation_holds(self) -> bool:
        alt = sum((-1) ** i * c for i, c in enumerate(self.f_vector))
        return alt == 1 - (-1) ** self.dim

    def index(self) -> dict[frozenset[int], Face]:
        return {f.vertices: f for f in self.faces}

    def signature(self) -> frozenset:
        """Alpha-independent description: (dim, facet tags) for every face."""
        return frozenset((f.dim, f.tags) for f in self.faces)


def face_lattice(P: HPolytope) -> FaceLattice:
    verts = P.vertices
    tight = P.tight_sets
    d = P.dim
    everything = frozenset(range(len(verts)))
    by_set: dict[frozenset[int], set] = {}
    for j, q in enumerate(P.inequalities):
        vs = frozenset(i for i, t in enumerate(tight) if j in t)
        if vs and vs != everything and affine_dim([verts[i] for i in vs]) == d - 1:
            by_set.setdefault(vs, set()).add(q.tag)
    facet_sets = sorted(by_set, key=lambda s: sorted(s))
    faces = {everything}
    frontier = set(facet_sets)
    faces |= frontier
    while frontier:
        nxt = set()
        for f in frontier:
            for g in facet_sets:
                h = f & g
                if h and h not in faces:
                    nxt.add(h)
        faces |= nxt
        frontier = nxt

    def make(vs: frozenset[int]) -> Face:
        tags = frozenset(t for s in facet_sets if vs <= s for t in by_set[s])
        return Face(vs, affine_dim([verts[i] for i in vs]), tags)

    out = [Face(frozenset(), -1, frozenset(t for s in facet_sets for t in by_set[s]))]
    out += sorted((make(f) for f in faces), key=lambda f: (f.dim, sorted(f.vertices)))
    facets = tuple(f for f in out if f.dim == d - 1)
    return FaceLattice(d, tuple(out), facets)


def stability_check(S: Iterable[Hashable], B: Iterable[Iterable[Hashable]], alpha: Fraction | None = None) -> bool:
    """True when halving ``alpha`` leaves the face lattice unchanged."""
    S = tuple(S)
    B = [frozenset(b) for b in B]
    alpha = default_alpha(S) if alpha is None else Fraction(alpha)
    try:
        a = nestohedron(S, B, alpha).lattice
    except EmptyResult:
        return False
    b = nestohedron(S, B, alpha / 2).lattice
    return a.signature() == b.signature()


# -- chain model of the permutohedron --------------------------------------

@dataclass(frozen=True)
class ChainFace:
    """A face ``S = S_0 > S_1 > ... > S_k`` of the permutohedron on ``S``."""

    chain: tuple[frozenset, ...]

    @property
    def ground(self) -> frozenset:
        return self.chain[0]

    @property
    def blocks(self) -> tuple[frozenset, ...]:
        c = self.chain
        return tuple(c[i] - c[i + 1] for i in range(len(c) - 1)) + (c[-1],)

    @property
    def dim(self) -> int:
        return len(self.ground) - len(self.chain)

    @property
    def cut_tags(self) -> frozenset:
        """Truncation cuts tight on the matching geometric face."""
        return frozenset(("cut", self.ground - s) for s in self.chain[1:])

    def refines(self, other: "ChainFace") -> bool:
        """True when this face lies in ``other``."""
        return set(other.chain) <= set(self.chain)


def ordered_set_partitions(S: Iterable[Hashable]) -> Iterator[tuple[frozenset, ...]]:
    items = tuple(S)
    if not items:
        yield ()
        return
    for k in range(1, len(items) + 1):
        for first in itertools.combinations(items, k):
            rest = tuple(x for x in items if x not in first)
            for tail in ordered_set_partitions(rest):
                yield (frozenset(first),) + tail


def permutohedron_chain_faces(S: Iterable[Hashable]) -> list[ChainFace]:
    S = tuple(S)
    out = []
    for blocks in ordered_set_partitions(S):
        chain = tuple(frozenset().union(*blocks[i:]) for i in range(len(blocks)))
        out.append(ChainFace(chain))
    return sorted(out, key=lambda c: (c.dim, [sorted(map(str, s)) for s in c.chain]))


def chain_lattice_isomorphism(S: Iterable[Hashable], lattice: FaceLattice) -> dict[ChainFace, Face]:
    """Match chain faces to geometric permutohedron faces by tight cuts.

    Raises ``ValueError`` unless the matching is a bijection preserving
    dimension and inclusion.
    """
    chains = permutohedron_chain_faces(S)
    geo = [f for f in lattice.faces if f.dim >= 0]
    by_tags = {}
    for f in geo:
        key = frozenset(t for t in f.tags if t[0] == "cut")
        if key in by_tags:
            raise ValueError("two geometric faces share their tight cuts")
        by_tags[key] = f
    match = {}
    for c in chains:
        f = by_tags.get(c.cut_tags)
        if f is None or f.dim != c.dim:
            raise ValueError(f"chain {c.chain} has no geometric face of dimension {c.dim}")
        match[c] = f
    if len(match) != len(geo) or len({id(f) for f in match.values()}) != len(geo):
        raise ValueError("matching is not a bijection")
    for a, b in itertools.product(chains, repeat=2):
        if a.refines(b) != (match[a].vertices <= match[b].vertices):
            raise ValueError("matching does not preserve inclusion")
    return match
