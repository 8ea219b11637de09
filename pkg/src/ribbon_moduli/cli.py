"""Command-line entry point.

Exit status 0 on success, 1 when a computation fails (one-line diagnostic
on stderr), 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .enumeration import enumerate_graphs, identify_shape
from .errors import RibbonModuliError
from .moduli import CompactRationalCell, assemble_complex, complex_stats
from .polytope import nestohedron, permutohedron
from .real import BorderedType, bordered_invariants, symmetric_subcomplex
from .ribbon import TopologicalType
from .serialize import dumps, graph_from_dict, graph_to_dict, graph_to_dot, parse_rational, rational


def _alpha(text: str) -> Fraction:
    try:
        value = parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if value <= 0:
        raise argparse.ArgumentTypeError("alpha must be positive")
    return value


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _cuts(text: str) -> list[frozenset[int]]:
    try:
        return [frozenset(int(x) for x in block.split(",") if x.strip()) for block in text.split(";") if block.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad cut list {text!r}; expected e.g. '4;1,4'") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ribbon-moduli", description="Ribbon graphs and combinatorial moduli spaces.")
    p.add_argument("--threads", type=_positive, default=1, help="worker threads (output does not depend on it)")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="list labeled ribbon graphs of type (g, n)")
    e.add_argument("--genus", type=_nonneg, required=True)
    e.add_argument("--cycles", type=_positive, required=True)
    e.add_argument("--max-half-edges", type=_positive)
    e.add_argument("--json", metavar="PATH", help="write JSON here instead of stdout")

    c = sub.add_parser("complex", help="cell complexes")
    csub = c.add_subparsers(dest="action", required=True)
    b = csub.add_parser("build", help="assemble the open or compact complex of type (g, n)")
    b.add_argument("--genus", type=_nonneg, required=True)
    b.add_argument("--cycles", type=_positive, required=True)
    b.add_argument("--compact", action="store_true")
    b.add_argument("--alpha", type=_alpha)
    b.add_argument("--max-half-edges", type=_positive)
    b.add_argument("--json", metavar="PATH")

    poly = sub.add_parser("polytope", help="permutohedra and truncated simplices")
    psub = poly.add_subparsers(dest="kind", required=True)
    pp = psub.add_parser("permutohedron")
    pp.add_argument("--n", type=_positive, required=True)
    pp.add_argument("--alpha", type=_alpha)
    pp.add_argument("--json", metavar="PATH")
    pn = psub.add_parser("nestohedron")
    pn.add_argument("--s", type=_positive, required=True, help="ground set {1..s}")
    pn.add_argument("--cuts", type=_cuts, required=True, help="subsets separated by ';', elements by ','")
    pn.add_argument("--alpha", type=_alpha)
    pn.add_argument("--json", metavar="PATH")

    s = sub.add_parser("symmetric", help="symmetric subcomplex of a bordered type (g, b, n, m)")
    s.add_argument("--genus", type=_nonneg, required=True)
    s.add_argument("--boundaries", type=_positive, required=True)
    s.add_argument("--interior", type=_nonneg, required=True)
    s.add_argument("--boundary-marks", type=_nonneg, required=True)
    s.add_argument("--compact", action="store_true")
    s.add_argument("--alpha", type=_alpha)
    s.add_argument("--max-half-edges", type=_positive)
    s.add_argument("--json", metavar="PATH")

    d = sub.add_parser("export-dot", help="DOT drawing of a catalog class or a JSON graph")
    src = d.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="PATH", help="JSON graph file")
    src.add_argument("--genus", type=_nonneg)
    d.add_argument("--cycles", type=_positive)
    d.add_argument("--index", type=_nonneg, default=0)
    d.add_argument("--output", metavar="PATH")
    return p


# -- payloads ------------------------------------------------------------

def _type(t: TopologicalType) -> dict:
    return {"genus": t.genus, "cycles": t.cycles}


def enumerate_payload(g: int, n: int, max_half_edges: int | None, threads: int) -> dict:
    cat = enumerate_graphs((g, n), max_half_edges, threads=threads)
    return {
        "type": _type(cat.top_type),
        "count": len(cat),
        "by_edge_count": {str(e): len(v) for e, v in cat.by_edge_count.items()},
        "classes": [
            {
                "id": c.index,
                "edges": c.edge_count,
                "dim": c.dim,
                "shape": identify_shape(c.graph),
                "aut_order": c.aut.order,
                "aut_edge_order": c.aut.edge_action_order,
                "graph": graph_to_dict(c.graph),
            }
            for c in cat
        ],
    }


def _cell_record(c) -> dict:
    rec = {
        "graph_id": c.entry.index,
        "dim": c.dim,
        "aut_order": c.entry.aut.order,
        "aut_edge_order": c.entry.aut.edge_action_order,
        "shape": identify_shape(c.entry.graph),
    }
    if isinstance(c, CompactRationalCell):
        rec["f_vector"] = list(c.lattice.f_vector)
        rec["vertices"] = len(c.polytope.vertices)
        rec["alpha"] = c.alpha
        rec["building_family"] = sorted(sorted(b) for b in c.family.B)
    else:
        rec["f_vector"] = list(c.polytope.lattice.f_vector)
    return rec


def _stats_record(st) -> dict:
    return {
        "cells_by_dim": list(st.cells_by_dim),
        "orbifold_euler": st.orbifold_euler,
        "euler": st.euler,
        "boundary_circles": st.boundary_circles,
        "components": st.components,
        "is_surface": st.is_surface,
    }


def complex_payload(g: int, n: int, compact: bool, alpha: Fraction | None, max_half_edges: int | None,
                    threads: int) -> dict:
    C = assemble_complex((g, n), compact, alpha, max_half_edges, threads)
    return {
        "type": _type(C.top_type),
        "compact": compact,
        "cells": [_cell_record(c) for c in C.cells],
        "attachments": [
            {"source": a.source, "forest": list(a.forest), "target": a.target,
             "edge_map": [list(p) for p in a.edge_map]}
            for a in C.attachments
        ],
        "stats": _stats_record(complex_stats(C)),
    }


def _polytope_record(P) -> dict:
    L = P.lattice
    facets = []
    for f in L.facets:
        tags = sorted(f"{k}:{v}" if k == "facet" else f"{k}:{','.join(map(str, sorted(v)))}" for k, v in f.tags)
        facets.append({"tags": tags, "vertices": sorted(f.vertices)})
    return {
        "ground_set": list(P.ground_set),
        "vertices": [[rational(x) for x in v] for v in P.vertices],
        "f_vector": list(L.f_vector),
        "facets": facets,
        "euler_relation": L.euler_relation_holds(),
    }


def symmetric_payload(args, threads: int) -> dict:
    t = BorderedType(args.genus, args.boundaries, args.interior, args.boundary_marks)
    inv = bordered_invariants(t)
    S = symmetric_subcomplex(t, args.compact, args.alpha, args.max_half_edges, threads)
    return {
        "type": {"genus": t.g, "boundaries": t.b, "interior": t.n, "boundary_marks": t.m},
        "invariants": {"double_type": _type(inv.double_type), "euler": inv.euler, "dim": inv.dim},
        "compact": args.compact,
        "cells_by_dim": list(S.cells_by_dim),
        "flagged": S.flagged,
        "cells": [
            {
                "graph_id": p.key[0],
                "dim": p.dim,
                "face": sorted(p.key[1]),
                "origin": p.origin,
                "tau": [[h + 1 for h in tau] for tau in p.structures],
            }
            for p in S.pieces
        ],
    }


# -- driver --------------------------------------------------------------

def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "export-dot" and args.genus is not None and args.cycles is None:
        parser.error("export-dot --genus needs --cycles")
    try:
        if args.command == "enumerate":
            _emit(dumps(enumerate_payload(args.genus, args.cycles, args.max_half_edges, args.threads)), args.json)
        elif args.command == "complex":
            payload = complex_payload(args.genus, args.cycles, args.compact, args.alpha, args.max_half_edges,
                                      args.threads)
            _emit(dumps(payload), args.json)
        elif args.command == "polytope":
            if args.kind == "permutohedron":
                P = permutohedron(range(1, args.n + 1), args.alpha)
            else:
                P = nestohedron(range(1, args.s + 1), args.cuts, args.alpha)
            _emit(dumps(_polytope_record(P)), args.json)
        elif args.command == "symmetric":
            _emit(dumps(symmetric_payload(args, args.threads)), args.json)
        elif args.command == "export-dot":
            if args.graph:
                g = graph_from_dict(json.loads(Path(args.graph).read_text(encoding="utf-8")))
            else:
                cat = enumerate_graphs((args.genus, args.cycles), threads=args.threads)
                if args.index >= len(cat):
                    raise RibbonModuliError(f"class index {args.index} out of range (0..{len(cat) - 1})")
                g = cat.classes[args.index].graph
            _emit(graph_to_dot(g), args.output)
    except RibbonModuliError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
