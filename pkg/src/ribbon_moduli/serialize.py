"""JSON and DOT encodings with byte-stable output."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .ribbon import RibbonGraph, build_graph, to_cycles


def rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; rejects floats and zero denominators."""
    text = text.strip()
    num, _, den = text.partition("/")
    try:
        value = Fraction(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc
    return value


def _plain(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((_plain(v) for v in obj), key=lambda v: json.dumps(v, sort_keys=True))
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(_plain(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def graph_to_dict(g: RibbonGraph) -> dict:
    """1-based cycles for s0, pairs for s1, and one representative half-edge per label."""
    s0, s1, labels = to_cycles(g)
    return {
        "half_edges": g.half_edge_count,
        "sigma0": s0,
        "sigma1": s1,
        "labels": {str(k): v for k, v in sorted(labels.items())},
    }


def graph_from_dict(data: dict) -> RibbonGraph:
    labels = {int(k): int(v) for k, v in data.get("labels", {}).items()} or None
    g = build_graph(data["sigma0"], data["sigma1"], labels)
    if "half_edges" in data and data["half_edges"] != g.half_edge_count:
        raise ValueError("half_edges does not match the permutations")
    return g


def graph_to_dot(g: RibbonGraph, name: str = "ribbon") -> str:
    """Vertices with their cyclic half-edge order; edges tagged by half-edges."""
    lines = [f"graph {name} {{"]
    for i, cyc in enumerate(g.vertices):
        order = " ".join(str(h + 1) for h in cyc)
        lines.append(f'  v{i} [label="v{i}: ({order})"];')
    for j, (a, b) in enumerate(g.edges):
        lines.append(f'  v{g.vertex_of[a]} -- v{g.vertex_of[b]} [label="e{j}: {a + 1}|{b + 1}"];')
    for k, orbit in enumerate(g.boundary_orbits):
        cyc = " ".join(str(h + 1) for h in orbit)
        lines.append(f'  // boundary {k + 1}: ({cyc})')
    lines.append("}")
    return "\n".join(lines) + "\n"
