"""Ribbon graphs, combinatorial moduli spaces of curves and their symmetric parts."""

from .enumeration import GraphCatalog, collapse_poset, enumerate_graphs
from .errors import (
    Disconnected,
    EmptyResult,
    GluingMismatch,
    GraphError,
    InvalidFamily,
    LabelMismatch,
    LoopContraction,
    NotASurface,
    NotForest,
    NotInvolution,
    ResourceLimit,
    RibbonModuliError,
    ValenceTooLow,
)
from .kernels import BACKEND
from .moduli import assemble_complex, building_family, compact_cell, complex_stats
from .polytope import face_lattice, nestohedron, permutohedron, permutohedron_chain_faces, stability_check, standard_simplex, vertices
from .real import BorderedType, bordered_invariants, fixed_cell, real_structures, symmetric_subcomplex
from .ribbon import (
    RibbonGraph,
    TopologicalType,
    automorphism_group,
    boundary_cycles,
    build_graph,
    canonical_form,
    collapse_forest,
    contract,
    is_forest,
    isomorphism,
    perimeter_map,
    top_type,
    triangulation_counts,
)

__version__ = "0.1.0"
