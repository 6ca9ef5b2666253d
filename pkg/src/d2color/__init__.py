"""Distance-2 edge coloring toolkit.

Strong (distance-2) edge coloring primitives, exact solvers, certified
boundary gadgets, and a transformation from not-all-equal 3-SAT into
5-colorability on bipartite, 2-inductive, maximum-degree-3 graphs.
"""

from .graph import (
    BipartitionResult,
    Edge,
    Graph,
    GraphFormatError,
    StructuralReport,
    Vertex,
    bipartition,
    build_graph,
    canonical_edge,
    girth,
    inductiveness,
    parse_graph,
    relabel,
    structural_report,
    write_graph,
)
from .coloring import (
    FIVE_PALETTE,
    ConflictRelation,
    SolveResult,
    VerifyResult,
    brute_force_index,
    conflict_relation,
    enumerate_colorings,
    palette_for,
    parse_coloring,
    solve,
    verify,
    write_coloring,
)
from .cnf import dpll_satisfiable, encode_cnf, parse_dimacs
from .config import RunConfig, load_config, parse_config_text
from .dot import export_dot
from .gadgets import (
    BoundaryEdge,
    CertReport,
    Gadget,
    certify,
    clause_gadget,
    fanout_of_width,
    fuse,
    parse_gadget,
    prefixed,
    structural_problems,
    sun_fanout,
    sun_graph,
    synthesize_gadget,
    variable_gadget,
    write_gadget,
)
from .reduction import (
    AssignmentResult,
    ColoringRejected,
    ColoringResult,
    FusionRecord,
    GadgetInstance,
    Literal,
    NaeFormatError,
    NaeInstance,
    ReductionArtifact,
    RoundtripReport,
    assignment_to_coloring,
    check_nae,
    coloring_to_assignment,
    compile_instance,
    nae_brute_force,
    parse_nae,
    parse_provenance,
    roundtrip_report,
    skeleton_pins,
    write_nae,
    write_provenance,
)

__version__ = "0.1.0"

__all__ = [
    "AssignmentResult",
    "BipartitionResult",
    "BoundaryEdge",
    "CertReport",
    "ColoringRejected",
    "ColoringResult",
    "ConflictRelation",
    "Edge",
    "FIVE_PALETTE",
    "FusionRecord",
    "Gadget",
    "GadgetInstance",
    "Graph",
    "GraphFormatError",
    "Literal",
    "NaeFormatError",
    "NaeInstance",
    "ReductionArtifact",
    "RoundtripReport",
    "RunConfig",
    "SolveResult",
    "StructuralReport",
    "VerifyResult",
    "Vertex",
    "assignment_to_coloring",
    "bipartition",
    "brute_force_index",
    "build_graph",
    "canonical_edge",
    "certify",
    "check_nae",
    "clause_gadget",
    "coloring_to_assignment",
    "compile_instance",
    "conflict_relation",
    "dpll_satisfiable",
    "encode_cnf",
    "enumerate_colorings",
    "export_dot",
    "fanout_of_width",
    "fuse",
    "girth",
    "inductiveness",
    "load_config",
    "nae_brute_force",
    "palette_for",
    "parse_coloring",
    "parse_config_text",
    "parse_dimacs",
    "parse_gadget",
    "parse_graph",
    "parse_nae",
    "parse_provenance",
    "prefixed",
    "relabel",
    "roundtrip_report",
    "skeleton_pins",
    "solve",
    "structural_problems",
    "structural_report",
    "sun_fanout",
    "sun_graph",
    "synthesize_gadget",
    "variable_gadget",
    "verify",
    "write_coloring",
    "write_gadget",
    "write_graph",
    "write_nae",
    "write_provenance",
]
