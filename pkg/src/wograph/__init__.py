"""Combinatorial unmixedness checks for weighted oriented graphs.

The package models a finite simple graph with an orientation and positive
integer vertex weights, enumerates its strong vertex covers, and decides
unmixedness either by brute-force enumeration or through the structural
criteria exposed in :mod:`wograph.deciders`.
"""

from .catalog import CatalogEntry, SPECIAL_NAMES, catalog, catalog_entry, catalog_graph
from .covers import (
    CoverAnalysis,
    StableSetWitness,
    Verdict,
    all_vertex_covers,
    analyze_cover,
    beta,
    is_konig,
    is_vertex_cover,
    is_well_covered,
    maximal_stable_sets,
    minimal_vertex_covers,
    nu,
    oracle_unmixed,
    stable_set_mixed_witness,
    strengthen,
    strong_vertex_covers,
    tau,
)
from .deciders import (
    DECIDERS,
    FAMILIES,
    MIXED,
    NOT_APPLICABLE,
    UNKNOWN,
    UNMIXED,
    DispatchResult,
    FamilyReport,
    decide_girth_ge_5,
    decide_girth_ge_6,
    decide_konig,
    decide_no_3_5_cycles,
    decide_no_4_5_cycles,
    decide_perfect,
    decide_scq,
    decide_simplicial_or_chordal,
    decide_sinks_sufficient,
    dispatch,
)
from .errors import (
    CapacityError,
    ConsistencyError,
    DocumentError,
    GenerationError,
    PreconditionError,
    StructureError,
    UnknownVertexError,
    WographError,
)
from .fixtures import FIXTURE_NAMES, fixture_document, fixture_graph, fixture_text
from .families import (
    CliqueTauReduction,
    SCQDecomposition,
    SpecialGraphId,
    StarCheck,
    basic_five_cycles,
    edge_has_property_P,
    identify_special,
    is_chordal,
    is_perfect,
    is_simplicial_graph,
    matching_has_property_P,
    scq_decompose,
    scq_tau,
    simplexes,
    simplicial_vertices,
    star_property,
    tau_clique_reduction,
)
from .generate import FAMILY_PREDICATES, FuzzConfig, gen_random
from .graph import UnderlyingGraph, WeightedOrientedGraph, normalize
from .graphio import (
    FORMAT_VERSION,
    GraphDocument,
    parse,
    parse_document,
    serialize,
)
from .semiforest import (
    EMPTY_SEMIFOREST,
    RootOrientedTree,
    StarSemiForest,
    UnicycleSubgraph,
    Violation,
    exists_generating_semiforest,
    h_tilde,
    semiforest_from_strong_cover,
    strong_cover_superset_exists,
    validate_rot,
    validate_semiforest,
    validate_unicycle,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CatalogEntry",
    "CliqueTauReduction",
    "ConsistencyError",
    "CoverAnalysis",
    "DECIDERS",
    "DispatchResult",
    "DocumentError",
    "EMPTY_SEMIFOREST",
    "FAMILIES",
    "FAMILY_PREDICATES",
    "FIXTURE_NAMES",
    "FORMAT_VERSION",
    "FamilyReport",
    "FuzzConfig",
    "GenerationError",
    "GraphDocument",
    "MIXED",
    "NOT_APPLICABLE",
    "PreconditionError",
    "RootOrientedTree",
    "SCQDecomposition",
    "SPECIAL_NAMES",
    "SpecialGraphId",
    "StableSetWitness",
    "StarCheck",
    "StarSemiForest",
    "StructureError",
    "UNKNOWN",
    "UNMIXED",
    "UnderlyingGraph",
    "UnicycleSubgraph",
    "UnknownVertexError",
    "Verdict",
    "Violation",
    "WeightedOrientedGraph",
    "WographError",
    "all_vertex_covers",
    "analyze_cover",
    "basic_five_cycles",
    "beta",
    "catalog",
    "catalog_entry",
    "catalog_graph",
    "decide_girth_ge_5",
    "decide_girth_ge_6",
    "decide_konig",
    "decide_no_3_5_cycles",
    "decide_no_4_5_cycles",
    "decide_perfect",
    "decide_scq",
    "decide_simplicial_or_chordal",
    "decide_sinks_sufficient",
    "dispatch",
    "edge_has_property_P",
    "exists_generating_semiforest",
    "fixture_document",
    "fixture_graph",
    "fixture_text",
    "gen_random",
    "h_tilde",
    "identify_special",
    "is_chordal",
    "is_konig",
    "is_perfect",
    "is_simplicial_graph",
    "is_vertex_cover",
    "is_well_covered",
    "matching_has_property_P",
    "maximal_stable_sets",
    "minimal_vertex_covers",
    "normalize",
    "nu",
    "oracle_unmixed",
    "parse",
    "parse_document",
    "scq_decompose",
    "scq_tau",
    "semiforest_from_strong_cover",
    "serialize",
    "simplexes",
    "simplicial_vertices",
    "stable_set_mixed_witness",
    "star_property",
    "strengthen",
    "strong_cover_superset_exists",
    "strong_vertex_covers",
    "tau",
    "tau_clique_reduction",
    "validate_rot",
    "validate_semiforest",
    "validate_unicycle",
]
