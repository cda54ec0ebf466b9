"""Exact calculus for color palettes of ordered 3-uniform hypergraphs.

A palette is a set of ordered color triples; a 3-graph admits it when
some linear vertex order and pair coloring put every edge's triple into
the set.  The package provides the admission and embedding engines,
exact density and degree metrics, randomized palette hypergraphs with
density audits, walk and layering recognizers, and bounded searches
over palettes and small graphs, all with deterministic seeds and exact
rational arithmetic.
"""
from .admission import (
    SearchLimits,
    admits,
    build_reduced,
    embeds,
    verify_admission,
    verify_embedding,
)
from .cache import MemoryCache, VerdictCache
from .constructions import (
    CoverageReport,
    DensityAuditReport,
    LinearBuildReport,
    LinearKGraph,
    WalkReport,
    audit_dot_density,
    audit_vertexpair_density,
    build_fk,
    build_linear_monotone,
    chain_coloring_witness,
    check_linear,
    complete_three_graph,
    find_full_coverage_linear,
    k4_minus,
    linear_k_graph,
    longest_walk,
    make_alternating_palette,
    make_chain_palette,
    make_rainbow,
    monotone_coverage,
    sample_hypergraph,
    walk_chain,
    walk_level_sets,
)
from .core import (
    AdmissionWitness,
    BudgetExhaustedError,
    EmbeddingWitness,
    FreeGroupWord,
    LayeringWitness,
    LimitError,
    Palette,
    PaletteLabError,
    ParseError,
    ReducedHypergraph,
    ThreeGraph,
    WitnessError,
    admission_witness,
    apply_color_map,
    canonical_palette,
    canonical_three_graph,
    color_orbits,
    embedding_witness,
    layering_witness,
    pair,
    palette,
    ratio_from_str,
    ratio_to_str,
    reduced_hypergraph,
    relabel_three_graph,
    three_graph,
    validate,
)
from .layered import (
    LayeredLimits,
    fg_inverse,
    fg_labelling_to_layering,
    fg_multiply,
    fg_reduce,
    fg_word,
    greedy_admission,
    induced_triples,
    is_max_degenerate,
    is_max_layered,
    is_min_degenerate,
    is_min_layered,
    verify_fg_labelling,
)
from .metrics import (
    density,
    min_codegree,
    min_degree,
    reverse,
    subpalette,
    verify_subpalette,
)
from .rng import GENERATOR_ID, SplitMix64
from .search import (
    K4MinusReport,
    SeparationResult,
    enumerate_palettes,
    enumerate_three_graphs,
    palette_turan_lower_bound,
    random_palettes,
    search_separating_graph,
    verify_k4minus_structure,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissionWitness",
    "BudgetExhaustedError",
    "CoverageReport",
    "DensityAuditReport",
    "EmbeddingWitness",
    "FreeGroupWord",
    "GENERATOR_ID",
    "K4MinusReport",
    "LayeredLimits",
    "LayeringWitness",
    "LimitError",
    "LinearBuildReport",
    "LinearKGraph",
    "MemoryCache",
    "Palette",
    "PaletteLabError",
    "ParseError",
    "ReducedHypergraph",
    "SearchLimits",
    "SeparationResult",
    "SplitMix64",
    "ThreeGraph",
    "VerdictCache",
    "WalkReport",
    "WitnessError",
    "admission_witness",
    "admits",
    "apply_color_map",
    "audit_dot_density",
    "audit_vertexpair_density",
    "build_fk",
    "build_linear_monotone",
    "build_reduced",
    "canonical_palette",
    "canonical_three_graph",
    "chain_coloring_witness",
    "check_linear",
    "color_orbits",
    "complete_three_graph",
    "density",
    "embedding_witness",
    "embeds",
    "enumerate_palettes",
    "enumerate_three_graphs",
    "fg_inverse",
    "fg_labelling_to_layering",
    "fg_multiply",
    "fg_reduce",
    "fg_word",
    "find_full_coverage_linear",
    "greedy_admission",
    "induced_triples",
    "is_max_degenerate",
    "is_max_layered",
    "is_min_degenerate",
    "is_min_layered",
    "k4_minus",
    "layering_witness",
    "linear_k_graph",
    "longest_walk",
    "make_alternating_palette",
    "make_chain_palette",
    "make_rainbow",
    "min_codegree",
    "min_degree",
    "monotone_coverage",
    "pair",
    "palette",
    "palette_turan_lower_bound",
    "random_palettes",
    "ratio_from_str",
    "ratio_to_str",
    "reduced_hypergraph",
    "relabel_three_graph",
    "reverse",
    "sample_hypergraph",
    "search_separating_graph",
    "subpalette",
    "three_graph",
    "validate",
    "verify_admission",
    "verify_embedding",
    "verify_fg_labelling",
    "verify_k4minus_structure",
    "verify_subpalette",
    "walk_chain",
    "walk_level_sets",
]
