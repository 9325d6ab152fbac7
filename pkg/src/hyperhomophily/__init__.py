"""Homophily measurement for attributed hypergraphs.

Quantifies how much less (or more) diverse group interactions are than a
degree-preserving random baseline, per hyperedge and aggregated over the
hypergraph, with a block-model generator for validation sweeps.
"""

__version__ = "0.1.0"

from .diversity import (
    HyperedgeComposition,
    bulk_diversity,
    composition,
    hill_number,
    perplexity,
)
from .exceptions import (
    DegenerateMixingError,
    DuplicateNodeError,
    EmptyAnalysisError,
    InsufficientPopulationError,
    NodeRangeError,
    ParseError,
    StateSpaceError,
)
from .homophily import (
    CurveRow,
    Exclusion,
    HomophilyRecord,
    HomophilyReport,
    PerKRow,
    analyze,
    newman_assortativity,
    perplexity_curve,
    score_edge,
)
from .hsbm import (
    GridPoint,
    HsbmConfig,
    SweepPoint,
    generate_hsbm,
    sweep_phi_vs_k,
    sweep_phi_vs_p,
)
from .hypergraph import (
    UNLABELED,
    Hypergraph,
    IngestOptions,
    IngestStats,
    KDegreeIndex,
    edge_sizes,
    k_degrees,
    k_uniform_sub,
    load_hypergraph,
    parse_hypergraph,
    total_degrees,
    write_hypergraph,
)
from .nullmodel import (
    BaselineEstimate,
    SamplerConfig,
    derive_seed,
    estimate_baseline,
    exact_baseline,
    sample_weighted_k_set,
    sample_weighted_k_sets,
)

__all__ = [
    "__version__",
    "UNLABELED",
    "Hypergraph",
    "IngestOptions",
    "IngestStats",
    "KDegreeIndex",
    "parse_hypergraph",
    "load_hypergraph",
    "write_hypergraph",
    "k_uniform_sub",
    "k_degrees",
    "total_degrees",
    "edge_sizes",
    "HyperedgeComposition",
    "composition",
    "perplexity",
    "hill_number",
    "bulk_diversity",
    "SamplerConfig",
    "BaselineEstimate",
    "sample_weighted_k_set",
    "sample_weighted_k_sets",
    "estimate_baseline",
    "exact_baseline",
    "derive_seed",
    "HomophilyRecord",
    "HomophilyReport",
    "PerKRow",
    "CurveRow",
    "Exclusion",
    "score_edge",
    "analyze",
    "perplexity_curve",
    "newman_assortativity",
    "HsbmConfig",
    "generate_hsbm",
    "sweep_phi_vs_p",
    "sweep_phi_vs_k",
    "SweepPoint",
    "GridPoint",
    "ParseError",
    "NodeRangeError",
    "DuplicateNodeError",
    "InsufficientPopulationError",
    "StateSpaceError",
    "EmptyAnalysisError",
    "DegenerateMixingError",
]
