"""Canonical labelling of regular graphs by triangle-seeded colour
refinement, with uniform regular-graph samplers, exact small-case oracles,
structural statistics and a reproducible experiment harness.
"""

from ._backend import backend_name
from .analysis import (
    MixingReport,
    SpectralEstimate,
    SphereGrowthReport,
    degree_histogram_into_set,
    lambda_estimate,
    mixing_discrepancy,
    sphere_growth_check,
)
from .canonical import (
    CanonicalLabelling,
    FailureReason,
    IsoResult,
    IsoVerdict,
    LabellingFailure,
    TriangleProfile,
    are_isomorphic,
    canonical_form,
    canonical_labelling,
    seed_partition,
    triangle_counts_listing,
    triangle_counts_matrix,
)
from .graph import (
    Graph,
    SphereReport,
    apply_permutation,
    complement,
    degree_profile,
    diameter,
    from_edge_list,
    graph_from_text,
    graph_to_text,
    read_graph,
    sphere_sizes,
    write_graph,
)
from .harness import (
    CellReport,
    ExperimentConfig,
    emit_report,
    run_discreteness_experiment,
    run_iso_roundtrip_experiment,
    run_seed_validity_experiment,
)
from .inequalities import (
    InequalityReport,
    check_hypergeometric_anticoncentration,
    check_lemma_aux,
)
from .refinement import (
    Colouring,
    RefinementTrace,
    VertexPartition,
    is_discrete,
    is_equitable,
    read_partition,
    refine_step,
    refine_to_stable,
    write_partition,
)
from .sampler import (
    DegreeSequence,
    RngSeed,
    SubgraphEstimate,
    enumerate_graphs_with_degrees,
    estimate_subgraph_probability,
    sample_regular,
    sample_uniform_tiny,
    stable_hash,
)

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "Graph", "SphereReport", "from_edge_list", "complement", "sphere_sizes",
    "diameter", "degree_profile", "apply_permutation", "read_graph",
    "write_graph", "graph_to_text", "graph_from_text",
    "RngSeed", "DegreeSequence", "SubgraphEstimate", "stable_hash",
    "sample_regular", "enumerate_graphs_with_degrees", "sample_uniform_tiny",
    "estimate_subgraph_probability",
    "Colouring", "VertexPartition", "RefinementTrace", "refine_step",
    "refine_to_stable", "is_discrete", "is_equitable", "read_partition",
    "write_partition",
    "TriangleProfile", "CanonicalLabelling", "LabellingFailure",
    "FailureReason", "IsoResult", "IsoVerdict", "triangle_counts_listing",
    "triangle_counts_matrix", "seed_partition", "canonical_labelling",
    "canonical_form", "are_isomorphic",
    "SpectralEstimate", "MixingReport", "SphereGrowthReport",
    "lambda_estimate", "mixing_discrepancy", "degree_histogram_into_set",
    "sphere_growth_check",
    "InequalityReport", "check_lemma_aux",
    "check_hypergeometric_anticoncentration",
    "ExperimentConfig", "CellReport", "run_discreteness_experiment",
    "run_seed_validity_experiment", "run_iso_roundtrip_experiment",
    "emit_report",
]
