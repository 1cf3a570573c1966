"""Hamiltonicity of graphon-sampled random graphs: structural analyzers,
half-integral matching/cover certificates, and a seeded Monte Carlo harness.
"""

from .cutnorm import (
    CutNormResult,
    DistanceEstimate,
    StepFunction,
    cut_norm_exact,
    cut_norm_heuristic,
    sample_distance,
    step_difference,
)
from .errors import (
    BipartiteOrDisconnected,
    EnumerationCapExceeded,
    FormatError,
    GraphonHamError,
    GreedyStuck,
    NoCertificate,
    NotBinaryTree,
    TypesMissing,
)
from .fracmatch import (
    FiniteGraph,
    GraphPeninsula,
    HalfCover,
    HalfMatching,
    check_duality,
    fmn_half,
    fvcn_half,
    fvcn_value,
    graph_peninsula,
    half_integral_perfect_matching,
    is_bipartite,
    is_connected,
    non_bipartite_if_uhc,
    uniquely_half_covered,
)
from .graphon import (
    ConditionReport,
    ConnectivityVerdict,
    DegreeProfile,
    PeninsulaCertificate,
    PowerFamilyGraphon,
    StepGraphon,
    analyze,
    block_positivity_graph,
    build_certificate,
    check_connected,
    check_degree_tail,
    check_exact_bipartite_split,
    degree_profile,
    degree_tail_ratio,
    find_peninsula,
    load_graphon,
    load_graphon_file,
    peninsula_kind_via_cover,
)
from .hamilton import (
    HamiltonVerdict,
    cheap_obstructions,
    classify,
    exact_hamilton,
    posa_heuristic,
    validate_cycle,
)
from .harness import (
    ExperimentConfig,
    ExperimentReport,
    FluctuationReport,
    TrialRecord,
    aggregate,
    multinomial_fluctuation_report,
    records_from_csv,
    records_to_csv,
    run_experiment,
    run_trial,
    wilson_interval,
)
from .pathsys import (
    PathSystem,
    PathSystemCheck,
    check_path_system,
    decompose_binary_tree,
    low_degree_path_system,
    odd_walk,
)
from .presets import PRESET_NAMES, get_preset, preset_payload
from .sampler import (
    SampledGraph,
    VertexType,
    degree_concentration_report,
    edge_coin,
    edge_stream_offset,
    sample_graph,
    sample_types,
)

__version__ = "0.1.0"
