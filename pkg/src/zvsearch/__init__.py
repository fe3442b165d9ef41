"""Zero-visibility sweep searching on graphs.

The package splits along the natural seams of the problem: graphs and
subdivisions, the sweep dynamics, exact solvers, decompositions with
their forbidden-pattern witnesses, and constructive search synthesis.
"""

from .errors import InputError, ResourceLimitError
from .forbidden import (
    Bipath,
    ForbiddenWitness,
    brute_force_forbidden,
    embedded,
    pattern_check,
    pattern_problems,
)
from .game import (
    SearchTrace,
    check_aligned_search,
    check_search,
    invariant_core,
    invariant_hull,
    is_aligned,
    is_invariant,
    is_monotonic,
    is_successful,
    push_search,
    search_width,
    simulate,
)
from .graphs import (
    EquivalenceSpec,
    Graph,
    SubdividedGraph,
    ball,
    boundary,
    edge_key,
    format_edge_list,
    generate,
    parse_edge_list,
    quotient,
    subdivide,
    subdivision_label,
)
from .gsp import (
    Classification,
    GspTree,
    TerminalGraph,
    build_simple_gsp,
    classify_topological_3,
    complexity,
    compose,
    gsp_decompose,
    invert,
    is_simple,
    leaf,
    node,
    sp_decompose,
    subdivide_decomposition,
    tree_from_record,
    tree_to_record,
)
from .solver import (
    BoundaryGapCertificate,
    PathDecomposition,
    SolveResult,
    boundary_gap_certificate,
    boundary_profile,
    exists_monotonic_search,
    exists_successful_search,
    inspection_number,
    monotonic_inspection_number,
    pathwidth,
)
from .synth import (
    AlignedSearchBundle,
    SynthTask,
    amalgamate_branch,
    amalgamate_branch_prime,
    amalgamate_parallel,
    amalgamate_series,
    clear_ball_inward,
    clear_ball_outward,
    grid_search,
    split_at_bridge,
    synthesize,
)

__version__ = "0.1.0"
