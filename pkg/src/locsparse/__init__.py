"""Local clique-sparsity certificates, hard-core occupancy bounds,
constructive independent sets, and correspondence-coloring condition checkers."""

from .errors import InternalCheckError, NoCrossingError, PreconditionError
from .graph import (
    Graph,
    SparsityCertificate,
    automorphism_count,
    certify_local_sparsity,
    clique_budget_from_pattern,
    count_cliques,
    count_subgraph_copies,
    load_graph,
    save_graph,
)
from .hardcore import (
    HardCoreSampleStats,
    IndependencePolynomial,
    ExactSampler,
    exact_sample,
    glauber_sample,
    independence_polynomial,
    median_independence_number,
    occupancy_fraction,
    occupancy_fraction_exact,
    transfer_partition_function,
)
from .bounds import (
    BoundParameters,
    IndependentSetWitness,
    asymptotic_bound,
    average_degree_reduction,
    balanced_iset_size,
    greedy_independent_set,
    log_partition_lower_bound,
    occupancy_ratio_reference,
    sparse_independent_set,
)
from .occupancy import (
    CheckVerdict,
    OccupancyCertificate,
    auto_certify,
    certified_occupancy_bound,
    check_certificate,
    check_certificate_sampled,
    occupancy_parameters,
    solve_balance_point,
)
from .coloring import (
    CorrespondenceCover,
    bknp_condition_check,
    cover_from_lists,
    dkps_condition_check,
    heuristic_color,
    is_list_like,
    list_size_threshold,
    median_independence_lower_bound,
    min_median_independence,
    random_cover,
    solve_exact,
    validate_assignment,
)
from .embedding import EmbeddingResult, min_degree_boost, verify_embedding

__version__ = "0.1.0"
