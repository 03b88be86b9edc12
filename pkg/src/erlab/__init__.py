"""Computational toolkit for generalized Erdős–Rogers problems."""

from .errors import (
    BudgetError,
    ConstructionError,
    DomainError,
    ErlabError,
    ParseError,
    PreconditionError,
    SizeError,
)
from .graph import (
    Graph,
    common_neighbourhood,
    complete_bipartite,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    empty_graph,
    graph6_decode,
    graph6_encode,
    induced,
    lexicographic_product,
    path_graph,
    petersen_graph,
    random_gnp,
    union_same_vertices,
)
from .incidence import BipartiteIncidence
from .patterns import (
    Pattern,
    bipartite_has_C4,
    bipartite_has_C6,
    chromatic_number,
    clique_number,
    contains_subgraph,
    every_small_subgraph_colorable,
    has_rooted_K4_subdivision,
    is_kr_free,
)
from .rng import RngConfig
from .solvers import SolveReport, alpha_F, count_ffree_sets, f_exact, independence_number
from .domination import DominationResult, gamma_s_exact, randomized_dominating_set, verify_domination
from .sampling import (
    DensePair,
    GoodSetParams,
    drc_filter,
    enumerate_good_sets,
    extract_ffree_recursive,
    extract_ffree_theorem23,
    find_dense_pair,
    independent_set_k4free,
)
from .geometry import build_field, hermitian_unital
from .constructions import (
    BlowupPlan,
    blowup_on_host,
    generate_c4c6free,
    recursive_kttfree,
    rho_recursion_bound,
    trianglefree_blowup,
    union_with_random,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "ConstructionError",
    "DomainError",
    "ErlabError",
    "ParseError",
    "PreconditionError",
    "SizeError",
    "Graph",
    "common_neighbourhood",
    "complete_bipartite",
    "complete_graph",
    "complete_multipartite",
    "cycle_graph",
    "empty_graph",
    "graph6_decode",
    "graph6_encode",
    "induced",
    "lexicographic_product",
    "path_graph",
    "petersen_graph",
    "random_gnp",
    "union_same_vertices",
    "BipartiteIncidence",
    "Pattern",
    "bipartite_has_C4",
    "bipartite_has_C6",
    "chromatic_number",
    "clique_number",
    "contains_subgraph",
    "every_small_subgraph_colorable",
    "has_rooted_K4_subdivision",
    "is_kr_free",
    "RngConfig",
    "SolveReport",
    "alpha_F",
    "count_ffree_sets",
    "f_exact",
    "independence_number",
    "DominationResult",
    "gamma_s_exact",
    "randomized_dominating_set",
    "verify_domination",
    "DensePair",
    "GoodSetParams",
    "drc_filter",
    "enumerate_good_sets",
    "extract_ffree_recursive",
    "extract_ffree_theorem23",
    "find_dense_pair",
    "independent_set_k4free",
    "build_field",
    "hermitian_unital",
    "BlowupPlan",
    "blowup_on_host",
    "generate_c4c6free",
    "recursive_kttfree",
    "rho_recursion_bound",
    "trianglefree_blowup",
    "union_with_random",
    "__version__",
]
