"""Tree-line graphs, tree partitions and continuous-time quantum walks."""

from .derive import (
    DerivedGraph,
    DerivedVertex,
    adjacency_oracle,
    btl_tree_classes,
    derive_iterated,
    derive_step,
    enumerate_k_trees,
    incidence_factorization_check,
    incidence_matrix,
    k_tree_graph,
    parse_label,
    tree_map,
)
from .errors import (
    DerivationTooLarge,
    DimensionMismatch,
    DuplicateEdge,
    FactorizationLimit,
    InvalidEdge,
    MalformedSubgraph,
    NotConnected,
    NotEquitable,
    NumericalFailure,
    TreewalkError,
    VertexOutOfRange,
)
from .graph import (
    PrimitiveGraph,
    TreeData,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    from_edge_list,
    gamma8,
    is_tree,
    path_graph,
    star_graph,
    subgraph_intersection,
    subgraph_union,
    tree_from_edges,
)
from .partition import (
    QuotientMatrix,
    TreePartition,
    btl_quotient,
    is_equitable,
    quotient_matrix,
    tree_partition,
)
from .spectral import (
    CharPoly,
    Periodicity,
    PeriodicityVerdict,
    blowup_char_poly,
    char_poly_exact,
    eigenvalues_numeric,
    integer_roots,
    multipartite_char_poly,
    periodicity_classify,
    squarefree_part,
)
from .walk import (
    AmplitudeTable,
    WalkOperator,
    amplitude,
    infinitesimal_table,
    periodic_return_scan,
    pst_scan,
    transition_operator,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeTable",
    "CharPoly",
    "DerivationTooLarge",
    "DerivedGraph",
    "DerivedVertex",
    "DimensionMismatch",
    "DuplicateEdge",
    "FactorizationLimit",
    "InvalidEdge",
    "MalformedSubgraph",
    "NotConnected",
    "NotEquitable",
    "NumericalFailure",
    "Periodicity",
    "PeriodicityVerdict",
    "PrimitiveGraph",
    "QuotientMatrix",
    "TreeData",
    "TreePartition",
    "TreewalkError",
    "VertexOutOfRange",
    "WalkOperator",
    "adjacency_oracle",
    "amplitude",
    "blowup_char_poly",
    "btl_quotient",
    "btl_tree_classes",
    "char_poly_exact",
    "complete_graph",
    "complete_multipartite",
    "cycle_graph",
    "derive_iterated",
    "derive_step",
    "eigenvalues_numeric",
    "enumerate_k_trees",
    "from_edge_list",
    "gamma8",
    "incidence_factorization_check",
    "incidence_matrix",
    "infinitesimal_table",
    "integer_roots",
    "is_equitable",
    "is_tree",
    "k_tree_graph",
    "multipartite_char_poly",
    "parse_label",
    "path_graph",
    "periodic_return_scan",
    "periodicity_classify",
    "pst_scan",
    "quotient_matrix",
    "squarefree_part",
    "star_graph",
    "subgraph_intersection",
    "subgraph_union",
    "transition_operator",
    "tree_from_edges",
    "tree_map",
    "tree_partition",
]
