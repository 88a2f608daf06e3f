"""Exact-arithmetic toolkit for the perfect matching derangement graph.

The graph has the perfect matchings of a complete graph on 2k points as
vertices, adjacent when edge-disjoint.  This package builds it, certifies
its spectrum and extremal structure in exact arithmetic, and assembles
the symmetry obstruction showing it is no Cayley graph, all at sizes a
desk machine handles.
"""

from .matchings import (
    CapExceeded,
    ENUMERATION_CAP,
    Matching,
    double_factorial,
    enumerate_matchings,
    matching_count,
    union_cycle_type,
)
from .partitions import Partition, iter_partitions, partition_count, partitions_of
from .exact import ExactMatrix, integer_roots, solve
from .characters import character, hook_dimension, matching_scheme_labels
from .graphs import (
    DerangementGraph,
    KneserGraph,
    build_graph,
    canonical_coclique,
    degree_formula,
    enumerate_maximum_cocliques,
    one_factorization_clique,
    quotient_matrix,
)
from .spectra import (
    Spectrum,
    derangement_spectrum,
    kneser_eigenvalues,
    module_labeling,
    ratio_bound,
    trace_square_check,
)
from .polytope import (
    facet_size,
    gram_identity_check,
    incidence_matrix,
    polytope_membership,
    rank_U,
)
from .cayley import automorphism_group_order, non_cayley_verdict, prime_pair

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "DerangementGraph",
    "ENUMERATION_CAP",
    "ExactMatrix",
    "KneserGraph",
    "Matching",
    "Partition",
    "Spectrum",
    "automorphism_group_order",
    "build_graph",
    "canonical_coclique",
    "character",
    "degree_formula",
    "derangement_spectrum",
    "double_factorial",
    "enumerate_matchings",
    "enumerate_maximum_cocliques",
    "facet_size",
    "gram_identity_check",
    "hook_dimension",
    "incidence_matrix",
    "integer_roots",
    "iter_partitions",
    "kneser_eigenvalues",
    "matching_count",
    "matching_scheme_labels",
    "module_labeling",
    "non_cayley_verdict",
    "one_factorization_clique",
    "partition_count",
    "partitions_of",
    "polytope_membership",
    "prime_pair",
    "quotient_matrix",
    "rank_U",
    "ratio_bound",
    "solve",
    "trace_square_check",
    "union_cycle_type",
    "__version__",
]
