"""Exact computations in the perfect matching association scheme of K_2n."""

from .combinatorics import (
    double_factorial,
    hyperoctahedral_order,
    matching_derangement_count,
    partitions_of,
    specht_dimension,
    z_lambda,
)
from .derangement import (
    AssociateUnion,
    derangement_union,
    equitable_quotient,
    ratio_bound,
    single_associate,
    spectrum,
)
from .ekr import (
    FamilyVector,
    LucasClique,
    lucas_clique,
    max_independent_set,
    trivial_family,
    trivial_families,
)
from .matchings import (
    Matching,
    count_matchings,
    cycle_type,
    enumerate_matchings,
    identity_matching,
    matching_array,
    rank,
    representative,
    unrank,
)
from .polytope import edmonds_membership, incidence_matrix, odd_cut_single_crossing_count, parallel_faces, rank_check
from .report import VerificationReport
from .scheme import IntersectionNumbers, intersection_numbers, relation_matrix, sphere_size
from .spectrum import CharacterTable, character_table, idempotents, zonal_n_sphere, zonal_table

__version__ = "0.1.0"

__all__ = [
    "AssociateUnion",
    "CharacterTable",
    "FamilyVector",
    "IntersectionNumbers",
    "LucasClique",
    "Matching",
    "VerificationReport",
    "character_table",
    "count_matchings",
    "cycle_type",
    "derangement_union",
    "double_factorial",
    "edmonds_membership",
    "enumerate_matchings",
    "equitable_quotient",
    "hyperoctahedral_order",
    "idempotents",
    "identity_matching",
    "incidence_matrix",
    "intersection_numbers",
    "lucas_clique",
    "matching_array",
    "matching_derangement_count",
    "max_independent_set",
    "odd_cut_single_crossing_count",
    "parallel_faces",
    "partitions_of",
    "rank",
    "rank_check",
    "ratio_bound",
    "relation_matrix",
    "representative",
    "single_associate",
    "specht_dimension",
    "spectrum",
    "sphere_size",
    "trivial_families",
    "trivial_family",
    "unrank",
    "z_lambda",
    "zonal_n_sphere",
    "zonal_table",
]
