# Copyright 2026 The tropfw Developers
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        https://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

from tropfw.degeneracy import (
    CATEGORIES,
    IndexSubsetPair,
    MonteCarloSummary,
    TheoremCheck,
    TropDetReport,
    WitnessSearch,
    check_theorem_lowdim,
    classify_sample,
    find_similar_pair,
    minor_report,
    random_sample,
    random_sample_experiment,
    square_minors,
    tropical_determinant,
)
from tropfw.fermatweber import (
    UNIQUE_N3_SAMPLE,
    AssignmentPair,
    EllipseSpec,
    EssentialityReport,
    FWResult,
    KEllipse,
    SampleMatrix,
    circulant_instance,
    circulant_rows,
    convex_combination,
    distance_sum,
    fw_direct_system,
    fw_extended_system,
    fw_polytope,
    is_essential,
    is_fw_point,
    k_ellipse,
    min_sum_combinatorial,
    min_sum_lp,
    optimal_assignment_pair,
)
from tropfw.ratgeom import (
    HPolytope,
    LinearConstraint,
    LPProblem,
    LPResult,
    VPolytope,
    affine_dimension,
    count_facets,
    enumerate_vertices,
    extreme_points,
    in_convex_hull,
    lp_solve,
    matrix_rank,
    project_out,
    to_rational,
)
from tropfw.treespace import (
    ConeIntersection,
    TreeTopology,
    TreespaceExperiment,
    TreespaceIntersection,
    UltrametricVector,
    cone_dimension,
    enumerate_topologies,
    find_ultrametric_violation,
    fw_intersect_treespace,
    is_all_ones,
    is_ultrametric,
    pair_index,
    random_equidistant_tree,
    random_tree_pool,
    table1_experiment,
    topology_cone,
    ultrametric_from_merges,
    ultrametric_representative,
)
from tropfw.tropcore import QuotientPoint, canonicalize, difference_set, trop_dist
from tropfw.utils import (
    BudgetExceededError,
    ConsistencyError,
    UnboundedPolytopeError,
    get_budget,
    load_instance,
)

# define public functions
__all__ = [
    "CATEGORIES",
    "UNIQUE_N3_SAMPLE",
    "AssignmentPair",
    "BudgetExceededError",
    "ConeIntersection",
    "ConsistencyError",
    "EllipseSpec",
    "EssentialityReport",
    "FWResult",
    "HPolytope",
    "IndexSubsetPair",
    "KEllipse",
    "LPProblem",
    "LPResult",
    "LinearConstraint",
    "MonteCarloSummary",
    "QuotientPoint",
    "SampleMatrix",
    "TheoremCheck",
    "TreeTopology",
    "TreespaceExperiment",
    "TreespaceIntersection",
    "TropDetReport",
    "UltrametricVector",
    "UnboundedPolytopeError",
    "VPolytope",
    "WitnessSearch",
    "affine_dimension",
    "canonicalize",
    "check_theorem_lowdim",
    "circulant_instance",
    "circulant_rows",
    "classify_sample",
    "cone_dimension",
    "convex_combination",
    "count_facets",
    "difference_set",
    "distance_sum",
    "enumerate_topologies",
    "enumerate_vertices",
    "extreme_points",
    "find_similar_pair",
    "find_ultrametric_violation",
    "fw_direct_system",
    "fw_extended_system",
    "fw_intersect_treespace",
    "fw_polytope",
    "get_budget",
    "in_convex_hull",
    "is_all_ones",
    "is_essential",
    "is_fw_point",
    "is_ultrametric",
    "k_ellipse",
    "load_instance",
    "lp_solve",
    "matrix_rank",
    "min_sum_combinatorial",
    "min_sum_lp",
    "minor_report",
    "optimal_assignment_pair",
    "pair_index",
    "project_out",
    "random_equidistant_tree",
    "random_sample",
    "random_sample_experiment",
    "random_tree_pool",
    "square_minors",
    "table1_experiment",
    "to_rational",
    "topology_cone",
    "trop_dist",
    "tropical_determinant",
    "ultrametric_from_merges",
    "ultrametric_representative",
]
