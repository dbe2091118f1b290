"""Spectral lower bounds from balls in the universal cover.

The package builds unraveled balls (trees of non-backtracking walks), walk
forests with Markov weights, and the bound machinery comparing measured
spectral radii against degree-weighted closed forms.
"""
from .bounds import (
    BOUND_NAMES,
    BoundReport,
    HypothesisCheck,
    alon_boppana_classic_rhs,
    amgm_rhs,
    ball_spectral_radii,
    corollary_lb2_rhs,
    evaluate_all,
    far_edge_pair,
    has_far_edge_pair,
    hoory_context,
    hypothesis_check,
    lemma_lb3_rhs,
    max_ball_spectral_radius,
    theorem1_rhs,
    theorem8_rhs,
    two_ball_deflation_check,
)
from .cover import (
    CapExceeded,
    UnraveledBall,
    UnravelSurvey,
    WalkForest,
    build_walk_forest,
    closed_walk_injection_check,
    component_embedding,
    component_walks,
    enumerate_nb_walks,
    find_max_unraveled_vertex,
    forest_spectral_radius,
    max_unraveled_survey,
    test_vector_rayleigh,
    unraveled_ball,
    unraveled_ball_values,
)
from .generate import GenSpec, generate, petersen
from .graph import (
    Graph,
    GraphError,
    average_degree,
    ball,
    connected_components,
    delete_ball,
    induced_subgraph,
    load_graph,
    robust_average_degree,
    robust_profile,
    save_edge_list,
    save_json,
    strip_leaves,
)
from .spectral import (
    ClosedWalkCounts,
    SpectralEstimate,
    closed_walk_counts,
    dense_spectrum,
    growth_is_nondecreasing,
    path_eigenvector,
    path_spectral_radius,
    rayleigh_quotient,
    second_largest_eigenvalue,
    smallest_eigenvalue,
    spectral_radius,
    spectrum_summary,
    walk_growth_estimate,
)
from .treesolve import LeveledForest, eigencount_above, max_eigenvalue

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
