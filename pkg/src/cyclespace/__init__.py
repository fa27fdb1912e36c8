"""Exact cycle and cut spaces of graphs, invariant projections onto cycle
spaces, and transportation cost norms, all over the rationals."""

from .graphs import (
    MetricSpace,
    OrientedGraph,
    build_graph,
    canonical_graph,
    cut_basis,
    cycle_basis,
    hamming_graph,
    incidence_matrix,
    torus_graph,
)
from .invariant import (
    ProjectionFamily,
    average_projection,
    commutant_family,
    minimize_l1,
    projection_report,
    torus_invariant_basis,
)
from .symmetry import (
    GraphAutomorphism,
    GroupSpec,
    SignedEdgeMap,
    edge_action,
    find_automorphisms,
    hamming_generators,
    relator_cycle_vectors,
    torus_generators,
)
from .transport import (
    TransportationProblem,
    bounds_from_projection,
    dual_certificate,
    tc_norm,
    wasserstein1,
)
from .cube import cube_coefficients, cube_cross_check, p_norm, q_norm

__version__ = "0.1.0"
