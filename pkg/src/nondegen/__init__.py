"""Exact tools for incidences between points and spheres or hyperplanes,
nondegeneracy of incidence graphs, VC dimension, and similar triangles."""

from .errors import *  # noqa: F401,F403
from .geometry import (
    AffineHull,
    CarriedSphere,
    Hyperplane,
    Sphere,
    affine_rank,
    circumsphere,
    hyperplane_through,
    lift_point,
    lift_sphere,
    on_carried_sphere,
    on_hyperplane,
    on_sphere,
    point,
    sphere_sphere_orbit,
    squared_distance,
    to_rational,
)
from .incidence import (
    BipartiteIncidenceGraph,
    NondegeneracyReport,
    Witness,
    build_incidence,
    check_dually_nondegenerate,
    check_nondegenerate,
    count_spanning_hyperplanes,
    count_spanning_spheres,
    geometric_nondegeneracy_hyperplane,
    geometric_nondegeneracy_sphere,
    is_spanning_hyperplane,
    is_spanning_sphere,
    is_vertex_nondegenerate,
    richest_subflat,
    richest_subsphere,
    spanning_hyperplanes,
    spanning_spheres,
    spanning_upper_bounds,
)
from .setsystem import (
    PeelCertificate,
    PeelStep,
    SetSystem,
    graph_set_systems,
    left_right_vc,
    peel_certify,
    sauer_envelope,
    shatter_function,
    vc_dimension,
)
from .constructions import (
    ConstructionOutcome,
    gen_degenerate_cluster,
    gen_points_on_sphere,
    gen_random_points,
    gen_sphere_family,
    inverse_stereographic,
    thm1_random_graph,
)
from .simtri import (
    DistanceIndex,
    TriangleShape,
    build_distance_index,
    count_similar_brute,
    count_similar_orbit,
    orbit_breakdown,
    orbit_sphere_of_pair,
    similarity_test,
)
from .bounds import BoundFormula, RatioReport, dominant_term, evaluate, ratio_report

__version__ = "0.1.0"
