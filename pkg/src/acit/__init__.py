"""Asymmetric convex intersection testing.

Decide whether the convex hull of a point set and an intersection of
halfspaces meet, and produce a verifiable certificate either way: a witness
point with its convex coefficients, or a separating hyperplane with the
closest pair.  Exact rational arithmetic is the ground-truth mode; floating
point with a global tolerance is the fast path.
"""

from .geometry import (
    Decision, DegenerateGeometryError, DimensionMismatch, GeometryError,
    Halfspace, HPolytope, Hyperplane, InvalidPolytopeError,
    MixedOrientationError, Point, Side, Validity, VPolytope,
    ZeroNormalError, halfspace_contains, point_hyperplane_distance,
    point_hyperplane_distance2,
)
from .nets import (
    ConflictSet, NetParams, augment_for_origin, conflict_halfspaces,
    conflict_points, net_sample_size, sample_net, verify_net,
)
from .numerics import get_tolerance, set_tolerance
from .oracle import check_lp_type_axioms, oracle_closest, oracle_decide
from .polar import (
    classify_halfspace_set, classify_point_set, polar_hyperplane, polar_point,
    polarize_halfspaces, polarize_points,
)
from .smalllp import (
    ClosestPair, InfeasibleError, InteriorStatus, Intersecting,
    LinearConstraint, LPResult, LPStatus, caratheodory_basis,
    closest_pair_hh, closest_pair_vh, closest_pair_vh_direct,
    deep_interior_point, enumerate_facets, point_in_hull, solve_lp,
)
from .solver import (
    AcitParams, Certificate, CertificateKind, CheckLevel, CheckReport,
    LoopExhaustedError, ModeFailure, PreconditionError, SolveResult,
    SolveStats, StructureViolation, check_certificate, default_alpha, solve,
    test,
)

__version__ = "0.1.0"
