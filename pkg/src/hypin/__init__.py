"""Largest inscribed circles in fundamental domains of the hyperbolic groups [3,3,...,3]."""

from hypin.errors import (
    DomainError,
    HypinError,
    InconclusiveError,
    InvalidArgument,
    InvalidL,
    NoRootError,
    NonConvergence,
    SingularSystemError,
)
from hypin.hyptrig import (
    CoshRadius,
    beta_of_alpha,
    circle_area,
    d2beta_dalpha2,
    dbeta_dalpha,
    jensen_upper_bound_margin,
    solve_circumscribed_radius,
    triangle_defect,
)
from hypin.census import (
    GroupSpec,
    OrbifoldBounds,
    TreeTypeSolution,
    enumerate_tree_types,
    max_additional_points,
    orbifold_side_bounds,
    side_bounds,
)
from hypin.incircle import (
    IncircleResult,
    best_over_types,
    beta_upper_limit,
    h_eval,
    optimal_radius_closed_form,
    polygon_area,
    solve_incircle,
)

__version__ = "0.1.0"
