//! Minimum-distance projection from an interior point onto the boundary of a
//! convex set, for the L1 norm and weighted quasi-norms `sum_i w_i |x_i|^p`
//! with `p <= 1`.
//!
//! Under these distances some nearest boundary point always differs from the
//! query point in a single coordinate, so the projection reduces to `2n`
//! one-dimensional step computations:
//!
//! * [`hrep`]: closed-form ratios for `{ x : A x <= b }`;
//! * [`vrep`]: one small linear program per signed axis for vertex lists;
//! * [`oracle`]: bisection for bodies given by a membership test.
//!
//! [`verify`] holds brute-force oracles that check those shortcuts.

pub mod error;
pub mod hrep;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod problem;
pub mod types;
pub mod verify;
pub mod vrep;

pub use error::{ProjError, Result};
pub use hrep::{
    hrep_axis_lambdas, hrep_is_interior, hrep_project, hrep_translate, minmax_distance,
};
pub use oracle::{
    axis_boundary_bisect, lp_ratio_bound, oracle_project, sample_lp_ratio, Ball, ConvexBody,
    Ellipsoid, HrepBall, MembershipFn,
};
pub use problem::{Body, OracleShape, Problem};
pub use types::{
    norm_distance, AxisLambda, HPolyhedron, NormSpec, Point, ProjectionResult, Sign, VPolytope,
};
pub use vrep::{
    vrep_axis_lambda, vrep_axis_lambdas, vrep_is_interior, vrep_project, vrep_translate,
};
