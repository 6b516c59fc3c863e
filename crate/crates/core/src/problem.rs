//! A projection problem: a body in one of the supported representations,
//! the query point and the norm.

use crate::error::Result;
use crate::hrep::{hrep_axis_lambdas, hrep_project, hrep_translate};
use crate::oracle::{axis_boundary_bisect, oracle_project, Ball, ConvexBody, Ellipsoid, HrepBall};
use crate::types::{AxisLambda, HPolyhedron, NormSpec, Point, ProjectionResult, Sign, VPolytope};
use crate::vrep::{vrep_axis_lambdas, vrep_project, vrep_translate};

/// Built-in membership-oracle shapes.
#[derive(Clone, Debug, PartialEq)]
pub enum OracleShape {
    Ball(Ball),
    Ellipsoid(Ellipsoid),
    HrepBall(HrepBall),
}

impl OracleShape {
    fn as_body(&self) -> &dyn ConvexBody {
        match self {
            OracleShape::Ball(b) => b,
            OracleShape::Ellipsoid(e) => e,
            OracleShape::HrepBall(h) => h,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Hrep(HPolyhedron),
    Vrep(VPolytope),
    Oracle(OracleShape),
}

impl Body {
    pub fn as_convex_body(&self) -> &dyn ConvexBody {
        match self {
            Body::Hrep(p) => p,
            Body::Vrep(v) => v,
            Body::Oracle(o) => o.as_body(),
        }
    }

    pub fn representation(&self) -> &'static str {
        match self {
            Body::Hrep(_) => "hrep",
            Body::Vrep(_) => "vrep",
            Body::Oracle(_) => "oracle",
        }
    }
}

impl ConvexBody for Body {
    fn dim(&self) -> usize {
        self.as_convex_body().dim()
    }

    fn contains(&self, x: &[f64]) -> bool {
        self.as_convex_body().contains(x)
    }

    fn radius_hint(&self) -> f64 {
        self.as_convex_body().radius_hint()
    }

    fn ray_exit(&self, origin: &[f64], dir: &[f64]) -> Result<f64> {
        self.as_convex_body().ray_exit(origin, dir)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub body: Body,
    pub point: Point,
    pub norm: NormSpec,
}

impl Problem {
    pub fn project(&self) -> Result<ProjectionResult> {
        match &self.body {
            Body::Hrep(p) => hrep_project(p, &self.point, &self.norm),
            Body::Vrep(v) => vrep_project(v, &self.point, &self.norm),
            Body::Oracle(o) => oracle_project(o.as_body(), &self.point, &self.norm),
        }
    }

    /// Axis steps from the query point, independent of the norm.
    pub fn axis_table(&self) -> Result<Vec<AxisLambda>> {
        match &self.body {
            Body::Hrep(p) => hrep_axis_lambdas(&hrep_translate(p, &self.point)?),
            Body::Vrep(v) => vrep_axis_lambdas(&vrep_translate(v, &self.point)?),
            Body::Oracle(o) => {
                let body = o.as_body();
                let mut table = Vec::with_capacity(2 * body.dim());
                for axis in 0..body.dim() {
                    for sign in Sign::BOTH {
                        table.push(AxisLambda {
                            axis,
                            sign,
                            lambda: axis_boundary_bisect(body, &self.point, axis, sign)?,
                            binding_row: None,
                        });
                    }
                }
                Ok(table)
            }
        }
    }
}
