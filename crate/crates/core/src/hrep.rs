//! Closed-form projection for halfspace representations.
//!
//! With the query point moved to the origin, the largest step along `+e_j`
//! is `min { b_i / a_ij : a_ij > 0 }` and along `-e_j` it is
//! `min { -b_i / a_ij : a_ij < 0 }` (infinite when the index set is empty).
//! The cheapest of these `2n` steps is a nearest boundary point.

use crate::error::{ProjError, Result};
use crate::types::{
    check_dim, select_projection, AxisLambda, HPolyhedron, NormSpec, Point, ProjectionResult, Sign,
    ZERO_TOL,
};

/// Moves `a` to the origin: returns `{ x : A x <= b - A a }`.
pub fn hrep_translate(poly: &HPolyhedron, a: &Point) -> Result<HPolyhedron> {
    check_dim(poly.dim(), a.dim())?;
    let shifted = poly
        .apply(a.coords())
        .iter()
        .zip(poly.rhs())
        .map(|(ax, b)| b - ax)
        .collect();
    Ok(poly.with_rhs(shifted))
}

/// True iff every slack `b_i - a_i . a` exceeds [`ZERO_TOL`].
pub fn hrep_is_interior(poly: &HPolyhedron, a: &Point) -> Result<bool> {
    let moved = hrep_translate(poly, a)?;
    Ok(origin_is_interior(&moved))
}

fn origin_is_interior(poly: &HPolyhedron) -> bool {
    poly.rhs().iter().all(|&b| b > ZERO_TOL)
}

/// Step table for a polyhedron that already has the query point at the
/// origin, in canonical order (axis ascending, `+` before `-`).
pub fn hrep_axis_lambdas(poly: &HPolyhedron) -> Result<Vec<AxisLambda>> {
    if !origin_is_interior(poly) {
        return Err(ProjError::NotInterior);
    }
    let mut table = Vec::with_capacity(2 * poly.dim());
    for axis in 0..poly.dim() {
        for sign in Sign::BOTH {
            let mut lambda = f64::INFINITY;
            let mut binding_row = None;
            for (i, (row, &b)) in poly.rows().zip(poly.rhs()).enumerate() {
                let coef = sign.factor() * row[axis];
                if coef > ZERO_TOL {
                    let ratio = b / coef;
                    if ratio < lambda {
                        lambda = ratio;
                        binding_row = Some(i);
                    }
                }
            }
            table.push(AxisLambda {
                axis,
                sign,
                lambda,
                binding_row,
            });
        }
    }
    Ok(table)
}

/// `min_i b_i / max_j |a_ij|` for a polyhedron with the query point at the
/// origin: the unweighted L1 distance to the boundary in one pass over the rows.
pub fn minmax_distance(poly: &HPolyhedron) -> Result<f64> {
    if !origin_is_interior(poly) {
        return Err(ProjError::NotInterior);
    }
    Ok(poly
        .rows()
        .zip(poly.rhs())
        .map(|(row, &b)| {
            let largest = row
                .iter()
                .map(|v| v.abs())
                .filter(|&v| v > ZERO_TOL)
                .fold(0.0, f64::max);
            b / largest
        })
        .fold(f64::INFINITY, f64::min))
}

/// Nearest boundary point of `{ x : A x <= b }` from the interior point `a`
/// under the weighted quasi-norm `spec`.
pub fn hrep_project(poly: &HPolyhedron, a: &Point, spec: &NormSpec) -> Result<ProjectionResult> {
    spec.check_dim(poly.dim())?;
    let moved = hrep_translate(poly, a)?;
    let table = hrep_axis_lambdas(&moved)?;
    let result = select_projection(a, table, spec);
    if cfg!(debug_assertions) && spec.is_plain_l1() {
        let minmax = minmax_distance(&moved)?;
        debug_assert!(
            (result.distance - minmax).abs() <= 1e-12 * minmax.max(1.0),
            "axis table minimum {} disagrees with minmax value {}",
            result.distance,
            minmax
        );
    }
    Ok(result)
}
