//! Projection for vertex representations: one small linear program per
//! signed axis.

use crate::error::{ProjError, Result};
use crate::lp::{solve, LpError, LpProblem, LpStatus};
use crate::types::{
    check_dim, select_projection, AxisLambda, NormSpec, Point, ProjectionResult, Sign, VPolytope,
    ZERO_TOL,
};

/// Replaces every vertex `v_k` by `v_k - a`.
pub fn vrep_translate(poly: &VPolytope, a: &Point) -> Result<VPolytope> {
    check_dim(poly.dim(), a.dim())?;
    let moved = poly
        .vertices()
        .iter()
        .map(|v| v.iter().zip(a.coords()).map(|(x, c)| x - c).collect())
        .collect();
    Ok(VPolytope::from_validated(poly.dim(), moved))
}

/// `max { t : s t e_axis = sum_k mu_k v_k, sum_k mu_k <= 1, mu >= 0 }` with
/// `t` free. The program is always feasible at `t = 0, mu = 0` and bounded,
/// so the value is finite and nonnegative.
pub fn vrep_axis_lambda(poly: &VPolytope, axis: usize, sign: Sign) -> Result<f64> {
    if axis >= poly.dim() {
        return Err(ProjError::Dimension {
            expected: poly.dim(),
            found: axis + 1,
        });
    }
    let m = poly.num_vertices();
    // variables: [t, mu_1 .. mu_m]
    let mut objective = vec![0.0; m + 1];
    objective[0] = 1.0;
    let mut lp = LpProblem::maximize(objective)?;
    lp.set_free(0);
    for i in 0..poly.dim() {
        let mut row = Vec::with_capacity(m + 1);
        row.push(if i == axis { sign.factor() } else { 0.0 });
        row.extend(poly.vertices().iter().map(|v| -v[i]));
        lp.add_eq(row, 0.0)?;
    }
    let mut total = vec![1.0; m + 1];
    total[0] = 0.0;
    lp.add_le(total, 1.0)?;

    let sol = solve(&lp)?;
    match (sol.status, sol.objective_value) {
        (LpStatus::Optimal, Some(value)) => Ok(value.max(0.0)),
        (status, _) => Err(LpError::NumericalBreakdown(format!(
            "axis program reported {status:?} although it is feasible and bounded"
        ))
        .into()),
    }
}

/// The full step table for a polytope with the query point at the origin.
pub fn vrep_axis_lambdas(poly: &VPolytope) -> Result<Vec<AxisLambda>> {
    let mut table = Vec::with_capacity(2 * poly.dim());
    for axis in 0..poly.dim() {
        for sign in Sign::BOTH {
            table.push(AxisLambda {
                axis,
                sign,
                lambda: vrep_axis_lambda(poly, axis, sign)?,
                binding_row: None,
            });
        }
    }
    Ok(table)
}

fn all_positive(table: &[AxisLambda]) -> bool {
    table.iter().all(|e| e.lambda > ZERO_TOL)
}

/// `a` is interior iff all `2n` axis steps from `a` are positive: the set then
/// contains the cross-polytope spanned by those steps.
pub fn vrep_is_interior(poly: &VPolytope, a: &Point) -> Result<bool> {
    let moved = vrep_translate(poly, a)?;
    Ok(all_positive(&vrep_axis_lambdas(&moved)?))
}

/// Nearest boundary point from the interior point `a` under `spec`.
pub fn vrep_project(poly: &VPolytope, a: &Point, spec: &NormSpec) -> Result<ProjectionResult> {
    spec.check_dim(poly.dim())?;
    let moved = vrep_translate(poly, a)?;
    let table = vrep_axis_lambdas(&moved)?;
    if !all_positive(&table) {
        return Err(ProjError::NotInterior);
    }
    Ok(select_projection(a, table, spec))
}
