//! Shared domain types: points, the two polyhedron representations, the
//! weighted quasi-norm and the projection result.

use std::fmt;

use crate::error::{ProjError, Result};

/// Magnitude below which a coefficient counts as zero. Also the margin used by
/// every strict-interiority test.
pub const ZERO_TOL: f64 = 1e-12;

fn check_finite(values: &[f64], what: &'static str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(ProjError::NonFinite(what))
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(ProjError::Dimension { expected, found })
    }
}

/// A point of `R^n` with finite coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(ProjError::Empty("point"));
        }
        check_finite(&coords, "point")?;
        Ok(Self(coords))
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// `self + step * e_axis`
    pub fn moved_along(&self, axis: usize, step: f64) -> Point {
        let mut coords = self.0.clone();
        coords[axis] += step;
        Point(coords)
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Direction of travel along a coordinate axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+` before `-`; this is the tie-break order of every projector.
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Halfspace representation `{ x : A x <= b }`.
///
/// The matrix is stored row-major. Construction rejects zero rows instead of
/// dropping them, so row indices reported by the projectors always refer to
/// the caller's rows.
#[derive(Clone, Debug, PartialEq)]
pub struct HPolyhedron {
    rows: usize,
    dim: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl HPolyhedron {
    /// Validates and builds the polyhedron.
    pub fn new(a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(ProjError::Empty("constraint matrix"));
        }
        let dim = a[0].len();
        if dim == 0 {
            return Err(ProjError::Empty("constraint row"));
        }
        check_dim(a.len(), b.len())?;
        for row in &a {
            check_dim(dim, row.len())?;
            check_finite(row, "constraint matrix")?;
        }
        check_finite(&b, "right-hand side")?;
        if let Some(i) = a
            .iter()
            .position(|row| row.iter().all(|v| v.abs() <= ZERO_TOL))
        {
            return Err(ProjError::ZeroRow(i));
        }
        Ok(Self {
            rows: a.len(),
            dim,
            a: a.into_iter().flatten().collect(),
            b,
        })
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.a[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.a.chunks_exact(self.dim)
    }

    pub fn rhs(&self) -> &[f64] {
        &self.b
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    /// Same matrix, new right-hand side. Rows are already validated.
    pub(crate) fn with_rhs(&self, b: Vec<f64>) -> Self {
        debug_assert_eq!(b.len(), self.rows);
        Self {
            rows: self.rows,
            dim: self.dim,
            a: self.a.clone(),
            b,
        }
    }

    /// `A x`
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.rows().map(|row| dot(row, x)).collect()
    }

    /// Largest violation `max_i (a_i x - b_i)`; non-positive iff `x` is in the set.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        self.apply(x)
            .iter()
            .zip(&self.b)
            .map(|(ax, b)| ax - b)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Vertex representation. The modeled set is
/// `{ sum_k mu_k v_k : sum_k mu_k <= 1, mu >= 0 }`, i.e. the hull of the
/// vertices together with the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
}

impl VPolytope {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(ProjError::Empty("vertex list"));
        }
        let dim = vertices[0].len();
        if dim == 0 {
            return Err(ProjError::Empty("vertex"));
        }
        for v in &vertices {
            check_dim(dim, v.len())?;
            check_finite(v, "vertex")?;
        }
        Ok(Self { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub(crate) fn from_validated(dim: usize, vertices: Vec<Vec<f64>>) -> Self {
        Self { dim, vertices }
    }
}

/// Weighted quasi-norm `sum_i w_i |x_i|^p` with `0 < p <= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormSpec {
    p: f64,
    weights: Option<Vec<f64>>,
}

impl Default for NormSpec {
    fn default() -> Self {
        Self::l1()
    }
}

impl NormSpec {
    pub fn new(p: f64, weights: Option<Vec<f64>>) -> Result<Self> {
        if !p.is_finite() || p <= 0.0 || p > 1.0 {
            return Err(ProjError::InvalidNorm(format!(
                "exponent p must lie in (0, 1], got {p}"
            )));
        }
        if let Some(w) = &weights {
            if w.is_empty() {
                return Err(ProjError::Empty("weights"));
            }
            check_finite(w, "weights")?;
            if w.iter().any(|&wi| wi < 0.0) {
                return Err(ProjError::InvalidNorm("weights must be nonnegative".into()));
            }
            if !w.iter().any(|&wi| wi > 0.0) {
                return Err(ProjError::InvalidNorm(
                    "at least one weight must be positive".into(),
                ));
            }
        }
        Ok(Self { p, weights })
    }

    /// Plain L1 norm.
    pub fn l1() -> Self {
        Self {
            p: 1.0,
            weights: None,
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn weight(&self, axis: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[axis])
    }

    pub fn is_plain_l1(&self) -> bool {
        self.p == 1.0
            && self
                .weights
                .as_ref()
                .is_none_or(|w| w.iter().all(|&v| v == 1.0))
    }

    /// Fails when explicit weights do not match the problem dimension.
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        match &self.weights {
            Some(w) => check_dim(dim, w.len()),
            None => Ok(()),
        }
    }

    /// `w_j |t|^p`, the cost of a step of length `t` along axis `j`.
    /// An infinite step costs infinity regardless of the weight.
    pub fn axis_cost(&self, axis: usize, step: f64) -> f64 {
        if step.is_infinite() {
            return f64::INFINITY;
        }
        let t = step.abs();
        let scaled = if self.p == 1.0 { t } else { t.powf(self.p) };
        self.weight(axis) * scaled
    }

    /// `sum_i w_i |d_i|^p` for a displacement `d`.
    pub fn length(&self, displacement: &[f64]) -> f64 {
        displacement
            .iter()
            .enumerate()
            .map(|(i, &d)| self.axis_cost(i, d))
            .sum()
    }
}

/// `sum_i w_i |x_i - a_i|^p`.
pub fn norm_distance(x: &Point, a: &Point, spec: &NormSpec) -> Result<f64> {
    check_dim(x.dim(), a.dim())?;
    spec.check_dim(x.dim())?;
    let diff: Vec<f64> = x
        .coords()
        .iter()
        .zip(a.coords())
        .map(|(x, a)| x - a)
        .collect();
    Ok(spec.length(&diff))
}

/// Largest admissible step from the query point along one signed axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisLambda {
    /// Zero-based axis index.
    pub axis: usize,
    pub sign: Sign,
    /// Step length; `f64::INFINITY` when the ray never leaves the set.
    pub lambda: f64,
    /// Constraint row attaining the step, for halfspace inputs with a finite step.
    pub binding_row: Option<usize>,
}

/// Outcome of a projection onto the boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionResult {
    pub distance: f64,
    /// Zero-based axis index of the selected projection.
    pub axis: usize,
    pub sign: Sign,
    /// Boundary point in the caller's coordinates.
    pub boundary_point: Point,
    /// One entry per (axis, sign), ordered by axis then `+` before `-`.
    pub lambda_table: Vec<AxisLambda>,
}

impl ProjectionResult {
    pub fn lambda(&self, axis: usize, sign: Sign) -> Option<f64> {
        self.lambda_table
            .iter()
            .find(|e| e.axis == axis && e.sign == sign)
            .map(|e| e.lambda)
    }
}

/// Picks the cheapest table entry; ties keep the earliest entry, which is the
/// lowest axis and `+` before `-` for tables in canonical order.
pub(crate) fn select_projection(
    query: &Point,
    lambda_table: Vec<AxisLambda>,
    spec: &NormSpec,
) -> ProjectionResult {
    let mut best: Option<(usize, f64)> = None;
    for (k, entry) in lambda_table.iter().enumerate() {
        let cost = spec.axis_cost(entry.axis, entry.lambda);
        if best.is_none_or(|(_, c)| cost < c) {
            best = Some((k, cost));
        }
    }
    let (k, distance) = best.expect("lambda table is never empty");
    assert!(
        distance.is_finite(),
        "every axis direction is unbounded; a validated set always has a finite one"
    );
    let chosen = lambda_table[k];
    ProjectionResult {
        distance,
        axis: chosen.axis,
        sign: chosen.sign,
        boundary_point: query.moved_along(chosen.axis, chosen.sign.factor() * chosen.lambda),
        lambda_table,
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
