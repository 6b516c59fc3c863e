//! Independent checks of the single-axis projectors.
//!
//! * [`facet_l1_oracle`] computes the L1 distance to the boundary of a
//!   halfspace polyhedron from scratch: one linear program per constraint,
//!   minimizing the distance to the part of the polyhedron on that
//!   constraint's hyperplane.
//! * [`e_set_report`] tests the two facts that force an axis minimizer: all
//!   `2n` points at axis distance `d` lie in the closed set, and one of them
//!   lies on the boundary.
//! * [`ray_sampling_report`] shoots random rays to the boundary and checks
//!   that none is cheaper than the reported distance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};
use serde::Serialize;
use thiserror::Error;

use crate::error::{ProjError, Result};
use crate::hrep::{hrep_is_interior, hrep_translate};
use crate::lp::{solve, LpError, LpProblem, LpStatus};
use crate::oracle::ConvexBody;
use crate::problem::{Body, Problem};
use crate::types::{AxisLambda, HPolyhedron, NormSpec, Point, Sign};

/// Slack allowed by the E-set membership and boundary tests.
pub const PROOF_TOL: f64 = 1e-7;
/// Slack allowed between a sampled ray distance and the reported distance.
pub const GLOBALITY_TOL: f64 = 1e-6;
/// Agreement required between the projector and the facet oracle.
pub const ORACLE_TOL: f64 = 1e-7;

/// Near-equal facet minima are resolved to the lowest row.
const FACET_TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Proj(#[from] ProjError),

    #[error("E-set {fact} violated at {point:?} (boundary step {exit})")]
    ProofInvariantViolation {
        fact: EsetFact,
        point: Vec<f64>,
        exit: f64,
    },

    #[error(
        "direction {direction:?} reaches the boundary at distance {distance} < reported {reported}"
    )]
    GlobalityViolation {
        direction: Vec<f64>,
        distance: f64,
        reported: f64,
    },
}

/// The two proof facts checked on the E-set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EsetFact {
    /// every point of E is in the closure of the set
    Inside,
    /// some point of E is on the boundary
    Boundary,
}

impl std::fmt::Display for EsetFact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EsetFact::Inside => "containment",
            EsetFact::Boundary => "boundary contact",
        })
    }
}

/// Distance functions used by the checks. `LpNorm` allows `p > 1` so the
/// failure of the axis characterization there can be demonstrated.
#[derive(Clone, Debug, PartialEq)]
pub enum Metric {
    /// `sum_i w_i |x_i|^p`, `p <= 1`.
    Quasi(NormSpec),
    /// `(sum_i |x_i|^p)^(1/p)`, any `p > 0`.
    LpNorm(f64),
}

impl Metric {
    pub fn length(&self, displacement: &[f64]) -> f64 {
        match self {
            Metric::Quasi(spec) => spec.length(displacement),
            Metric::LpNorm(p) => displacement
                .iter()
                .map(|v| v.abs().powf(*p))
                .sum::<f64>()
                .powf(1.0 / p),
        }
    }

    /// Cost of a step of length `t` along `axis`.
    pub fn axis_cost(&self, axis: usize, t: f64) -> f64 {
        match self {
            Metric::Quasi(spec) => spec.axis_cost(axis, t),
            Metric::LpNorm(_) => t.abs(),
        }
    }

    /// Step along `axis` whose cost is `cost`; `None` when the axis is free.
    fn step_for_cost(&self, axis: usize, cost: f64) -> Option<f64> {
        match self {
            Metric::Quasi(spec) => {
                let w = spec.weight(axis);
                (w > 0.0).then(|| (cost / w).powf(1.0 / spec.p()))
            }
            Metric::LpNorm(_) => Some(cost),
        }
    }

    /// Cheapest entry of an axis table under this metric.
    pub fn axis_minimum(&self, table: &[AxisLambda]) -> f64 {
        table
            .iter()
            .map(|e| self.axis_cost(e.axis, e.lambda))
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FacetOracleResult {
    pub distance: f64,
    /// Zero-based row whose hyperplane carries the nearest boundary point.
    pub facet: usize,
    pub point: Vec<f64>,
    /// Per-row minimum; `None` for rows whose hyperplane misses the polyhedron.
    pub per_facet: Vec<Option<f64>>,
    /// Rows skipped because their hyperplane misses the polyhedron.
    pub skipped: Vec<usize>,
}

/// Ground-truth weighted L1 distance from `a` to the boundary of `poly`.
///
/// For each row `i`: minimize `sum_j w_j (u_j + v_j)` subject to
/// `A (u - v) <= b - A a`, `a_i . (u - v) = b_i - a_i . a`, `u, v >= 0`.
pub fn facet_l1_oracle(
    poly: &HPolyhedron,
    a: &Point,
    spec: &NormSpec,
) -> Result<FacetOracleResult> {
    if spec.p() != 1.0 {
        return Err(ProjError::InvalidNorm(
            "the facet oracle needs exponent p = 1".into(),
        ));
    }
    spec.check_dim(poly.dim())?;
    if !hrep_is_interior(poly, a)? {
        return Err(ProjError::NotInterior);
    }
    let moved = hrep_translate(poly, a)?;
    let n = poly.dim();
    let cost: Vec<f64> = (0..2 * n).map(|k| spec.weight(k % n)).collect();
    let split =
        |row: &[f64]| -> Vec<f64> { row.iter().copied().chain(row.iter().map(|v| -v)).collect() };

    let mut per_facet = Vec::with_capacity(poly.num_rows());
    let mut skipped = Vec::new();
    let mut best: Option<(usize, f64, Vec<f64>)> = None;
    for (i, (row, &b)) in moved.rows().zip(moved.rhs()).enumerate() {
        let mut lp = LpProblem::minimize(cost.clone())?;
        for (other, &bk) in moved.rows().zip(moved.rhs()) {
            lp.add_le(split(other), bk)?;
        }
        lp.add_eq(split(row), b)?;
        let sol = solve(&lp)?;
        match sol.status {
            LpStatus::Infeasible => {
                skipped.push(i);
                per_facet.push(None);
            }
            LpStatus::Unbounded => {
                return Err(LpError::NumericalBreakdown(format!(
                    "facet program {i} is unbounded although its objective is nonnegative"
                ))
                .into())
            }
            LpStatus::Optimal => {
                let d = -sol
                    .objective_value
                    .expect("optimal solutions carry a value");
                let z = sol.primal.expect("optimal solutions carry a point");
                per_facet.push(Some(d));
                let better = best
                    .as_ref()
                    .is_none_or(|(_, bd, _)| d < bd - FACET_TIE_TOL * (1.0 + bd.abs()));
                if better {
                    let point = (0..n).map(|j| a.coords()[j] + z[j] - z[n + j]).collect();
                    best = Some((i, d, point));
                }
            }
        }
    }
    let (facet, distance, point) = best.ok_or_else(|| {
        ProjError::Lp(LpError::NumericalBreakdown(
            "no facet hyperplane meets the polyhedron".into(),
        ))
    })?;
    Ok(FacetOracleResult {
        distance,
        facet,
        point,
        per_facet,
        skipped,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EsetPoint {
    pub axis: usize,
    pub sign: String,
    /// Step to the E-set point; absent on zero-weight axes.
    pub step: Option<f64>,
    /// Step to the boundary along the same ray.
    pub exit: f64,
    pub inside: bool,
    pub on_boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EsetReport {
    pub distance: f64,
    pub points: Vec<EsetPoint>,
    pub all_inside: bool,
    pub boundary_hit: bool,
}

impl EsetReport {
    pub fn passed(&self) -> bool {
        self.all_inside && self.boundary_hit
    }

    /// The first failed fact with its offending point.
    pub fn violation(&self, center: &Point) -> Option<VerifyError> {
        let locate = |p: &EsetPoint| {
            let sign = if p.sign == "+" { 1.0 } else { -1.0 };
            center
                .moved_along(p.axis, sign * p.step.unwrap_or(p.exit))
                .into_vec()
        };
        if let Some(p) = self.points.iter().find(|p| !p.inside) {
            return Some(VerifyError::ProofInvariantViolation {
                fact: EsetFact::Inside,
                point: locate(p),
                exit: p.exit,
            });
        }
        if !self.boundary_hit {
            let closest = self
                .points
                .iter()
                .filter(|p| p.step.is_some())
                .min_by(|x, y| {
                    let gx = x.exit - x.step.unwrap_or(0.0);
                    let gy = y.exit - y.step.unwrap_or(0.0);
                    gx.total_cmp(&gy)
                })?;
            return Some(VerifyError::ProofInvariantViolation {
                fact: EsetFact::Boundary,
                point: locate(closest),
                exit: closest.exit,
            });
        }
        None
    }
}

/// Evaluates the E-set facts for the reported `distance`: along each signed
/// axis, the point whose cost equals `distance` must not lie beyond the
/// boundary, and at least one such point must lie on it (both within
/// [`PROOF_TOL`]).
pub fn e_set_report<B: ConvexBody + ?Sized>(
    body: &B,
    center: &Point,
    distance: f64,
    metric: &Metric,
) -> Result<EsetReport> {
    let mut points = Vec::with_capacity(2 * body.dim());
    for axis in 0..body.dim() {
        for sign in Sign::BOTH {
            let mut dir = vec![0.0; body.dim()];
            dir[axis] = sign.factor();
            let exit = body.ray_exit(center.coords(), &dir)?;
            let step = metric.step_for_cost(axis, distance);
            let (inside, on_boundary) = match step {
                Some(s) => (exit >= s - PROOF_TOL, exit <= s + PROOF_TOL),
                // free axis: every step costs nothing, so only a finite exit
                // at zero distance touches the boundary
                None => (true, exit.is_finite() && distance <= PROOF_TOL),
            };
            points.push(EsetPoint {
                axis,
                sign: sign.symbol().to_string(),
                step,
                exit,
                inside,
                on_boundary,
            });
        }
    }
    Ok(EsetReport {
        distance,
        all_inside: points.iter().all(|p| p.inside),
        boundary_hit: points.iter().any(|p| p.on_boundary),
        points,
    })
}

/// [`e_set_report`] turned into a pass/fail result.
pub fn e_set_check<B: ConvexBody + ?Sized>(
    body: &B,
    center: &Point,
    distance: f64,
    metric: &Metric,
) -> std::result::Result<EsetReport, VerifyError> {
    let report = e_set_report(body, center, distance, metric)?;
    match report.violation(center) {
        Some(err) => Err(err),
        None => Ok(report),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayReport {
    pub samples: usize,
    pub seed: u64,
    pub reported: f64,
    pub tolerance: f64,
    /// Cheapest sampled boundary distance and its direction.
    pub sampled_min: f64,
    pub sampled_direction: Vec<f64>,
    /// Rays that never leave the set.
    pub unbounded_rays: usize,
}

impl RayReport {
    pub fn passed(&self) -> bool {
        self.sampled_min >= self.reported - self.tolerance
    }

    pub fn violation(&self) -> Option<VerifyError> {
        (!self.passed()).then(|| VerifyError::GlobalityViolation {
            direction: self.sampled_direction.clone(),
            distance: self.sampled_min,
            reported: self.reported,
        })
    }
}

/// Boundary distance from `center` along `dir` under `metric`.
pub fn ray_distance<B: ConvexBody + ?Sized>(
    body: &B,
    center: &Point,
    dir: &[f64],
    metric: &Metric,
) -> Result<f64> {
    let t = body.ray_exit(center.coords(), dir)?;
    if t.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let displacement: Vec<f64> = dir.iter().map(|d| t * d).collect();
    Ok(metric.length(&displacement))
}

/// Samples `samples` uniformly distributed directions, follows each to the
/// boundary and records the cheapest.
pub fn ray_sampling_report<B: ConvexBody + ?Sized>(
    body: &B,
    center: &Point,
    reported: f64,
    metric: &Metric,
    samples: usize,
    seed: u64,
) -> Result<RayReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = body.dim();
    let mut sampled_min = f64::INFINITY;
    let mut sampled_direction = vec![0.0; n];
    let mut unbounded_rays = 0;
    let mut taken = 0;
    while taken < samples {
        let mut dir: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue;
        }
        dir.iter_mut().for_each(|v| *v /= norm);
        taken += 1;
        let d = ray_distance(body, center, &dir, metric)?;
        if d.is_infinite() {
            unbounded_rays += 1;
        } else if d < sampled_min {
            sampled_min = d;
            sampled_direction = dir;
        }
    }
    Ok(RayReport {
        samples,
        seed,
        reported,
        tolerance: GLOBALITY_TOL,
        sampled_min,
        sampled_direction,
        unbounded_rays,
    })
}

/// [`ray_sampling_report`] turned into a pass/fail result.
pub fn ray_sampling_check<B: ConvexBody + ?Sized>(
    body: &B,
    center: &Point,
    reported: f64,
    metric: &Metric,
    samples: usize,
    seed: u64,
) -> std::result::Result<RayReport, VerifyError> {
    let report = ray_sampling_report(body, center, reported, metric, samples, seed)?;
    match report.violation() {
        Some(err) => Err(err),
        None => Ok(report),
    }
}

/// A seeded random polyhedron with the origin strictly inside.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomInstance {
    pub seed: u64,
    pub poly: HPolyhedron,
}

/// Bounded random polyhedron in `dim` dimensions with `rows > dim` rows.
///
/// The first `dim` rows are Gaussian (linearly independent almost surely),
/// the next row is a negative combination of them with positive weights, so
/// the normals positively span the space and the set is bounded. Remaining
/// rows are Gaussian. Right-hand sides are drawn from `[0.5, 2]`, which puts
/// the origin strictly inside. Rows are shuffled.
pub fn random_bounded_hpolyhedron(dim: usize, rows: usize, seed: u64) -> Result<HPolyhedron> {
    use rand::seq::SliceRandom;
    if dim == 0 || rows <= dim {
        return Err(ProjError::Domain(format!(
            "need rows > dim >= 1, got dim={dim} rows={rows}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gauss = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..dim).map(|_| StandardNormal.sample(rng)).collect()
    };
    let mut a: Vec<Vec<f64>> = (0..dim).map(|_| gauss(&mut rng)).collect();
    let mix = Uniform::new(0.2, 1.0).expect("valid range");
    let mut closing = vec![0.0; dim];
    for row in &a {
        let c: f64 = mix.sample(&mut rng);
        for (acc, v) in closing.iter_mut().zip(row) {
            *acc -= c * v;
        }
    }
    a.push(closing);
    while a.len() < rows {
        a.push(gauss(&mut rng));
    }
    a.shuffle(&mut rng);
    let slack = Uniform::new(0.5, 2.0).expect("valid range");
    let b = (0..rows).map(|_| slack.sample(&mut rng)).collect();
    HPolyhedron::new(a, b)
}

/// `count` instances with seeds `base_seed, base_seed + 1, ...`; each seed
/// also picks `dim` in 2..=6 and the row count in `dim + 1..=20`.
pub fn random_suite(count: usize, base_seed: u64) -> Result<Vec<RandomInstance>> {
    use rand::Rng;
    (0..count as u64)
        .map(|k| {
            let seed = base_seed + k;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
            let dim = rng.random_range(2..=6);
            let rows = rng.random_range(dim + 1..=20);
            Ok(RandomInstance {
                seed,
                poly: random_bounded_hpolyhedron(dim, rows, seed)?,
            })
        })
        .collect()
}

/// Settings of a full verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    /// Multiplies the reported distance before checking (falsification control).
    pub inflate: f64,
    /// Replaces the problem's exponent; values above 1 switch to the Lp norm.
    pub p_override: Option<f64>,
    pub tolerance_report: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            samples: 10_000,
            seed: 0,
            inflate: 1.0,
            p_override: None,
            tolerance_report: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub message: Option<String>,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub zero: f64,
    pub oracle: f64,
    pub proof: f64,
    pub globality: f64,
    pub bisection: f64,
    pub lp_feasibility: f64,
    pub lp_pivot: f64,
    pub lp_optimality: f64,
}

impl Tolerances {
    pub fn current() -> Self {
        Self {
            zero: crate::types::ZERO_TOL,
            oracle: ORACLE_TOL,
            proof: PROOF_TOL,
            globality: GLOBALITY_TOL,
            bisection: crate::oracle::BISECT_TOL,
            lp_feasibility: crate::lp::FEASIBILITY_TOL,
            lp_pivot: crate::lp::PIVOT_TOL,
            lp_optimality: crate::lp::OPTIMALITY_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub representation: &'static str,
    pub metric: String,
    pub seed: u64,
    pub samples: usize,
    pub inflate: f64,
    /// Reported distance after inflation.
    pub distance: f64,
    /// One-based axis of the selected projection.
    pub axis: usize,
    pub sign: String,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
}

fn to_json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).unwrap_or(serde_json::Value::Null)
}

/// Runs every applicable check on `problem`: the facet oracle (halfspace
/// input with p = 1), the E-set facts and ray sampling.
pub fn run_verification(problem: &Problem, opts: &VerifyOptions) -> Result<VerificationReport> {
    let metric = match opts.p_override {
        Some(p) if p > 1.0 => Metric::LpNorm(p),
        Some(p) => Metric::Quasi(NormSpec::new(
            p,
            problem.norm.weights().map(<[f64]>::to_vec),
        )?),
        None => Metric::Quasi(problem.norm.clone()),
    };
    let table = problem.axis_table()?;
    if table.iter().any(|e| e.lambda <= crate::types::ZERO_TOL) {
        return Err(ProjError::NotInterior);
    }
    let (axis, sign, raw_distance) = {
        let mut best = (0, Sign::Plus, f64::INFINITY);
        for e in &table {
            let c = metric.axis_cost(e.axis, e.lambda);
            if c < best.2 {
                best = (e.axis, e.sign, c);
            }
        }
        best
    };
    let distance = raw_distance * opts.inflate;
    let body = problem.body.as_convex_body();
    let mut checks = Vec::new();

    let plain_l1 = matches!(&metric, Metric::Quasi(spec) if spec.p() == 1.0);
    if let (Body::Hrep(poly), true, Metric::Quasi(spec)) = (&problem.body, plain_l1, &metric) {
        let facet = facet_l1_oracle(poly, &problem.point, spec)?;
        let gap = (facet.distance - distance).abs();
        let passed = gap <= ORACLE_TOL;
        checks.push(CheckOutcome {
            name: "facet_oracle",
            passed,
            message: (!passed).then(|| {
                format!(
                    "facet oracle distance {} differs from reported {} by {gap:e}",
                    facet.distance, distance
                )
            }),
            detail: to_json(&facet),
        });
    }

    let eset = e_set_report(body, &problem.point, distance, &metric)?;
    checks.push(CheckOutcome {
        name: "e_set",
        passed: eset.passed(),
        message: eset.violation(&problem.point).map(|e| e.to_string()),
        detail: to_json(&eset),
    });

    let rays = ray_sampling_report(
        body,
        &problem.point,
        distance,
        &metric,
        opts.samples,
        opts.seed,
    )?;
    checks.push(CheckOutcome {
        name: "ray_sampling",
        passed: rays.passed(),
        message: rays.violation().map(|e| e.to_string()),
        detail: to_json(&rays),
    });

    Ok(VerificationReport {
        representation: problem.body.representation(),
        metric: match &metric {
            Metric::Quasi(spec) => format!("quasi(p={})", spec.p()),
            Metric::LpNorm(p) => format!("lp_norm(p={p})"),
        },
        seed: opts.seed,
        samples: opts.samples,
        inflate: opts.inflate,
        distance,
        axis: axis + 1,
        sign: sign.symbol().to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
        tolerances: opts.tolerance_report.then(Tolerances::current),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hrep::hrep_project;
    use crate::types::VPolytope;

    fn poly(a: &[&[f64]], b: &[f64]) -> HPolyhedron {
        HPolyhedron::new(a.iter().map(|r| r.to_vec()).collect(), b.to_vec()).unwrap()
    }

    fn origin() -> Point {
        Point::origin(2)
    }

    fn unit_box() -> HPolyhedron {
        poly(
            &[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]],
            &[1.0, 1.0, 1.0, 1.0],
        )
    }

    fn triangle_h() -> HPolyhedron {
        poly(&[&[1.0, 1.0], &[-3.0, 1.0], &[1.0, -3.0]], &[2.0, 2.0, 2.0])
    }

    #[test]
    fn facet_oracle_box() {
        let r = facet_l1_oracle(&unit_box(), &origin(), &NormSpec::l1()).unwrap();
        assert!((r.distance - 1.0).abs() < 1e-9);
        assert_eq!(r.facet, 0);
        assert!(r.skipped.is_empty());
    }

    #[test]
    fn facet_oracle_corner_triangle() {
        let p = poly(&[&[1.0, 1.0], &[-1.0, 0.0], &[0.0, -1.0]], &[2.0, 1.0, 1.0]);
        let r = facet_l1_oracle(&p, &origin(), &NormSpec::l1()).unwrap();
        let minima: Vec<f64> = r.per_facet.iter().map(|d| d.unwrap()).collect();
        for (got, want) in minima.iter().zip([2.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-9, "{minima:?}");
        }
        // rows 1 and 2 tie, the lower one wins
        assert_eq!(r.facet, 1);
        assert!((r.distance - 1.0).abs() < 1e-9);
    }

    #[test]
    fn facet_oracle_triangle() {
        let r = facet_l1_oracle(&triangle_h(), &origin(), &NormSpec::l1()).unwrap();
        assert!((r.distance - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn facet_oracle_skips_redundant_rows() {
        let mut rows = unit_box().to_rows();
        rows.push(vec![1.0, 1.0]);
        let p = HPolyhedron::new(rows, vec![1.0, 1.0, 1.0, 1.0, 5.0]).unwrap();
        let r = facet_l1_oracle(&p, &origin(), &NormSpec::l1()).unwrap();
        assert_eq!(r.skipped, vec![4]);
        assert_eq!(r.per_facet[4], None);
        assert!((r.distance - 1.0).abs() < 1e-9);
    }

    #[test]
    fn facet_oracle_handles_unbounded_polyhedra() {
        let p = poly(&[&[1.0, 1.0]], &[2.0]);
        let r = facet_l1_oracle(&p, &origin(), &NormSpec::l1()).unwrap();
        assert!((r.distance - 2.0).abs() < 1e-9);
    }

    #[test]
    fn facet_oracle_rejects_fractional_p_and_exterior_points() {
        let spec = NormSpec::new(0.5, None).unwrap();
        assert!(matches!(
            facet_l1_oracle(&unit_box(), &origin(), &spec),
            Err(ProjError::InvalidNorm(_))
        ));
        let outside = Point::new(vec![3.0, 0.0]).unwrap();
        assert_eq!(
            facet_l1_oracle(&unit_box(), &outside, &NormSpec::l1()),
            Err(ProjError::NotInterior)
        );
    }

    #[test]
    fn facet_oracle_weighted() {
        let spec = NormSpec::new(1.0, Some(vec![4.0, 1.0])).unwrap();
        let r = facet_l1_oracle(&unit_box(), &origin(), &spec).unwrap();
        let h = hrep_project(&unit_box(), &origin(), &spec).unwrap();
        assert!((r.distance - h.distance).abs() < 1e-9);
    }

    #[test]
    fn e_set_box() {
        let metric = Metric::Quasi(NormSpec::l1());
        let report = e_set_check(&unit_box(), &origin(), 1.0, &metric).unwrap();
        assert!(report.points.iter().all(|p| p.inside && p.on_boundary));
    }

    #[test]
    fn e_set_triangle_vertices() {
        let tri = VPolytope::new(vec![vec![2.0, 0.0], vec![0.0, 2.0], vec![-1.0, -1.0]]).unwrap();
        let metric = Metric::Quasi(NormSpec::l1());
        let report = e_set_check(&tri, &origin(), 2.0 / 3.0, &metric).unwrap();
        let boundary: Vec<_> = report
            .points
            .iter()
            .filter(|p| p.on_boundary)
            .map(|p| (p.axis, p.sign.as_str()))
            .collect();
        // the axis-2 steps tie with the axis-1 negative step
        assert!(boundary.contains(&(0, "-")));
        assert!(!boundary.contains(&(0, "+")));
    }

    #[test]
    fn e_set_catches_inflated_distance() {
        let metric = Metric::Quasi(NormSpec::l1());
        let err = e_set_check(&unit_box(), &origin(), 1.01, &metric).unwrap_err();
        assert!(matches!(
            err,
            VerifyError::ProofInvariantViolation {
                fact: EsetFact::Inside,
                ..
            }
        ));
        let err = e_set_check(&unit_box(), &origin(), 0.9, &metric).unwrap_err();
        assert!(matches!(
            err,
            VerifyError::ProofInvariantViolation {
                fact: EsetFact::Boundary,
                ..
            }
        ));
    }

    #[test]
    fn ray_sampling_box_and_witness() {
        let metric = Metric::Quasi(NormSpec::l1());
        let r = ray_sampling_check(&unit_box(), &origin(), 1.0, &metric, 2_000, 3).unwrap();
        assert!(r.sampled_min >= 1.0 - GLOBALITY_TOL);

        let witness = poly(
            &[
                &[1.0, 1.0],
                &[1.0, 0.0],
                &[-1.0, 0.0],
                &[0.0, 1.0],
                &[0.0, -1.0],
            ],
            &[1.0, 10.0, 10.0, 10.0, 10.0],
        );
        let err = ray_sampling_check(&witness, &origin(), 1.0, &Metric::LpNorm(2.0), 2_000, 3)
            .unwrap_err();
        let VerifyError::GlobalityViolation { distance, .. } = err else {
            panic!("expected a globality violation");
        };
        assert!(distance < 0.7072);
    }

    #[test]
    fn random_instances_are_bounded_and_interior() {
        for inst in random_suite(20, 7).unwrap() {
            let p = &inst.poly;
            assert!(p.num_rows() > p.dim() && p.num_rows() <= 20);
            assert!((2..=6).contains(&p.dim()));
            assert!(p.rhs().iter().all(|&b| b >= 0.5));
            // bounded: every coordinate direction hits a constraint
            let table = crate::hrep::hrep_axis_lambdas(p).unwrap();
            assert!(table.iter().all(|e| e.lambda.is_finite()));
        }
        assert_eq!(random_suite(3, 5).unwrap(), random_suite(3, 5).unwrap());
    }

    #[test]
    fn random_polyhedron_argument_checks() {
        assert!(random_bounded_hpolyhedron(3, 3, 0).is_err());
        assert!(random_bounded_hpolyhedron(0, 3, 0).is_err());
    }
}
