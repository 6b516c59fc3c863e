//! Projection onto convex bodies known only through a membership test.
//!
//! Each of the `2n` axis steps is located by doubling followed by bisection
//! along the ray, so any closed convex body with a membership predicate and a
//! bounding radius can be projected.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{ProjError, Result};
use crate::lp::{solve, LpProblem, LpStatus};
use crate::types::{
    check_dim, dot, select_projection, AxisLambda, HPolyhedron, NormSpec, Point, ProjectionResult,
    Sign, VPolytope, ZERO_TOL,
};

/// Absolute accuracy of every bisected step length.
pub const BISECT_TOL: f64 = 1e-9;

/// Doubling gives up beyond this step when no finite radius hint is known.
const UNBOUNDED_STEP_CAP: f64 = 1e15;

/// A closed convex set given by membership.
///
/// `radius_hint` bounds the body: from any interior query point, every point
/// of the body is within that L-infinity distance.
pub trait ConvexBody: Sync {
    fn dim(&self) -> usize;

    /// Closed membership; boundary points count as inside.
    fn contains(&self, x: &[f64]) -> bool;

    fn radius_hint(&self) -> f64;

    /// Largest `t >= 0` with `origin + t * dir` in the body (infinite when the
    /// ray never leaves). Defaults to bisection; bodies with an exact exit
    /// formula override it.
    fn ray_exit(&self, origin: &[f64], dir: &[f64]) -> Result<f64> {
        bisect_ray(self, origin, dir)
    }
}

/// Doubling-then-bisection search for the exit step along `dir`.
pub fn bisect_ray<B: ConvexBody + ?Sized>(body: &B, origin: &[f64], dir: &[f64]) -> Result<f64> {
    check_dim(body.dim(), origin.len())?;
    check_dim(body.dim(), dir.len())?;
    if !body.contains(origin) {
        return Err(ProjError::NotInterior);
    }
    let reach = dir.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if reach == 0.0 {
        return Err(ProjError::Domain("ray direction is the zero vector".into()));
    }
    let radius = body.radius_hint();
    let cap = if radius.is_finite() {
        radius / reach
    } else {
        UNBOUNDED_STEP_CAP
    };
    let at = |t: f64| -> Vec<f64> { origin.iter().zip(dir).map(|(o, d)| o + t * d).collect() };

    let mut lo = 0.0;
    let mut hi = (cap / 2.0).min(1.0);
    while body.contains(&at(hi)) {
        lo = hi;
        if hi >= cap {
            return Err(ProjError::RadiusHintViolation { radius });
        }
        hi = (2.0 * hi).min(cap);
    }
    while hi - lo > BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        if body.contains(&at(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bisected step from `a` to the boundary along `sign * e_axis`.
pub fn axis_boundary_bisect<B: ConvexBody + ?Sized>(
    body: &B,
    a: &Point,
    axis: usize,
    sign: Sign,
) -> Result<f64> {
    check_dim(body.dim(), a.dim())?;
    if axis >= body.dim() {
        return Err(ProjError::Dimension {
            expected: body.dim(),
            found: axis + 1,
        });
    }
    let mut dir = vec![0.0; body.dim()];
    dir[axis] = sign.factor();
    bisect_ray(body, a.coords(), &dir)
}

/// Nearest boundary point of `body` from `a` under `spec`, using only
/// membership queries.
pub fn oracle_project<B: ConvexBody + ?Sized>(
    body: &B,
    a: &Point,
    spec: &NormSpec,
) -> Result<ProjectionResult> {
    check_dim(body.dim(), a.dim())?;
    spec.check_dim(body.dim())?;
    let mut table = Vec::with_capacity(2 * body.dim());
    for axis in 0..body.dim() {
        for sign in Sign::BOTH {
            table.push(AxisLambda {
                axis,
                sign,
                lambda: axis_boundary_bisect(body, a, axis, sign)?,
                binding_row: None,
            });
        }
    }
    Ok(select_projection(a, table, spec))
}

/// Euclidean ball.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
    pub radius_hint: f64,
}

impl Ball {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        check_shape(&center, &[radius])?;
        Ok(Self {
            center,
            radius,
            radius_hint: 2.0 * radius,
        })
    }
}

impl ConvexBody for Ball {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn contains(&self, x: &[f64]) -> bool {
        let sq: f64 = x
            .iter()
            .zip(&self.center)
            .map(|(x, c)| (x - c) * (x - c))
            .sum();
        sq <= self.radius * self.radius
    }

    fn radius_hint(&self) -> f64 {
        self.radius_hint
    }
}

/// Axis-aligned ellipsoid `sum_i ((x_i - c_i) / s_i)^2 <= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ellipsoid {
    pub center: Vec<f64>,
    pub semi_axes: Vec<f64>,
    pub radius_hint: f64,
}

impl Ellipsoid {
    pub fn new(center: Vec<f64>, semi_axes: Vec<f64>) -> Result<Self> {
        check_dim(center.len(), semi_axes.len())?;
        check_shape(&center, &semi_axes)?;
        let widest = semi_axes.iter().fold(0.0_f64, |m, &s| m.max(s));
        Ok(Self {
            center,
            semi_axes,
            radius_hint: 2.0 * widest,
        })
    }
}

impl ConvexBody for Ellipsoid {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn contains(&self, x: &[f64]) -> bool {
        let sum: f64 = x
            .iter()
            .zip(&self.center)
            .zip(&self.semi_axes)
            .map(|((x, c), s)| {
                let u = (x - c) / s;
                u * u
            })
            .sum();
        sum <= 1.0
    }

    fn radius_hint(&self) -> f64 {
        self.radius_hint
    }
}

/// Intersection of a halfspace polyhedron with a Euclidean ball.
#[derive(Clone, Debug, PartialEq)]
pub struct HrepBall {
    pub poly: HPolyhedron,
    pub ball: Ball,
}

impl HrepBall {
    pub fn new(poly: HPolyhedron, ball: Ball) -> Result<Self> {
        check_dim(poly.dim(), ball.dim())?;
        Ok(Self { poly, ball })
    }
}

impl ConvexBody for HrepBall {
    fn dim(&self) -> usize {
        self.poly.dim()
    }

    fn contains(&self, x: &[f64]) -> bool {
        self.ball.contains(x) && self.poly.max_violation(x) <= 0.0
    }

    fn radius_hint(&self) -> f64 {
        self.ball.radius_hint
    }
}

/// Adapts a closure into a body.
pub struct MembershipFn<F> {
    dim: usize,
    radius_hint: f64,
    member: F,
}

impl<F> MembershipFn<F>
where
    F: Fn(&[f64]) -> bool + Sync,
{
    pub fn new(dim: usize, radius_hint: f64, member: F) -> Self {
        Self {
            dim,
            radius_hint,
            member,
        }
    }
}

impl<F> ConvexBody for MembershipFn<F>
where
    F: Fn(&[f64]) -> bool + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn contains(&self, x: &[f64]) -> bool {
        (self.member)(x)
    }

    fn radius_hint(&self) -> f64 {
        self.radius_hint
    }
}

/// Polyhedra have an exact exit step, `min { slack_i / (a_i . d) : a_i . d > 0 }`.
impl ConvexBody for HPolyhedron {
    fn dim(&self) -> usize {
        HPolyhedron::dim(self)
    }

    fn contains(&self, x: &[f64]) -> bool {
        self.max_violation(x) <= 0.0
    }

    fn radius_hint(&self) -> f64 {
        f64::INFINITY
    }

    fn ray_exit(&self, origin: &[f64], dir: &[f64]) -> Result<f64> {
        check_dim(HPolyhedron::dim(self), origin.len())?;
        check_dim(HPolyhedron::dim(self), dir.len())?;
        let mut best = f64::INFINITY;
        for (row, &b) in self.rows().zip(self.rhs()) {
            let slack = b - dot(row, origin);
            if slack < 0.0 {
                return Err(ProjError::NotInterior);
            }
            let rate = dot(row, dir);
            if rate > ZERO_TOL {
                best = best.min(slack / rate);
            }
        }
        Ok(best)
    }
}

/// As a body, a vertex list stands for its convex hull `conv(vertices)`.
/// Membership and ray exits are linear programs over the hull weights.
impl ConvexBody for VPolytope {
    fn dim(&self) -> usize {
        VPolytope::dim(self)
    }

    fn contains(&self, x: &[f64]) -> bool {
        let m = self.num_vertices();
        let Ok(mut lp) = LpProblem::maximize(vec![0.0; m]) else {
            return false;
        };
        for (i, &xi) in x.iter().enumerate() {
            let row = self.vertices().iter().map(|v| v[i]).collect();
            if lp.add_eq(row, xi).is_err() {
                return false;
            }
        }
        if lp.add_eq(vec![1.0; m], 1.0).is_err() {
            return false;
        }
        matches!(solve(&lp), Ok(sol) if sol.status == LpStatus::Optimal)
    }

    fn radius_hint(&self) -> f64 {
        let mut widest = 0.0_f64;
        for u in self.vertices() {
            for v in self.vertices() {
                for (a, b) in u.iter().zip(v) {
                    widest = widest.max((a - b).abs());
                }
            }
        }
        widest
    }

    /// `max { t : origin + t dir = sum_k mu_k v_k, sum_k mu_k = 1, mu >= 0 }`.
    fn ray_exit(&self, origin: &[f64], dir: &[f64]) -> Result<f64> {
        let n = VPolytope::dim(self);
        check_dim(n, origin.len())?;
        check_dim(n, dir.len())?;
        let m = self.num_vertices();
        let mut objective = vec![0.0; m + 1];
        objective[0] = 1.0;
        let mut lp = LpProblem::maximize(objective)?;
        lp.set_free(0);
        for i in 0..n {
            let mut row = Vec::with_capacity(m + 1);
            row.push(dir[i]);
            row.extend(self.vertices().iter().map(|v| -v[i]));
            lp.add_eq(row, -origin[i])?;
        }
        let mut total = vec![1.0; m + 1];
        total[0] = 0.0;
        lp.add_eq(total, 1.0)?;
        let sol = solve(&lp)?;
        match (sol.status, sol.objective_value) {
            (LpStatus::Optimal, Some(t)) if t >= -ZERO_TOL => Ok(t.max(0.0)),
            _ => Err(ProjError::NotInterior),
        }
    }
}

fn check_shape(center: &[f64], extents: &[f64]) -> Result<()> {
    if center.is_empty() {
        return Err(ProjError::Empty("center"));
    }
    if center.iter().chain(extents).any(|v| !v.is_finite()) {
        return Err(ProjError::NonFinite("body parameters"));
    }
    if extents.iter().any(|&e| e <= 0.0) {
        return Err(ProjError::Domain("radii must be positive".into()));
    }
    Ok(())
}

/// `max { sum_i |x_i| : sum_i |x_i|^p = 1 }` in `n` dimensions: 1 for
/// `p <= 1`, attained on an axis, and `n^(1 - 1/p)` for `p > 1`, attained
/// at the uniform vector.
pub fn lp_ratio_bound(n: usize, p: f64) -> Result<f64> {
    if n == 0 {
        return Err(ProjError::Domain("dimension must be at least 1".into()));
    }
    if !p.is_finite() || p <= 0.0 {
        return Err(ProjError::Domain(format!(
            "exponent must be positive, got {p}"
        )));
    }
    if p <= 1.0 {
        Ok(1.0)
    } else {
        Ok((n as f64).powf(1.0 - 1.0 / p))
    }
}

/// Largest `sum_i |x_i|` seen over `samples` random points rescaled onto the
/// unit Lp sphere. Used to bracket [`lp_ratio_bound`] from below.
pub fn sample_lp_ratio(n: usize, p: f64, samples: usize, seed: u64) -> Result<f64> {
    lp_ratio_bound(n, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0_f64;
    let mut x = vec![0.0; n];
    for _ in 0..samples {
        x.iter_mut().for_each(|v| *v = rng.random_range(-1.0..=1.0));
        let lp_norm = x
            .iter()
            .map(|v: &f64| v.abs().powf(p))
            .sum::<f64>()
            .powf(1.0 / p);
        if lp_norm == 0.0 {
            continue;
        }
        let l1: f64 = x.iter().map(|v| v.abs()).sum();
        best = best.max(l1 / lp_norm);
    }
    Ok(best)
}
