//! Property tests for the invariants of the projectors.

mod common;

use axisproj::lp::{solve, LpProblem, LpStatus};
use axisproj::oracle::{oracle_project, ConvexBody, Ellipsoid, MembershipFn, BISECT_TOL};
use axisproj::verify::{
    e_set_check, facet_l1_oracle, random_bounded_hpolyhedron, ray_sampling_check, Metric,
};
use axisproj::{
    hrep_axis_lambdas, hrep_project, hrep_translate, minmax_distance, norm_distance,
    vrep_axis_lambdas, vrep_is_interior, vrep_project, vrep_translate, HPolyhedron, NormSpec,
    Point, Sign, VPolytope,
};
use common::*;
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -50.0..50.0f64
}

fn point(dim: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(coord(), dim).prop_map(|v| Point::new(v).unwrap())
}

fn norm_spec(dim: usize) -> impl Strategy<Value = NormSpec> {
    (0.05..=1.0f64, prop::collection::vec(0.1..5.0f64, dim))
        .prop_map(|(p, w)| NormSpec::new(p, Some(w)).unwrap())
}

/// Random polyhedron with the origin strictly inside; may be unbounded.
fn interior_hpoly() -> impl Strategy<Value = HPolyhedron> {
    (2usize..=5).prop_flat_map(|dim| {
        (1usize..=12).prop_flat_map(move |rows| {
            (
                prop::collection::vec(prop::collection::vec(-3.0..3.0f64, dim), rows),
                prop::collection::vec(0.1..4.0f64, rows),
            )
                .prop_filter_map("zero row", |(a, b)| HPolyhedron::new(a, b).ok())
        })
    })
}

fn bounded_hpoly() -> impl Strategy<Value = HPolyhedron> {
    (2usize..=6, 0usize..=10, any::<u64>()).prop_map(|(dim, extra, seed)| {
        random_bounded_hpolyhedron(dim, dim + 1 + extra, seed).unwrap()
    })
}

/// Random planar vertex sets around the origin.
fn planar_vertices() -> impl Strategy<Value = Vec<[f64; 2]>> {
    prop::collection::vec((coord(), coord()).prop_map(|(x, y)| [x, y]), 3..9)
}

fn to_vpoly(vs: &[[f64; 2]]) -> VPolytope {
    VPolytope::new(vs.iter().map(|v| v.to_vec()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_distance_is_a_symmetric_premetric(
        (x, a, spec) in (1usize..6).prop_flat_map(|n| (point(n), point(n), norm_spec(n)))
    ) {
        let d = norm_distance(&x, &a, &spec).unwrap();
        prop_assert!(d >= 0.0);
        prop_assert_eq!(d, norm_distance(&a, &x, &spec).unwrap());
        prop_assert_eq!(norm_distance(&x, &x, &spec).unwrap(), 0.0);
        if x != a {
            prop_assert!(d > 0.0);
        }
    }

    #[test]
    fn norm_distance_is_homogeneous_along_axes(
        (a, spec, axis, t) in (1usize..6).prop_flat_map(|n| (point(n), norm_spec(n), 0..n, -20.0..20.0f64))
    ) {
        let x = a.moved_along(axis, t);
        let d = norm_distance(&x, &a, &spec).unwrap();
        let step = x.coords()[axis] - a.coords()[axis];
        let want = spec.weight(axis) * step.abs().powf(spec.p());
        prop_assert!((d - want).abs() <= 1e-12 * want.max(1.0));
        prop_assert!((step.abs() - t.abs()).abs() <= 1e-12 * (1.0 + a.coords()[axis].abs()));
    }

    #[test]
    fn norm_distance_is_translation_invariant(
        (x, a, c, spec) in (1usize..6).prop_flat_map(|n| (point(n), point(n), point(n), norm_spec(n)))
    ) {
        let shift = |p: &Point| Point::new(p.coords().iter().zip(c.coords()).map(|(u, v)| u + v).collect()).unwrap();
        let d0 = norm_distance(&x, &a, &spec).unwrap();
        let d1 = norm_distance(&shift(&x), &shift(&a), &spec).unwrap();
        prop_assert!((d0 - d1).abs() <= 1e-9 * d0.max(1.0));
    }

    #[test]
    fn lambda_table_minimum_matches_minmax(poly in interior_hpoly()) {
        let table = hrep_axis_lambdas(&poly).unwrap();
        let table_min = table.iter().map(|e| e.lambda).fold(f64::INFINITY, f64::min);
        let minmax = minmax_distance(&poly).unwrap();
        prop_assert_eq!(table_min, minmax);
        let r = hrep_project(&poly, &Point::origin(poly.dim()), &NormSpec::l1()).unwrap();
        prop_assert_eq!(r.distance, minmax);
    }

    #[test]
    fn scaling_rhs_scales_distance(poly in interior_hpoly(), alpha in 0.01..100.0f64) {
        let a = Point::origin(poly.dim());
        let d = hrep_project(&poly, &a, &NormSpec::l1()).unwrap().distance;
        let scaled = HPolyhedron::new(poly.to_rows(), poly.rhs().iter().map(|b| alpha * b).collect()).unwrap();
        let ds = hrep_project(&scaled, &a, &NormSpec::l1()).unwrap().distance;
        prop_assert!((ds / d - alpha).abs() <= 1e-12 * alpha);
    }

    #[test]
    fn translation_is_consistent(poly in bounded_hpoly(), frac in prop::collection::vec(-0.3..0.3f64, 6)) {
        // a point well inside: a convex combination of axis exits, scaled down
        let origin = Point::origin(poly.dim());
        let table = hrep_axis_lambdas(&poly).unwrap();
        let coords: Vec<f64> = (0..poly.dim())
            .map(|j| {
                let reach = if frac[j] >= 0.0 { table[2 * j].lambda } else { table[2 * j + 1].lambda };
                frac[j] * reach / poly.dim() as f64
            })
            .collect();
        let a = Point::new(coords).unwrap();
        let direct = hrep_project(&poly, &a, &NormSpec::l1()).unwrap();
        let moved = hrep_translate(&poly, &a).unwrap();
        let via_origin = hrep_project(&moved, &origin, &NormSpec::l1()).unwrap();
        prop_assert_eq!(direct.distance, via_origin.distance);
        prop_assert_eq!((direct.axis, direct.sign), (via_origin.axis, via_origin.sign));
    }

    #[test]
    fn boundary_point_lies_on_the_boundary(poly in interior_hpoly(), spec in norm_spec(6)) {
        let dim = poly.dim();
        let spec = NormSpec::new(spec.p(), Some(spec.weights().unwrap()[..dim].to_vec())).unwrap();
        let a = Point::origin(dim);
        let r = hrep_project(&poly, &a, &spec).unwrap();
        let x = r.boundary_point.coords();
        let slack: Vec<f64> = poly.apply(x).iter().zip(poly.rhs()).map(|(ax, b)| b - ax).collect();
        prop_assert!(slack.iter().all(|&s| s >= -1e-9), "{slack:?}");
        let binding = r.lambda_table.iter().find(|e| e.axis == r.axis && e.sign == r.sign).unwrap().binding_row.unwrap();
        prop_assert!(slack[binding].abs() <= 1e-7);
        // only the selected coordinate moved
        for (j, (&xj, &aj)) in x.iter().zip(a.coords()).enumerate() {
            prop_assert_eq!(j == r.axis, xj != aj);
        }
        let d = norm_distance(&r.boundary_point, &a, &spec).unwrap();
        prop_assert!((d - r.distance).abs() <= 1e-12 * d.max(1.0));
    }

    #[test]
    fn weighted_projection_matches_weighted_facet_oracle(
        poly in bounded_hpoly(),
        w in prop::collection::vec(0.2..5.0f64, 6)
    ) {
        let spec = NormSpec::new(1.0, Some(w[..poly.dim()].to_vec())).unwrap();
        let a = Point::origin(poly.dim());
        let r = hrep_project(&poly, &a, &spec).unwrap();
        let oracle = facet_l1_oracle(&poly, &a, &spec).unwrap();
        prop_assert!((r.distance - oracle.distance).abs() <= 1e-7);
    }

    #[test]
    fn membership_wrapped_polyhedra_agree_with_closed_form(poly in bounded_hpoly()) {
        let a = Point::origin(poly.dim());
        let r = hrep_project(&poly, &a, &NormSpec::l1()).unwrap();
        let reach = r.lambda_table.iter().map(|e| e.lambda).fold(0.0, f64::max);
        // only axis rays are bisected, so the hint has to cover the axis exits
        let hint = 4.0 * reach * poly.dim() as f64 + 100.0;
        let p2 = poly.clone();
        let body = MembershipFn::new(poly.dim(), hint, move |x: &[f64]| p2.max_violation(x) <= 0.0);
        let o = oracle_project(&body, &a, &NormSpec::l1()).unwrap();
        prop_assert!((o.distance - r.distance).abs() <= 2.0 * BISECT_TOL);
    }

    #[test]
    fn vrep_steps_match_planar_geometry(vs in planar_vertices()) {
        // the LP models conv(vertices ∪ {0}); the oracle gets the origin explicitly
        let table = vrep_axis_lambdas(&to_vpoly(&vs)).unwrap();
        let mut with_origin = vs.clone();
        with_origin.push([0.0, 0.0]);
        for e in &table {
            let want = polygon_axis_exit(&with_origin, e.axis, e.sign.factor());
            prop_assert!((e.lambda - want).abs() <= 1e-8 * want.max(1.0), "{e:?} vs {want}");
        }
    }

    #[test]
    fn adding_a_vertex_never_shrinks_steps(vs in planar_vertices(), extra in (coord(), coord())) {
        let before = vrep_axis_lambdas(&to_vpoly(&vs)).unwrap();
        let mut grown = vs.clone();
        grown.push([extra.0, extra.1]);
        let after = vrep_axis_lambdas(&to_vpoly(&grown)).unwrap();
        for (b, a) in before.iter().zip(&after) {
            prop_assert!(a.lambda >= b.lambda - 1e-9, "{b:?} -> {a:?}");
        }
    }

    #[test]
    fn scaling_vertices_scales_distance(alpha in 0.05..20.0f64) {
        for v in [box_v(), cross_v(), triangle_v()] {
            let d = vrep_project(&v, &origin(), &NormSpec::l1()).unwrap().distance;
            let scaled = VPolytope::new(
                v.vertices().iter().map(|p| p.iter().map(|c| alpha * c).collect()).collect(),
            ).unwrap();
            let ds = vrep_project(&scaled, &origin(), &NormSpec::l1()).unwrap().distance;
            prop_assert!((ds - alpha * d).abs() <= 1e-9 * alpha.max(1.0));
        }
    }

    #[test]
    fn vrep_translation_matches_projection_from_point(
        (fx, fy) in (-0.4..0.4f64, -0.4..0.4f64)
    ) {
        let a = Point::new(vec![fx, fy]).unwrap();
        let direct = vrep_project(&box_v(), &a, &NormSpec::l1()).unwrap();
        let moved = vrep_translate(&box_v(), &a).unwrap();
        let via_origin = vrep_project(&moved, &origin(), &NormSpec::l1()).unwrap();
        prop_assert_eq!(direct.distance, via_origin.distance);
        let h = hrep_project(&box_h(), &a, &NormSpec::l1()).unwrap();
        prop_assert!((direct.distance - h.distance).abs() <= 1e-9);
    }

    #[test]
    fn lp_optimal_points_are_feasible_and_repeatable(
        rows in prop::collection::vec(prop::collection::vec(-5.0..5.0f64, 4), 1..6),
        rhs in prop::collection::vec(0.0..5.0f64, 6),
        cost in prop::collection::vec(-3.0..3.0f64, 4),
    ) {
        let mut lp = LpProblem::maximize(cost).unwrap();
        for (row, &f) in rows.iter().zip(&rhs) {
            lp.add_le(row.clone(), f).unwrap();
        }
        lp.add_le(vec![1.0; 4], 10.0).unwrap();
        let sol = solve(&lp).unwrap();
        prop_assert_eq!(sol.status, LpStatus::Optimal);
        let z = sol.primal.clone().unwrap();
        prop_assert!(lp.residual(&z) <= 1e-8);
        prop_assert_eq!(solve(&lp).unwrap(), sol);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn no_direction_beats_the_axes_on_ellipsoids(
        semi in prop::collection::vec(0.2..5.0f64, 2..4),
        offset in prop::collection::vec(-0.5..0.5f64, 3),
        p in 0.3..=1.0f64,
    ) {
        let dim = semi.len();
        let body = Ellipsoid::new(vec![0.0; dim], semi.clone()).unwrap();
        let a = Point::new((0..dim).map(|j| offset[j] * semi[j]).collect()).unwrap();
        let spec = NormSpec::new(p, None).unwrap();
        let r = oracle_project(&body, &a, &spec).unwrap();
        let metric = Metric::Quasi(spec);
        e_set_check(&body, &a, r.distance, &metric).unwrap();
        let rays = ray_sampling_check(&body, &a, r.distance, &metric, 10_000, 5).unwrap();
        prop_assert!(rays.sampled_min >= r.distance - 2.0 * BISECT_TOL);
    }
}

#[test]
fn zero_steps_exactly_on_lower_dimensional_hulls() {
    let segment = vpoly(&[&[-1.0, 0.0], &[1.0, 0.0]]);
    let table = vrep_axis_lambdas(&segment).unwrap();
    assert_eq!(table[2].lambda, 0.0);
    assert_eq!(table[3].lambda, 0.0);
    assert!(!vrep_is_interior(&segment, &origin()).unwrap());

    // flat triangle in the z = 0 plane of R^3
    let flat = VPolytope::new(vec![
        vec![2.0, 0.0, 0.0],
        vec![-1.0, 2.0, 0.0],
        vec![-1.0, -2.0, 0.0],
    ])
    .unwrap();
    let table = vrep_axis_lambdas(&flat).unwrap();
    let zero: Vec<_> = table
        .iter()
        .filter(|e| e.lambda == 0.0)
        .map(|e| (e.axis, e.sign))
        .collect();
    assert_eq!(zero, vec![(2, Sign::Plus), (2, Sign::Minus)]);
    assert!(!vrep_is_interior(&flat, &Point::origin(3)).unwrap());

    // full-dimensional in 3-D once an apex is added on both sides
    let solid = VPolytope::new(vec![
        vec![2.0, 0.0, 0.0],
        vec![-1.0, 2.0, 0.0],
        vec![-1.0, -2.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![0.0, 0.0, -1.0],
    ])
    .unwrap();
    assert!(vrep_is_interior(&solid, &Point::origin(3)).unwrap());
}

#[test]
fn polyhedral_body_ray_exit_agrees_with_bisection() {
    let poly = triangle_h();
    let p2 = poly.clone();
    let wrapped = MembershipFn::new(2, 10.0, move |x: &[f64]| p2.max_violation(x) <= 0.0);
    for dir in [[1.0, 0.3], [-0.2, -1.0], [0.5, 0.5]] {
        let exact = poly.ray_exit(&[0.0, 0.0], &dir).unwrap();
        let bisected = wrapped.ray_exit(&[0.0, 0.0], &dir).unwrap();
        assert!(
            (exact - bisected).abs() <= BISECT_TOL,
            "{exact} vs {bisected}"
        );
    }
}
