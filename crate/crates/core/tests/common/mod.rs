#![allow(dead_code)]

use axisproj::{Ball, Ellipsoid, HPolyhedron, Point, VPolytope};

pub fn hpoly(a: &[&[f64]], b: &[f64]) -> HPolyhedron {
    HPolyhedron::new(a.iter().map(|r| r.to_vec()).collect(), b.to_vec()).unwrap()
}

pub fn vpoly(vs: &[&[f64]]) -> VPolytope {
    VPolytope::new(vs.iter().map(|v| v.to_vec()).collect()).unwrap()
}

pub fn origin() -> Point {
    Point::origin(2)
}

/// `[-1, 1]^2`
pub fn box_h() -> HPolyhedron {
    hpoly(
        &[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]],
        &[1.0, 1.0, 1.0, 1.0],
    )
}

pub fn box_v() -> VPolytope {
    vpoly(&[&[1.0, 1.0], &[1.0, -1.0], &[-1.0, 1.0], &[-1.0, -1.0]])
}

/// `|x| + |y| <= 2`
pub fn cross_h() -> HPolyhedron {
    hpoly(
        &[&[1.0, 1.0], &[1.0, -1.0], &[-1.0, 1.0], &[-1.0, -1.0]],
        &[2.0, 2.0, 2.0, 2.0],
    )
}

pub fn cross_v() -> VPolytope {
    vpoly(&[&[2.0, 0.0], &[-2.0, 0.0], &[0.0, 2.0], &[0.0, -2.0]])
}

/// `x + y <= 2, -3x + y <= 2, x - 3y <= 2`
pub fn triangle_h() -> HPolyhedron {
    hpoly(&[&[1.0, 1.0], &[-3.0, 1.0], &[1.0, -3.0]], &[2.0, 2.0, 2.0])
}

pub fn triangle_v() -> VPolytope {
    vpoly(&[&[2.0, 0.0], &[0.0, 2.0], &[-1.0, -1.0]])
}

/// `x + y <= 2`, unbounded
pub fn halfplane() -> HPolyhedron {
    hpoly(&[&[1.0, 1.0]], &[2.0])
}

/// `{x + y <= 1} ∩ [-10, 10]^2`
pub fn witness() -> HPolyhedron {
    hpoly(
        &[
            &[1.0, 1.0],
            &[1.0, 0.0],
            &[-1.0, 0.0],
            &[0.0, 1.0],
            &[0.0, -1.0],
        ],
        &[1.0, 10.0, 10.0, 10.0, 10.0],
    )
}

pub fn disk() -> Ball {
    Ball::new(vec![0.0, 0.0], 1.0).unwrap()
}

/// `x^2 / 4 + y^2 <= 1`
pub fn ellipse() -> Ellipsoid {
    Ellipsoid::new(vec![0.0, 0.0], vec![2.0, 1.0]).unwrap()
}

/// Where the segment `p -> q` crosses the line through the origin along
/// `axis`, as a signed coordinate on that axis; `None` if it does not cross.
/// Plain 2-D line intersection, independent of the projectors.
pub fn segment_axis_crossing(p: [f64; 2], q: [f64; 2], axis: usize) -> Option<f64> {
    let other = 1 - axis;
    let (po, qo) = (p[other], q[other]);
    if (po > 0.0 && qo > 0.0) || (po < 0.0 && qo < 0.0) || po == qo {
        return None;
    }
    let s = po / (po - qo);
    Some(p[axis] + s * (q[axis] - p[axis]))
}

/// Exit distance from the origin of a 2-D polygon (vertex list in any order)
/// along a signed axis: the farthest crossing of any edge on that side.
pub fn polygon_axis_exit(vertices: &[[f64; 2]], axis: usize, sign: f64) -> f64 {
    let mut best = 0.0_f64;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if let Some(c) = segment_axis_crossing(vertices[i], vertices[j], axis) {
                if c * sign > best {
                    best = c * sign;
                }
            }
        }
    }
    best
}
