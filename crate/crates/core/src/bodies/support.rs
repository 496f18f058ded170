use num::Zero;

use super::{dot, BodyError, BodyFamily, ConvexPolygon, PlanarBody, Point};
use crate::exact::{QPoint, Rational};
use crate::subset::Subset;

/// Unit vector at angle `theta`.
pub fn unit(theta: f64) -> Point {
    [theta.cos(), theta.sin()]
}

/// `h(K, u)` for a unit vector `u`.
pub fn support(body: &PlanarBody, u: Point) -> f64 {
    match body {
        PlanarBody::Circle(c) => dot(c.center, u) + c.radius,
        PlanarBody::Ellipse(e) => {
            let (s, c) = e.theta.sin_cos();
            let along = u[0] * c + u[1] * s;
            let across = -u[0] * s + u[1] * c;
            dot(e.center, u) + (e.a * e.a * along * along + e.b * e.b * across * across).sqrt()
        }
        PlanarBody::Polygon(p) => p.approx_vertices().map(|v| dot(v, u)).fold(f64::NEG_INFINITY, f64::max),
        PlanarBody::Sampled(s) => s.vertices().iter().map(|&v| dot(v, u)).fold(f64::NEG_INFINITY, f64::max),
    }
}

/// Exact support value of a polygon in a rational (not necessarily unit) direction.
pub fn polygon_support_exact(p: &ConvexPolygon, u: &QPoint) -> Rational {
    p.vertices().iter().map(|v| v.dot(u)).max().unwrap_or_else(Rational::zero)
}

/// Support function of the hull of the union of the bodies in `s`: the
/// maximum of their support values.
pub fn hull_support(family: &BodyFamily, s: Subset, u: Point) -> Result<f64, BodyError> {
    if s.is_empty() {
        return Err(BodyError::EmptySubset);
    }
    Ok(s.iter().map(|i| support(family.body(i), u)).fold(f64::NEG_INFINITY, f64::max))
}

/// Support values of `body` at the `grid` equally spaced angles `2πk/grid`.
pub fn support_table(body: &PlanarBody, grid: usize) -> Vec<f64> {
    (0..grid).map(|k| support(body, unit(grid_angle(k, grid)))).collect()
}

pub(crate) fn grid_angle(k: usize, grid: usize) -> f64 {
    std::f64::consts::TAU * k as f64 / grid as f64
}
