//! Planar convex bodies through their support functions.
//!
//! Every body exposes `h(K, u) = max_{y ∈ K} ⟨u, y⟩`. Containment in the hull
//! of a union, the closure `conv_𝒦`, common supporting lines and the ordering
//! sweep are all expressed through support values.
//!
//! Two tiers of exactness are used. When every body involved is a
//! [`ConvexPolygon`], predicates run on exact rationals. Anything involving
//! circles, ellipses or sampled boundaries runs in `f64` with explicit margins;
//! results that fall inside the tolerance band are reported as
//! [`BodyError::ToleranceInconclusive`] rather than guessed.

mod crossings;
mod hull;
mod semialgebraic;
mod support;
mod sweep;

pub use crossings::{common_supporting_directions, pairwise_crossings, PairCrossings};
pub use hull::{
    body_closure_table, conv_closure, convex_position, geometry_from_bodies, in_hull, in_hull_with_mode,
    Certificate, HullMode, HullVerdict,
};
pub use semialgebraic::{semialgebraic_body, Halfplane, SemialgebraicOptions};
pub use support::{hull_support, polygon_support_exact, support, support_table, unit};
pub use sweep::{cdim_upper_bound_check, sweep_orderings, BoundCheck, SweepResult};

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::exact::{convex_hull, orient, QPoint};
use crate::geometry::GeometryError;

/// A point or vector of the plane.
pub type Point = [f64; 2];

pub const MAX_BODIES: usize = 12;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum BodyError {
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("duplicate body label {0:?}")]
    DuplicateLabel(String),
    #[error("hull of an empty subset")]
    EmptySubset,
    #[error("convex position needs at least two bodies, got {0}")]
    SubsetTooSmall(usize),
    #[error("family of {n} bodies exceeds the cap of {cap}")]
    TooManyBodies { n: usize, cap: usize },
    #[error("containment of body {body} undecided: minimal margin {margin:e} at angle {angle} is within the tolerance band; refine the grid or tolerance")]
    ToleranceInconclusive { body: usize, margin: f64, angle: f64 },
    #[error("support functions of bodies {first} and {second} agree on an interval")]
    InfiniteContactSuspected { first: usize, second: usize },
    #[error("support functions agree on an interval of directions")]
    DegenerateIdentical,
    #[error("no direction with pairwise distinct support values in the interval ({from}, {to}); refine the crossing grid or perturb the bodies")]
    NoRegularDirection { from: f64, to: f64 },
    #[error("alpha {alpha} is not below the maximum {max} of the defining product")]
    AlphaTooLarge { alpha: f64, max: f64 },
    #[error("traced level curve is not convex at sample {index}")]
    NonConvexTrace { index: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Numeric knobs shared by the float-mode operations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BodyConfig {
    /// Directions sampled when checking hull containment numerically.
    pub hull_grid: usize,
    /// Directions sampled when locating support-function crossings.
    pub crossing_grid: usize,
    /// Margin band treated as undecided in numeric containment checks.
    pub tau: f64,
    /// Angular resolution of crossing bisection.
    pub root_tol: f64,
    /// `|h₁ − h₂|` below which a grid-local minimum counts as a tangency.
    pub tangency_tol: f64,
}

impl Default for BodyConfig {
    fn default() -> Self {
        BodyConfig { hull_grid: 4096, crossing_grid: 8192, tau: 1e-9, root_tol: 1e-12, tangency_tol: 1e-10 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self, BodyError> {
        if !(radius > 0.0 && radius.is_finite() && center.iter().all(|c| c.is_finite())) {
            return Err(BodyError::InvalidBody(format!("circle radius {radius} must be positive")));
        }
        Ok(Circle { center, radius })
    }
}

/// Ellipse with semi-axes `a ≥ b > 0`, the `a`-axis rotated by `theta` radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ellipse {
    pub center: Point,
    pub a: f64,
    pub b: f64,
    pub theta: f64,
}

impl Ellipse {
    pub fn new(center: Point, a: f64, b: f64, theta: f64) -> Result<Self, BodyError> {
        let finite = [center[0], center[1], a, b, theta].iter().all(|v| v.is_finite());
        if !(finite && a >= b && b > 0.0) {
            return Err(BodyError::InvalidBody(format!("ellipse needs a >= b > 0, got a={a}, b={b}")));
        }
        Ok(Ellipse { center, a, b, theta })
    }
}

/// Convex polygon with exact rational vertices in counterclockwise order,
/// all in strictly convex position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<QPoint>,
    approx: Vec<[u64; 2]>,
}

impl ConvexPolygon {
    /// Validates that `vertices` are counterclockwise, distinct and strictly convex.
    pub fn new(vertices: Vec<QPoint>) -> Result<Self, BodyError> {
        let n = vertices.len();
        if n < 3 {
            return Err(BodyError::InvalidBody(format!("polygon needs at least 3 vertices, got {n}")));
        }
        let distinct: HashSet<&QPoint> = vertices.iter().collect();
        if distinct.len() != n {
            return Err(BodyError::InvalidBody("polygon has repeated vertices".into()));
        }
        // strictly left of every non-incident edge rules out self-overlapping windings too
        for i in 0..n {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
            for (j, p) in vertices.iter().enumerate() {
                if j != i && j != (i + 1) % n && orient(a, b, p) != Ordering::Greater {
                    return Err(BodyError::InvalidBody(format!(
                        "polygon vertices are not counterclockwise in strictly convex position (edge {i}, vertex {j})"
                    )));
                }
            }
        }
        let approx = vertices.iter().map(|v| v.to_f64().map(f64::to_bits)).collect();
        Ok(ConvexPolygon { vertices, approx })
    }

    /// Convex hull of arbitrary points; fails if the hull is degenerate.
    pub fn hull_of(points: &[QPoint]) -> Result<Self, BodyError> {
        ConvexPolygon::new(convex_hull(points))
    }

    pub fn from_f64(points: &[Point]) -> Result<Self, BodyError> {
        let q: Option<Vec<QPoint>> = points.iter().map(|p| QPoint::from_f64(p[0], p[1])).collect();
        ConvexPolygon::new(q.ok_or_else(|| BodyError::InvalidBody("non-finite coordinate".into()))?)
    }

    pub fn vertices(&self) -> &[QPoint] {
        &self.vertices
    }

    /// Vertices rounded to `f64`.
    pub fn approx_vertices(&self) -> impl Iterator<Item = Point> + '_ {
        self.approx.iter().map(|v| v.map(f64::from_bits))
    }
}

/// Dense counterclockwise polyline bounding a convex region (convex within tolerance).
#[derive(Clone, Debug, PartialEq)]
pub struct SampledBoundary {
    vertices: Vec<Point>,
}

impl SampledBoundary {
    /// Tolerance on the turn cross product, relative to the squared diameter.
    pub const CONVEXITY_TOL: f64 = 1e-12;

    pub fn new(vertices: Vec<Point>) -> Result<Self, BodyError> {
        if vertices.len() < 3 || vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(BodyError::InvalidBody("sampled boundary needs at least 3 finite vertices".into()));
        }
        if let Some(index) = first_nonconvex_turn(&vertices) {
            return Err(BodyError::NonConvexTrace { index });
        }
        Ok(SampledBoundary { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }
}

/// First vertex where the closed polyline turns clockwise beyond tolerance,
/// or where the total turning exceeds one revolution.
pub(crate) fn first_nonconvex_turn(v: &[Point]) -> Option<usize> {
    let n = v.len();
    let diam2 = v.iter().flat_map(|p| v.iter().map(move |q| sq_dist(*p, *q))).fold(0.0, f64::max);
    let tol = SampledBoundary::CONVEXITY_TOL * diam2.max(f64::MIN_POSITIVE);
    let mut turning = 0.0;
    for i in 0..n {
        let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
        let e1 = sub(b, a);
        let e2 = sub(c, b);
        if cross(e1, e2) < -tol {
            return Some((i + 1) % n);
        }
        turning += cross(e1, e2).atan2(dot(e1, e2));
    }
    if turning > 2.0 * std::f64::consts::PI + 1e-6 {
        return Some(0);
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub enum PlanarBody {
    Circle(Circle),
    Ellipse(Ellipse),
    Polygon(ConvexPolygon),
    Sampled(SampledBoundary),
}

impl PlanarBody {
    pub fn circle(center: Point, radius: f64) -> Result<Self, BodyError> {
        Circle::new(center, radius).map(PlanarBody::Circle)
    }

    pub fn ellipse(center: Point, a: f64, b: f64, theta: f64) -> Result<Self, BodyError> {
        Ellipse::new(center, a, b, theta).map(PlanarBody::Ellipse)
    }

    pub fn polygon(vertices: Vec<QPoint>) -> Result<Self, BodyError> {
        ConvexPolygon::new(vertices).map(PlanarBody::Polygon)
    }

    pub fn as_polygon(&self) -> Option<&ConvexPolygon> {
        match self {
            PlanarBody::Polygon(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_circle(&self) -> Option<&Circle> {
        match self {
            PlanarBody::Circle(c) => Some(c),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            PlanarBody::Circle(_) => "circle",
            PlanarBody::Ellipse(_) => "ellipse",
            PlanarBody::Polygon(_) => "polygon",
            PlanarBody::Sampled(_) => "sampled",
        }
    }

    /// Largest distance from the origin to a point of the body.
    pub fn radius_bound(&self) -> f64 {
        match self {
            PlanarBody::Circle(c) => norm(c.center) + c.radius,
            PlanarBody::Ellipse(e) => norm(e.center) + e.a,
            PlanarBody::Polygon(p) => p.approx_vertices().map(norm).fold(0.0, f64::max),
            PlanarBody::Sampled(s) => s.vertices.iter().copied().map(norm).fold(0.0, f64::max),
        }
    }
}

/// A labelled list of planar bodies.
#[derive(Clone, Debug, PartialEq)]
pub struct BodyFamily {
    labels: Vec<String>,
    bodies: Vec<PlanarBody>,
}

impl BodyFamily {
    pub fn new(labels: Vec<String>, bodies: Vec<PlanarBody>) -> Result<Self, BodyError> {
        assert_eq!(labels.len(), bodies.len(), "one label per body");
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(BodyError::DuplicateLabel(l.clone()));
            }
        }
        Ok(BodyFamily { labels, bodies })
    }

    /// Bodies labelled `K0`, `K1`, ...
    pub fn unlabeled(bodies: Vec<PlanarBody>) -> Self {
        let labels = (0..bodies.len()).map(|i| format!("K{i}")).collect();
        BodyFamily { labels, bodies }
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bodies(&self) -> &[PlanarBody] {
        &self.bodies
    }

    pub fn body(&self, i: usize) -> &PlanarBody {
        &self.bodies[i]
    }

    pub fn all_polygons(&self) -> bool {
        self.bodies.iter().all(|b| matches!(b, PlanarBody::Polygon(_)))
    }

    pub(crate) fn radius_bound(&self) -> f64 {
        self.bodies.iter().map(PlanarBody::radius_bound).fold(0.0, f64::max)
    }
}

pub(crate) fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub(crate) fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

pub(crate) fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

pub(crate) fn sq_dist(a: Point, b: Point) -> f64 {
    let d = sub(a, b);
    dot(d, d)
}

/// Angle of `u` in `[0, 2π)`.
pub(crate) fn angle_of(u: Point) -> f64 {
    let a = u[1].atan2(u[0]);
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}
