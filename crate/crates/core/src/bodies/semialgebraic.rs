use std::f64::consts::TAU;

use super::support::unit;
use super::{norm, sub, BodyError, ConvexPolygon, Point, SampledBoundary};

/// The closed halfplane `a·x + b·y ≥ c`, stored with `(a, b)` of unit length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halfplane {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Halfplane {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, BodyError> {
        let len = a.hypot(b);
        if !(len > 0.0 && len.is_finite() && c.is_finite()) {
            return Err(BodyError::InvalidBody(format!("halfplane normal ({a}, {b}) must be nonzero")));
        }
        Ok(Halfplane { a: a / len, b: b / len, c: c / len })
    }

    /// The halfplanes bounding a polygon, one per edge.
    pub fn from_polygon(p: &ConvexPolygon) -> Vec<Halfplane> {
        let v: Vec<Point> = p.approx_vertices().collect();
        (0..v.len())
            .map(|i| {
                let (p, q) = (v[i], v[(i + 1) % v.len()]);
                let d = sub(q, p);
                Halfplane::new(-d[1], d[0], -d[1] * p[0] + d[0] * p[1]).expect("distinct vertices")
            })
            .collect()
    }

    /// Signed distance of `x` from the boundary line, positive inside.
    pub fn eval(&self, x: Point) -> f64 {
        self.a * x[0] + self.b * x[1] - self.c
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SemialgebraicOptions {
    /// Rays traced before adaptive refinement.
    pub min_samples: usize,
    /// Longest allowed chord between consecutive samples, relative to the polygon diameter.
    pub max_chord_rel: f64,
    pub max_samples: usize,
}

impl Default for SemialgebraicOptions {
    fn default() -> Self {
        SemialgebraicOptions { min_samples: 720, max_chord_rel: 5e-4, max_samples: 1 << 16 }
    }
}

/// The level set `{x : ∏ (a_i·x + b_i·y − c_i) ≥ α}` inside the polygon cut out
/// by `halfplanes`, traced as a convex polyline.
///
/// The logarithm of the product is strictly concave on the polygon, so each
/// ray from the maximizer of the product crosses the level curve once; the
/// crossing is bracketed by bisection and the inner endpoint kept, so every
/// sample satisfies the defining inequality.
pub fn semialgebraic_body(
    halfplanes: &[Halfplane],
    alpha: f64,
    opts: &SemialgebraicOptions,
) -> Result<SampledBoundary, BodyError> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(BodyError::InvalidBody(format!("alpha must be positive, got {alpha}")));
    }
    let corners = polygon_corners(halfplanes)?;
    let center = analytic_center(halfplanes, &corners)?;
    let log_max = log_product(halfplanes, center);
    if alpha.ln() >= log_max {
        return Err(BodyError::AlphaTooLarge { alpha, max: log_max.exp() });
    }
    let diameter = corners
        .iter()
        .flat_map(|p| corners.iter().map(move |q| norm(sub(*p, *q))))
        .fold(0.0, f64::max);
    let trace = |theta: f64| trace_ray(halfplanes, center, theta, alpha.ln());
    let n0 = opts.min_samples.max(3);
    let mut samples: Vec<(f64, Point)> = (0..n0)
        .map(|k| {
            let t = TAU * k as f64 / n0 as f64;
            (t, trace(t))
        })
        .collect();
    let max_chord = opts.max_chord_rel * diameter;
    loop {
        let mut refined = Vec::with_capacity(samples.len() * 2);
        let mut split = false;
        for i in 0..samples.len() {
            let (t0, p0) = samples[i];
            let (t1, p1) = samples.get(i + 1).copied().unwrap_or((TAU, samples[0].1));
            refined.push((t0, p0));
            if norm(sub(p1, p0)) > max_chord {
                let t = 0.5 * (t0 + t1);
                refined.push((t, trace(t)));
                split = true;
            }
        }
        samples = refined;
        if !split || samples.len() >= opts.max_samples {
            break;
        }
    }
    SampledBoundary::new(samples.into_iter().map(|(_, p)| p).collect())
}

fn log_product(halfplanes: &[Halfplane], x: Point) -> f64 {
    halfplanes.iter().map(|h| h.eval(x).ln()).sum()
}

/// Vertices of the bounded polygon `∩ halfplanes`.
fn polygon_corners(halfplanes: &[Halfplane]) -> Result<Vec<Point>, BodyError> {
    // bounded iff the inward normals leave no angular gap of π or more
    let mut angles: Vec<f64> = halfplanes.iter().map(|h| super::angle_of([h.a, h.b])).collect();
    angles.sort_by(f64::total_cmp);
    let wrap = angles.first().map_or(TAU, |a| a + TAU);
    let bounded = angles.iter().zip(angles.iter().skip(1).chain([&wrap])).all(|(a, b)| b - a < std::f64::consts::PI);
    if !bounded {
        return Err(BodyError::InvalidBody("halfplanes do not cut out a bounded polygon".into()));
    }
    let mut corners = Vec::new();
    for (i, h) in halfplanes.iter().enumerate() {
        for g in &halfplanes[i + 1..] {
            let det = h.a * g.b - h.b * g.a;
            if det.abs() < 1e-14 {
                continue;
            }
            let x = [(h.c * g.b - h.b * g.c) / det, (h.a * g.c - h.c * g.a) / det];
            let tol = 1e-9 * (1.0 + norm(x));
            if halfplanes.iter().all(|f| f.eval(x) >= -tol) {
                corners.push(x);
            }
        }
    }
    if corners.len() < 3 {
        return Err(BodyError::InvalidBody("halfplanes do not cut out a bounded polygon with interior".into()));
    }
    Ok(corners)
}

/// Maximizer of `Σ log(a_i·x + b_i·y − c_i)` by damped Newton iteration.
fn analytic_center(halfplanes: &[Halfplane], corners: &[Point]) -> Result<Point, BodyError> {
    let k = corners.len() as f64;
    let mut x = [corners.iter().map(|p| p[0]).sum::<f64>() / k, corners.iter().map(|p| p[1]).sum::<f64>() / k];
    let feasible = |x: Point| halfplanes.iter().all(|h| h.eval(x) > 0.0);
    if !feasible(x) {
        return Err(BodyError::InvalidBody("polygon has empty interior".into()));
    }
    for _ in 0..100 {
        let (mut g, mut h) = ([0.0; 2], [0.0; 3]);
        for hp in halfplanes {
            let s = hp.eval(x);
            g[0] += hp.a / s;
            g[1] += hp.b / s;
            let w = 1.0 / (s * s);
            h[0] += w * hp.a * hp.a;
            h[1] += w * hp.a * hp.b;
            h[2] += w * hp.b * hp.b;
        }
        // the Hessian of the objective is −h, so the Newton step is h⁻¹ g
        let det = h[0] * h[2] - h[1] * h[1];
        let step = [(h[2] * g[0] - h[1] * g[1]) / det, (h[0] * g[1] - h[1] * g[0]) / det];
        let decrement = g[0] * step[0] + g[1] * step[1];
        if !decrement.is_finite() {
            return Err(BodyError::InvalidBody("degenerate polygon".into()));
        }
        if decrement < 1e-24 {
            break;
        }
        let f0 = log_product(halfplanes, x);
        let mut t = 1.0;
        loop {
            let y = [x[0] + t * step[0], x[1] + t * step[1]];
            if feasible(y) && log_product(halfplanes, y) >= f0 + 0.25 * t * decrement {
                x = y;
                break;
            }
            t *= 0.5;
            if t < 1e-20 {
                return Ok(x);
            }
        }
    }
    Ok(x)
}

fn trace_ray(halfplanes: &[Halfplane], center: Point, theta: f64, log_alpha: f64) -> Point {
    let u = unit(theta);
    let t_max = halfplanes
        .iter()
        .filter_map(|h| {
            let rate = h.a * u[0] + h.b * u[1];
            (rate < 0.0).then(|| h.eval(center) / -rate)
        })
        .fold(f64::INFINITY, f64::min);
    let at = |t: f64| [center[0] + t * u[0], center[1] + t * u[1]];
    let (mut lo, mut hi) = (0.0, t_max);
    while hi - lo > 1e-12 * (1.0 + t_max) {
        let mid = 0.5 * (lo + hi);
        let p = at(mid);
        let inside = halfplanes.iter().all(|h| h.eval(p) > 0.0) && log_product(halfplanes, p) >= log_alpha;
        if inside {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(lo)
}
