use std::cmp::Ordering;
use std::f64::consts::TAU;

use num::{Signed, Zero};

use super::hull::golden_min;
use super::support::{grid_angle, support, support_table, unit};
use super::{angle_of, norm, sub, BodyConfig, BodyError, BodyFamily, Circle, ConvexPolygon, PlanarBody};
use crate::exact::QPoint;

/// Common supporting directions of one pair of bodies.
#[derive(Clone, Debug, PartialEq)]
pub struct PairCrossings {
    pub first: usize,
    pub second: usize,
    /// Angles in `[0, 2π)`, increasing.
    pub angles: Vec<f64>,
}

impl PairCrossings {
    pub fn count(&self) -> usize {
        self.angles.len()
    }
}

/// Angles `θ ∈ [0, 2π)` of the unit directions `u` with `h(b1, u) = h(b2, u)`,
/// increasing. Each such direction carries one line supporting both bodies
/// from the same side; tangential solutions are reported once.
pub fn common_supporting_directions(b1: &PlanarBody, b2: &PlanarBody, cfg: &BodyConfig) -> Result<Vec<f64>, BodyError> {
    match (b1, b2) {
        (PlanarBody::Circle(c1), PlanarBody::Circle(c2)) => circle_pair(c1, c2),
        (PlanarBody::Polygon(p1), PlanarBody::Polygon(p2)) => polygon_pair(p1, p2),
        _ => numeric_pair(b1, b2, cfg),
    }
}

/// Crossings of every pair `i < j` of the family.
pub fn pairwise_crossings(family: &BodyFamily, cfg: &BodyConfig) -> Result<Vec<PairCrossings>, BodyError> {
    let n = family.len();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for first in 0..n {
        for second in first + 1..n {
            let angles = common_supporting_directions(family.body(first), family.body(second), cfg).map_err(|e| {
                match e {
                    BodyError::DegenerateIdentical => BodyError::InfiniteContactSuspected { first, second },
                    e => e,
                }
            })?;
            out.push(PairCrossings { first, second, angles });
        }
    }
    Ok(out)
}

/// Solves `⟨c₁ − c₂, u⟩ = r₂ − r₁` on the unit circle.
fn circle_pair(c1: &Circle, c2: &Circle) -> Result<Vec<f64>, BodyError> {
    let w = sub(c1.center, c2.center);
    let len = norm(w);
    let rhs = c2.radius - c1.radius;
    let scale = 1.0 + norm(c1.center).max(norm(c2.center)) + c1.radius.max(c2.radius);
    let tol = 1e-12 * scale;
    if len <= tol {
        return if rhs.abs() <= tol { Err(BodyError::DegenerateIdentical) } else { Ok(vec![]) };
    }
    if (len - rhs.abs()).abs() <= tol {
        let dir = if rhs >= 0.0 { w } else { [-w[0], -w[1]] };
        return Ok(vec![angle_of(dir)]);
    }
    if rhs.abs() > len {
        return Ok(vec![]);
    }
    let phi = angle_of(w);
    let off = (rhs / len).acos();
    let mut out = vec![(phi - off).rem_euclid(TAU), (phi + off).rem_euclid(TAU)];
    out.sort_by(f64::total_cmp);
    Ok(out)
}

fn half(v: &QPoint) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Counterclockwise angular order of nonzero rational vectors starting at angle 0.
fn angle_cmp(a: &QPoint, b: &QPoint) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| b.cross(a).cmp(&num::zero()))
}

fn same_direction(a: &QPoint, b: &QPoint) -> bool {
    a.cross(b).is_zero() && a.dot(b).is_positive()
}

/// Outward edge normals of a counterclockwise polygon.
fn edge_normals(p: &ConvexPolygon) -> impl Iterator<Item = QPoint> + '_ {
    let v = p.vertices();
    (0..v.len()).map(move |i| {
        let d = v[(i + 1) % v.len()].sub(&v[i]);
        QPoint::new(d.y.clone(), -d.x)
    })
}

fn active_vertex<'a>(p: &'a ConvexPolygon, u: &QPoint) -> &'a QPoint {
    p.vertices().iter().max_by(|a, b| a.dot(u).cmp(&b.dot(u))).expect("nonempty polygon")
}

/// Between consecutive edge normals of either polygon both active vertices
/// `a`, `b` are fixed and `h₁ − h₂ = ⟨a − b, u⟩`, which vanishes only at
/// `±(a − b)^⊥`.
fn polygon_pair(p1: &ConvexPolygon, p2: &ConvexPolygon) -> Result<Vec<f64>, BodyError> {
    let mut normals: Vec<QPoint> = edge_normals(p1).chain(edge_normals(p2)).collect();
    normals.sort_by(angle_cmp);
    normals.dedup_by(|a, b| same_direction(a, b));
    let mut found: Vec<QPoint> = Vec::new();
    let k = normals.len();
    for i in 0..k {
        let (lo, hi) = (&normals[i], &normals[(i + 1) % k]);
        let mid = lo.add(hi);
        let w = active_vertex(p1, &mid).sub(active_vertex(p2, &mid));
        if w.is_zero() {
            return Err(BodyError::DegenerateIdentical);
        }
        let perp = w.perp();
        for c in [perp.clone(), QPoint::new(-perp.x, -perp.y)] {
            let in_arc = !lo.cross(&c).is_negative() && !c.cross(hi).is_negative();
            if in_arc && !found.iter().any(|f| same_direction(f, &c)) {
                found.push(c);
            }
        }
    }
    let mut out: Vec<f64> = found.iter().map(|c| angle_of(c.to_f64())).collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Sign changes of `h₁ − h₂` on a grid refined by bisection, plus tangential
/// zeros found as grid-local minima of `|h₁ − h₂|` refined by golden-section search.
fn numeric_pair(b1: &PlanarBody, b2: &PlanarBody, cfg: &BodyConfig) -> Result<Vec<f64>, BodyError> {
    let grid = cfg.crossing_grid;
    let diff = |t: f64| {
        let u = unit(t);
        support(b1, u) - support(b2, u)
    };
    let d: Vec<f64> = support_table(b1, grid).iter().zip(support_table(b2, grid)).map(|(a, b)| a - b).collect();
    let flat = |k: usize| d[k % grid].abs() <= cfg.tangency_tol;
    if (0..grid).any(|k| (0..4).all(|j| flat(k + j))) {
        return Err(BodyError::DegenerateIdentical);
    }
    let step = TAU / grid as f64;
    let mut roots = Vec::new();
    for k in 0..grid {
        let (a, b) = (d[k], d[(k + 1) % grid]);
        let t0 = grid_angle(k, grid);
        if a == 0.0 {
            roots.push(t0);
        } else if b != 0.0 && (a < 0.0) != (b < 0.0) {
            roots.push(bisect(&diff, t0, t0 + step, a, cfg.root_tol));
        } else {
            let prev = d[(k + grid - 1) % grid];
            let same_sign = (prev < 0.0) == (a < 0.0) && (b < 0.0) == (a < 0.0);
            if same_sign && a.abs() <= prev.abs() && a.abs() <= b.abs() {
                let (t, v) = golden_min(|t| diff(t).abs(), t0 - step, t0 + step, 80);
                if v <= cfg.tangency_tol {
                    roots.push(t);
                }
            }
        }
    }
    let mut roots: Vec<f64> = roots.into_iter().map(|t| t.rem_euclid(TAU)).collect();
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
    if roots.len() > 1 && roots[0] + TAU - roots[roots.len() - 1] <= 1e-9 {
        roots.pop();
    }
    Ok(roots)
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, f_lo: f64, tol: f64) -> f64 {
    let neg = f_lo < 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn cfg() -> BodyConfig {
        BodyConfig::default()
    }

    #[test]
    fn separated_unit_circles() {
        let r = common_supporting_directions(&disk(0.0, 0.0, 1.0), &disk(3.0, 0.0, 1.0), &cfg()).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] - FRAC_PI_2).abs() < 1e-12 && (r[1] - 3.0 * FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn concentric_circles_never_cross() {
        assert!(common_supporting_directions(&disk(0.0, 0.0, 1.0), &disk(0.0, 0.0, 2.0), &cfg()).unwrap().is_empty());
        assert_eq!(
            common_supporting_directions(&disk(1.0, 1.0, 1.0), &disk(1.0, 1.0, 1.0), &cfg()),
            Err(BodyError::DegenerateIdentical)
        );
    }

    #[test]
    fn internally_tangent_circles_cross_once() {
        let r = common_supporting_directions(&disk(0.0, 0.0, 2.0), &disk(1.0, 0.0, 1.0), &cfg()).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].abs() < 1e-12);
    }

    #[test]
    fn numeric_matches_analytic_for_circles() {
        let e = PlanarBody::ellipse([3.0, 1.0], 1.5, 1.5, 0.2).unwrap();
        let num = common_supporting_directions(&disk(0.0, 0.0, 1.0), &e, &cfg()).unwrap();
        let exact = circle_pair(&Circle::new([0.0, 0.0], 1.0).unwrap(), &Circle::new([3.0, 1.0], 1.5).unwrap()).unwrap();
        assert_eq!(num.len(), exact.len());
        for (a, b) in num.iter().zip(&exact) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn numeric_detects_tangency() {
        let e = PlanarBody::ellipse([1.0, 0.0], 1.0, 1.0, 0.0).unwrap();
        let r = common_supporting_directions(&disk(0.0, 0.0, 2.0), &e, &cfg()).unwrap();
        assert_eq!(r.len(), 1, "{r:?}");
        assert!(r[0].abs() < 1e-6 || (r[0] - TAU).abs() < 1e-6);
    }

    #[test]
    fn crossed_ellipses_have_four_crossings() {
        let a = PlanarBody::ellipse([0.0, 0.0], 3.0, 1.0, 0.0).unwrap();
        let b = PlanarBody::ellipse([0.0, 0.0], 3.0, 1.0, FRAC_PI_2).unwrap();
        let r = common_supporting_directions(&a, &b, &cfg()).unwrap();
        let expected = [PI / 4.0, 3.0 * PI / 4.0, 5.0 * PI / 4.0, 7.0 * PI / 4.0];
        assert_eq!(r.len(), 4);
        for (x, y) in r.iter().zip(expected) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn identical_ellipses_are_degenerate() {
        let a = PlanarBody::ellipse([0.0, 0.0], 3.0, 1.0, 0.0).unwrap();
        assert_eq!(common_supporting_directions(&a, &a, &cfg()), Err(BodyError::DegenerateIdentical));
    }

    #[test]
    fn polygon_pairs() {
        // translates along x: crossings straight up and down
        let r = common_supporting_directions(&square(0, 0, 1), &square(3, 0, 1), &cfg()).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] - FRAC_PI_2).abs() < 1e-15 && (r[1] - 3.0 * FRAC_PI_2).abs() < 1e-15);
        // nested squares never cross
        assert!(common_supporting_directions(&square(0, 0, 4), &square(1, 1, 1), &cfg()).unwrap().is_empty());
        // sharing a corner with overlapping normal cones
        assert_eq!(
            common_supporting_directions(&square(0, 0, 2), &square(1, 1, 1), &cfg()),
            Err(BodyError::DegenerateIdentical)
        );
    }

    #[test]
    fn polygon_exact_agrees_with_numeric_on_diagonal_shift() {
        let (a, b) = (square(0, 0, 2), square(3, 1, 2));
        let exact = common_supporting_directions(&a, &b, &cfg()).unwrap();
        let numeric = numeric_pair(&a, &b, &cfg()).unwrap();
        assert_eq!(exact.len(), numeric.len());
        for (x, y) in exact.iter().zip(&numeric) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn pairwise_reports_indices() {
        let fam = BodyFamily::unlabeled(vec![disk(0.0, 0.0, 1.0), disk(3.0, 0.0, 1.0), disk(0.0, 0.0, 1.0)]);
        assert_eq!(pairwise_crossings(&fam, &cfg()), Err(BodyError::InfiniteContactSuspected { first: 0, second: 2 }));
    }

    proptest! {
        #[test]
        fn circle_pairs_cross_at_most_twice(
            x in -5.0..5.0f64, y in -5.0..5.0f64, r1 in 0.1..3.0f64, r2 in 0.1..3.0f64,
        ) {
            prop_assume!(x.hypot(y) > 1e-6);
            let r = common_supporting_directions(&disk(0.0, 0.0, r1), &disk(x, y, r2), &cfg()).unwrap();
            prop_assert!(r.len() <= 2);
            for t in r {
                let u = unit(t);
                prop_assert!((r1 - (x * u[0] + y * u[1] + r2)).abs() < 1e-9);
            }
        }

        #[test]
        fn ellipse_pairs_cross_at_most_four_times(
            x in -4.0..4.0f64, y in -4.0..4.0f64,
            a1 in 0.5..3.0f64, f1 in 0.2..0.9f64, t1 in 0.0..3.1f64,
            a2 in 0.5..3.0f64, f2 in 0.2..0.9f64, t2 in 0.0..3.1f64,
        ) {
            let e1 = PlanarBody::ellipse([0.0, 0.0], a1, a1 * f1, t1).unwrap();
            let e2 = PlanarBody::ellipse([x, y], a2, a2 * f2, t2).unwrap();
            let r = common_supporting_directions(&e1, &e2, &cfg()).unwrap();
            prop_assert!(r.len() <= 4, "{:?}", r);
        }
    }
}
