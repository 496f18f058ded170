//! Planar representation of ordering-generated convex geometries.
//!
//! For orderings `≼_1, ..., ≼_m` (`m ≥ 3`) and directions `v_1, ..., v_m`
//! around a regular `m`-gon, element `x` with places `j_i(x)` gets the points
//! `F¹_i(x) = ρ¹ v_i` and `F²_i(x) = ρ² v_i` with radii
//! `1 + (2j−1)ε/(2N)` and `1 + 2jε/(2N)`, `N = max(m, n)`. Any convex body
//! pinched between the polygons `P¹(x) ⊆ K(x) ⊆ P²(x)` then yields a family
//! whose hull closure reproduces the geometry.
//!
//! All directions, radii and polygons are rationals. In exact mode the
//! directions are rational points of the unit circle near `2πi/m`; otherwise
//! they are the nearest doubles to `(cos, sin)`, still compared exactly.

use num::{One, Signed};
use std::f64::consts::{PI, TAU};

use crate::bodies::{
    geometry_from_bodies, semialgebraic_body, BodyConfig, BodyError, BodyFamily, ConvexPolygon, Halfplane,
    PlanarBody, SemialgebraicOptions,
};
use crate::exact::{convex_hull, in_convex_hull, rational_approx, rational_floor, to_f64, QPoint, Rational};
use crate::geometry::{ConvexGeometry, GeometryError, OrderingFamily};
use crate::subset::Subset;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum PlanarError {
    #[error("the construction needs at least 3 directions, got {0}")]
    TooFewDirections(usize),
    #[error("cannot fit {have} orderings into {target} directions")]
    TooManyOrderings { have: usize, target: usize },
    #[error("frame has {frame} directions but there are {orderings} orderings")]
    FrameMismatch { frame: usize, orderings: usize },
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(String),
    #[error("line through F_{direction}({element}) with normal v_{direction} does not separate F_{other_direction}({other_element}); epsilon is too large")]
    LinePropertyViolated { direction: usize, element: usize, other_direction: usize, other_element: usize },
    #[error("segments of elements {first} and {second} overlap along direction {direction}")]
    DisjointViolated { direction: usize, first: usize, second: usize },
    #[error("could not fit a semi-algebraic body between the polygons of element {element}")]
    ShapeContainmentFailed { element: usize },
    #[error("geometry has {geometry} elements, representation has {representation}")]
    SizeMismatch { geometry: usize, representation: usize },
    #[error(transparent)]
    Body(#[from] BodyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// `min(|sec(2π/m)| − 1, 1) / 2`.
pub fn default_epsilon(m: usize) -> f64 {
    let bound = (1.0 / (TAU / m as f64).cos()).abs() - 1.0;
    bound.min(1.0) / 2.0
}

/// Directions `v_1, ..., v_m` (index `i − 1` holds `v_i`) and the width `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionFrame {
    directions: Vec<QPoint>,
    epsilon: Rational,
    exact: bool,
}

impl DirectionFrame {
    /// Nearest doubles to `(cos 2πi/m, sin 2πi/m)` with the default `ε`.
    pub fn float(m: usize) -> Result<Self, PlanarError> {
        check_m(m)?;
        let directions = (1..=m)
            .map(|i| {
                let t = TAU * i as f64 / m as f64;
                QPoint::from_f64(t.cos(), t.sin()).expect("finite")
            })
            .collect();
        let epsilon = crate::exact::rational_from_f64(default_epsilon(m)).expect("finite");
        Ok(DirectionFrame { directions, epsilon, exact: false })
    }

    pub fn with_epsilon(mut self, epsilon: Rational) -> Result<Self, PlanarError> {
        if !epsilon.is_positive() {
            return Err(PlanarError::InvalidEpsilon(crate::exact::format_rational(&epsilon)));
        }
        self.epsilon = epsilon;
        Ok(self)
    }

    pub fn m(&self) -> usize {
        self.directions.len()
    }

    pub fn directions(&self) -> &[QPoint] {
        &self.directions
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Vertices of the regular polygon `R_m`, i.e. the directions themselves.
    pub fn regular_polygon(&self) -> Vec<QPoint> {
        self.directions.clone()
    }
}

fn check_m(m: usize) -> Result<(), PlanarError> {
    if m < 3 {
        Err(PlanarError::TooFewDirections(m))
    } else {
        Ok(())
    }
}

/// Rational unit vectors `((1 − t²), 2t) / (1 + t²)` with `t` a continued-fraction
/// approximation of `tan(πi/m)`, and `ε` the default rounded down to a multiple of `10⁻⁶`.
pub fn rational_frame(m: usize) -> Result<DirectionFrame, PlanarError> {
    check_m(m)?;
    let directions = (1..=m)
        .map(|i| {
            if 2 * i == m {
                return QPoint::from_ints(-1, 0);
            }
            let t = rational_approx((PI * i as f64 / m as f64).tan(), 1e-6);
            let t2 = &t * &t;
            let den = Rational::one() + &t2;
            QPoint::new((Rational::one() - &t2) / &den, (&t + &t) / &den)
        })
        .collect();
    let epsilon = rational_floor(default_epsilon(m), 1_000_000);
    Ok(DirectionFrame { directions, epsilon, exact: true })
}

/// The pinching polygons of one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinchedPair {
    pub element: usize,
    /// `j_i(x)` for each direction, 1-based.
    pub places: Vec<usize>,
    pub rho1: Vec<Rational>,
    pub rho2: Vec<Rational>,
    pub f1: Vec<QPoint>,
    pub f2: Vec<QPoint>,
}

impl PinchedPair {
    pub fn inner_polygon(&self) -> Result<ConvexPolygon, BodyError> {
        ConvexPolygon::new(self.f1.clone())
    }

    pub fn outer_polygon(&self) -> Result<ConvexPolygon, BodyError> {
        ConvexPolygon::new(self.f2.clone())
    }

    /// Vertices `(F¹_i + F²_i) / 2`.
    pub fn midpoints(&self) -> Vec<QPoint> {
        let half = Rational::new(1.into(), 2.into());
        self.f1.iter().zip(&self.f2).map(|(a, b)| a.add(b).scale(&half)).collect()
    }
}

/// Radii and points for every element, without validating the frame.
pub fn pinched_points(orderings: &OrderingFamily, frame: &DirectionFrame) -> Result<Vec<PinchedPair>, PlanarError> {
    let m = orderings.m();
    if frame.m() != m {
        return Err(PlanarError::FrameMismatch { frame: frame.m(), orderings: m });
    }
    let n = orderings.n();
    let big_n = Rational::from_integer((2 * m.max(n)).into());
    let step = frame.epsilon() / &big_n;
    let radius = |k: usize| Rational::one() + &step * Rational::from_integer(k.into());
    Ok((0..n)
        .map(|x| {
            let places: Vec<usize> = (0..m).map(|i| orderings.place(i, x)).collect();
            let rho1: Vec<Rational> = places.iter().map(|&j| radius(2 * j - 1)).collect();
            let rho2: Vec<Rational> = places.iter().map(|&j| radius(2 * j)).collect();
            let f1 = frame.directions().iter().zip(&rho1).map(|(v, r)| v.scale(r)).collect();
            let f2 = frame.directions().iter().zip(&rho2).map(|(v, r)| v.scale(r)).collect();
            PinchedPair { element: x, places, rho1, rho2, f1, f2 }
        })
        .collect())
}

/// [`pinched_points`] followed by exact checks of the separation and
/// disjointness properties the construction relies on.
pub fn build_pinched(orderings: &OrderingFamily, frame: &DirectionFrame) -> Result<Vec<PinchedPair>, PlanarError> {
    let pairs = pinched_points(orderings, frame)?;
    validate_line_property(frame, &pairs)?;
    validate_disjoint(&pairs)?;
    Ok(pairs)
}

/// For every `P = F^{1,2}_i(x)`, all points `F^{1,2}_k(y)` with `k ≠ i` lie in
/// the open halfplane `⟨·, v_i⟩ < ⟨P, v_i⟩`.
pub fn validate_line_property(frame: &DirectionFrame, pairs: &[PinchedPair]) -> Result<(), PlanarError> {
    for (i, v) in frame.directions().iter().enumerate() {
        let Some((x, lowest)) = pairs.iter().map(|p| (p.element, p.f1[i].dot(v))).min_by(|a, b| a.1.cmp(&b.1))
        else {
            return Ok(());
        };
        for p in pairs {
            for k in (0..frame.m()).filter(|&k| k != i) {
                if p.f1[k].dot(v) >= lowest || p.f2[k].dot(v) >= lowest {
                    return Err(PlanarError::LinePropertyViolated {
                        direction: i + 1,
                        element: x,
                        other_direction: k + 1,
                        other_element: p.element,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Along each direction the segments `F¹_i(x)F²_i(x)` of distinct elements are disjoint.
pub fn validate_disjoint(pairs: &[PinchedPair]) -> Result<(), PlanarError> {
    let m = pairs.first().map_or(0, |p| p.rho1.len());
    for i in 0..m {
        let mut by_radius: Vec<&PinchedPair> = pairs.iter().collect();
        by_radius.sort_by(|a, b| a.rho1[i].cmp(&b.rho1[i]));
        for w in by_radius.windows(2) {
            if w[0].rho2[i] >= w[1].rho1[i] {
                return Err(PlanarError::DisjointViolated {
                    direction: i + 1,
                    first: w[0].element,
                    second: w[1].element,
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ShapeMode {
    #[default]
    InnerPolygon,
    OuterPolygon,
    MidpointPolygon,
    Semialgebraic,
}

impl ShapeMode {
    pub const ALL: [ShapeMode; 4] =
        [ShapeMode::InnerPolygon, ShapeMode::OuterPolygon, ShapeMode::MidpointPolygon, ShapeMode::Semialgebraic];

    pub fn name(self) -> &'static str {
        match self {
            ShapeMode::InnerPolygon => "inner-polygon",
            ShapeMode::OuterPolygon => "outer-polygon",
            ShapeMode::MidpointPolygon => "midpoint-polygon",
            ShapeMode::Semialgebraic => "semialgebraic",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        ShapeMode::ALL.into_iter().find(|m| m.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanarOptions {
    /// Number of directions; orderings are repeated cyclically to fill them.
    /// Defaults to the number of orderings, at least 3.
    pub m: Option<usize>,
    /// Explicit `ε`. Without one, the default is halved until the frame validates.
    pub epsilon: Option<Rational>,
    pub exact: bool,
    pub shape: ShapeMode,
    /// Skip the separation and disjointness checks (and build polygons as hulls).
    pub skip_validation: bool,
    pub semialgebraic: SemialgebraicOptions,
}

impl Default for PlanarOptions {
    fn default() -> Self {
        PlanarOptions {
            m: None,
            epsilon: None,
            exact: true,
            shape: ShapeMode::InnerPolygon,
            skip_validation: false,
            semialgebraic: SemialgebraicOptions { min_samples: 720, max_chord_rel: 2e-3, max_samples: 1 << 14 },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanarRepresentation {
    pub frame: DirectionFrame,
    /// The orderings actually used, one per direction.
    pub orderings: OrderingFamily,
    pub pairs: Vec<PinchedPair>,
    pub shape: ShapeMode,
    /// `K(x)` for each element, labelled like the ground set.
    pub bodies: BodyFamily,
}

/// Orderings repeated cyclically to `m` (default: their count, at least 3).
pub fn fill_orderings(orderings: &OrderingFamily, m: Option<usize>) -> Result<OrderingFamily, PlanarError> {
    let target = m.unwrap_or(orderings.m()).max(3);
    if target < orderings.m() {
        return Err(PlanarError::TooManyOrderings { have: orderings.m(), target });
    }
    Ok(orderings.padded_to(target))
}

pub fn represent_planar(orderings: &OrderingFamily, opts: &PlanarOptions) -> Result<PlanarRepresentation, PlanarError> {
    let used = fill_orderings(orderings, opts.m)?;
    let m = used.m();
    let mut frame = if opts.exact { rational_frame(m)? } else { DirectionFrame::float(m)? };
    let pairs = if opts.skip_validation {
        if let Some(e) = &opts.epsilon {
            frame = frame.with_epsilon(e.clone())?;
        }
        pinched_points(&used, &frame)?
    } else if let Some(e) = &opts.epsilon {
        frame = frame.with_epsilon(e.clone())?;
        build_pinched(&used, &frame)?
    } else {
        let half = Rational::new(1.into(), 2.into());
        loop {
            match build_pinched(&used, &frame) {
                Ok(p) => break p,
                Err(PlanarError::LinePropertyViolated { .. }) if frame.epsilon > Rational::new(1.into(), (1u64 << 60).into()) => {
                    let e = frame.epsilon() * &half;
                    frame = frame.with_epsilon(e)?;
                }
                Err(e) => return Err(e),
            }
        }
    };
    let bodies = pairs
        .iter()
        .map(|p| choose_body(p, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let bodies = BodyFamily::new(used.ground().labels().to_vec(), bodies)?;
    Ok(PlanarRepresentation { frame, orderings: used, pairs, shape: opts.shape, bodies })
}

fn polygon(points: Vec<QPoint>, as_hull: bool) -> Result<PlanarBody, BodyError> {
    if as_hull {
        ConvexPolygon::hull_of(&points).map(PlanarBody::Polygon)
    } else {
        PlanarBody::polygon(points)
    }
}

fn choose_body(p: &PinchedPair, opts: &PlanarOptions) -> Result<PlanarBody, PlanarError> {
    let hull = opts.skip_validation;
    Ok(match opts.shape {
        ShapeMode::InnerPolygon => polygon(p.f1.clone(), hull)?,
        ShapeMode::OuterPolygon => polygon(p.f2.clone(), hull)?,
        ShapeMode::MidpointPolygon => polygon(p.midpoints(), hull)?,
        ShapeMode::Semialgebraic => semialgebraic_between(p, &opts.semialgebraic)?,
    })
}

/// Level set of the edge product of the midpoint polygon, with `α` shrunk
/// until the traced boundary contains `P¹` (it always lies inside `P²`).
fn semialgebraic_between(p: &PinchedPair, opts: &SemialgebraicOptions) -> Result<PlanarBody, PlanarError> {
    let mid = ConvexPolygon::new(p.midpoints())?;
    let halfplanes = Halfplane::from_polygon(&mid);
    let product = |q: &QPoint| -> f64 {
        let x = q.to_f64();
        halfplanes.iter().map(|h| h.eval(x)).product()
    };
    let mut alpha = 0.5 * p.f1.iter().map(product).fold(f64::INFINITY, f64::min);
    let outer = convex_hull(&p.f2);
    for _ in 0..30 {
        let boundary = semialgebraic_body(&halfplanes, alpha, opts)?;
        let verts: Vec<QPoint> =
            boundary.vertices().iter().map(|v| QPoint::from_f64(v[0], v[1]).expect("finite")).collect();
        let inside_outer = verts.iter().all(|v| in_convex_hull(&outer, v));
        let contains_inner = p.f1.iter().all(|f| inside_polyline(&verts, f));
        if inside_outer && contains_inner {
            return Ok(PlanarBody::Sampled(boundary));
        }
        alpha *= 0.5;
    }
    Err(PlanarError::ShapeContainmentFailed { element: p.element })
}

/// Closed containment in a counterclockwise convex polyline, exactly.
fn inside_polyline(verts: &[QPoint], p: &QPoint) -> bool {
    let n = verts.len();
    (0..n).all(|i| !verts[(i + 1) % n].sub(&verts[i]).cross(&p.sub(&verts[i])).is_negative())
}

/// Exact vertices of a body (sampled boundaries through their doubles).
fn body_vertices(body: &PlanarBody) -> Option<Vec<QPoint>> {
    match body {
        PlanarBody::Polygon(p) => Some(p.vertices().to_vec()),
        PlanarBody::Sampled(s) => s.vertices().iter().map(|v| QPoint::from_f64(v[0], v[1])).collect(),
        _ => None,
    }
}

/// First subset on which two geometries on the same ground set disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub subset: Subset,
    /// Whether the subset is convex in the abstract geometry (and so not in the derived one).
    pub convex_in_abstract: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsoReport {
    pub derived: ConvexGeometry,
    pub witness: Option<IsoWitness>,
}

impl IsoReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// First subset (in size-then-lexicographic order) convex in exactly one of the geometries.
pub fn first_disagreement(a: &ConvexGeometry, b: &ConvexGeometry) -> Option<IsoWitness> {
    let mut subsets: Vec<Subset> = Subset::all(a.n()).collect();
    crate::subset::canonicalize(&mut subsets);
    subsets
        .into_iter()
        .find(|&s| a.is_convex(s) != b.is_convex(s))
        .map(|subset| IsoWitness { subset, convex_in_abstract: a.is_convex(subset) })
}

/// Derives the geometry of `{K(x)}` and compares it with `geometry` under `x ↦ K(x)`.
pub fn verify_isomorphism_planar(
    geometry: &ConvexGeometry,
    rep: &PlanarRepresentation,
    cfg: &BodyConfig,
) -> Result<IsoReport, PlanarError> {
    if geometry.n() != rep.bodies.len() {
        return Err(PlanarError::SizeMismatch { geometry: geometry.n(), representation: rep.bodies.len() });
    }
    let derived = geometry_from_bodies(&rep.bodies, cfg)?;
    let witness = first_disagreement(geometry, &derived);
    Ok(IsoReport { derived, witness })
}

/// `P¹(x) ⊆ K(x) ⊆ P²(x)` and `R_m ⊆ K(x) ⊆ (1+ε)R_m` for every element, exactly.
pub fn verify_sandwich(rep: &PlanarRepresentation) -> bool {
    let r_m = rep.frame.regular_polygon();
    let scale = Rational::one() + rep.frame.epsilon();
    let outer_m: Vec<QPoint> = r_m.iter().map(|v| v.scale(&scale)).collect();
    rep.pairs.iter().zip(rep.bodies.bodies()).all(|(p, body)| {
        let Some(k) = body_vertices(body) else { return false };
        let in_k = |q: &QPoint| if body.as_polygon().is_some() { in_convex_hull(&k, q) } else { inside_polyline(&k, q) };
        let p2 = convex_hull(&p.f2);
        p.f1.iter().all(in_k)
            && k.iter().all(|v| in_convex_hull(&p2, v))
            && r_m.iter().all(in_k)
            && k.iter().all(|v| in_convex_hull(&outer_m, v))
    })
}

/// Hausdorff distance from a polygon or sampled boundary containing the
/// origin to the unit disk: `max(max |v| − 1, 1 − min edge distance)`.
pub fn disk_distance(body: &PlanarBody) -> Option<f64> {
    let v: Vec<[f64; 2]> = body_vertices(body)?.iter().map(QPoint::to_f64).collect();
    let n = v.len();
    let far = v.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
    let near = (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
            (a[0] * b[1] - a[1] * b[0]).abs() / dx.hypot(dy)
        })
        .fold(f64::INFINITY, f64::min);
    Some((far - 1.0).max(1.0 - near).max(0.0))
}

/// `max_x d_H(K(x), unit disk)` after repeating every ordering `s` times, for each `s` in `copies`.
/// The orderings are first filled to the directions they would use on their own
/// (see [`fill_orderings`]), so `s` copies always mean `s` times as many directions.
pub fn duplication_closeness(
    orderings: &OrderingFamily,
    copies: &[usize],
    opts: &PlanarOptions,
) -> Result<Vec<f64>, PlanarError> {
    let base = fill_orderings(orderings, opts.m)?;
    copies
        .iter()
        .map(|&s| {
            let rep = represent_planar(&base.duplicated(s), &PlanarOptions { m: None, ..opts.clone() })?;
            Ok(rep.bodies.bodies().iter().filter_map(disk_distance).fold(0.0, f64::max))
        })
        .collect()
}

impl PlanarRepresentation {
    pub fn epsilon_f64(&self) -> f64 {
        to_f64(self.frame.epsilon())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{fixtures::*, geometry_from_orderings, GroundSet};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn fam(n: usize, orders: Vec<Vec<usize>>) -> OrderingFamily {
        OrderingFamily::new(GroundSet::alphabetic(n), orders).unwrap()
    }

    #[test]
    fn default_epsilon_values() {
        assert!((default_epsilon(3) - 0.5).abs() < 1e-12);
        assert!((default_epsilon(4) - 0.5).abs() < 1e-12);
        assert!((default_epsilon(6) - 0.5).abs() < 1e-12);
        assert!((default_epsilon(8) - (2f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn rational_frame_is_on_the_unit_circle() {
        let f = rational_frame(4).unwrap();
        let axes = [QPoint::from_ints(0, 1), QPoint::from_ints(-1, 0), QPoint::from_ints(0, -1), QPoint::from_ints(1, 0)];
        assert_eq!(f.directions(), &axes);
        for m in 3..=9 {
            let f = rational_frame(m).unwrap();
            for (i, v) in f.directions().iter().enumerate() {
                assert_eq!(v.dot(v), Rational::one());
                let [x, y] = v.to_f64();
                let target = TAU * (i + 1) as f64 / m as f64;
                let err = (y.atan2(x) - target).rem_euclid(TAU);
                assert!(err.min(TAU - err) < 1e-3, "m={m} i={i}");
            }
        }
        assert_eq!(rational_frame(3).unwrap().epsilon(), &q(1, 2));
        assert_eq!(rational_frame(2), Err(PlanarError::TooFewDirections(2)));
    }

    #[test]
    fn radii_example() {
        let f = fam(3, vec![vec![0, 1, 2], vec![2, 1, 0], vec![1, 0, 2]]);
        let pairs = build_pinched(&f, &rational_frame(3).unwrap()).unwrap();
        assert_eq!(pairs[0].places[0], 1);
        assert_eq!(pairs[0].rho1[0], q(13, 12));
        assert_eq!(pairs[0].rho2[0], q(7, 6));
        for p in &pairs {
            assert!(p.rho1.iter().zip(&p.rho2).all(|(a, b)| a < b));
        }
        for i in 0..3 {
            for x in &pairs {
                for y in &pairs {
                    if x.places[i] < y.places[i] {
                        assert!(x.rho2[i] < y.rho1[i]);
                    }
                }
            }
        }
    }

    #[test]
    fn line_property_catches_large_epsilon() {
        let f = fam(2, vec![vec![0, 1]; 8]);
        let frame = rational_frame(8).unwrap().with_epsilon(q(4, 1)).unwrap();
        assert!(matches!(build_pinched(&f, &frame), Err(PlanarError::LinePropertyViolated { .. })));
        let ok = rational_frame(8).unwrap();
        assert!(build_pinched(&f, &ok).is_ok());
    }

    #[test]
    fn free_pair() {
        let f = fam(2, vec![vec![0, 1], vec![1, 0]]);
        let rep = represent_planar(&f, &PlanarOptions::default()).unwrap();
        assert_eq!(rep.frame.m(), 3);
        let g = geometry_from_orderings(&f).unwrap();
        assert_eq!(g, ConvexGeometry::free(GroundSet::alphabetic(2)));
        assert!(verify_isomorphism_planar(&g, &rep, &BodyConfig::default()).unwrap().holds());
    }

    #[test]
    fn chain_round_trip() {
        let f = fam(3, vec![vec![0, 1, 2]]);
        let rep = represent_planar(&f, &PlanarOptions::default()).unwrap();
        let report = verify_isomorphism_planar(&chain3(), &rep, &BodyConfig::default()).unwrap();
        assert!(report.holds());
        assert_eq!(report.derived, chain3());
    }

    #[test]
    fn collinear_round_trip() {
        let f = fam(3, vec![vec![0, 1, 2], vec![2, 1, 0]]);
        let g = geometry_from_orderings(&f).unwrap();
        assert_eq!(g, collinear3());
        let rep = represent_planar(&f, &PlanarOptions::default()).unwrap();
        assert!(verify_isomorphism_planar(&g, &rep, &BodyConfig::default()).unwrap().holds());
        assert!(verify_sandwich(&rep));
    }

    #[test]
    fn shapes_agree() {
        let f = fam(3, vec![vec![0, 1, 2], vec![2, 1, 0], vec![1, 2, 0]]);
        let g = geometry_from_orderings(&f).unwrap();
        for shape in ShapeMode::ALL {
            for exact in [true, false] {
                let rep = represent_planar(&f, &PlanarOptions { shape, exact, ..Default::default() }).unwrap();
                let report = verify_isomorphism_planar(&g, &rep, &BodyConfig::default()).unwrap();
                assert!(report.holds(), "{shape:?} exact={exact}: {:?}", report.witness);
                assert!(verify_sandwich(&rep), "{shape:?}");
            }
        }
    }

    #[test]
    fn random_families_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.random_range(1..=5);
            let m = rng.random_range(1..=3);
            let orders = (0..m)
                .map(|_| {
                    let mut o: Vec<usize> = (0..n).collect();
                    o.shuffle(&mut rng);
                    o
                })
                .collect();
            let f = fam(n, orders);
            let g = geometry_from_orderings(&f).unwrap();
            let rep = represent_planar(&f, &PlanarOptions::default()).unwrap();
            assert!(verify_isomorphism_planar(&g, &rep, &BodyConfig::default()).unwrap().holds());
            assert!(verify_sandwich(&rep));
        }
    }

    #[test]
    fn duplication_approaches_the_disk() {
        let f = fam(3, vec![vec![0, 1, 2], vec![2, 1, 0]]);
        let d = duplication_closeness(&f, &[1, 2, 4], &PlanarOptions::default()).unwrap();
        assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
    }

    #[test]
    fn disk_distance_of_square() {
        let sq = PlanarBody::polygon(vec![
            QPoint::from_ints(1, 0),
            QPoint::from_ints(0, 1),
            QPoint::from_ints(-1, 0),
            QPoint::from_ints(0, -1),
        ])
        .unwrap();
        assert!((disk_distance(&sq).unwrap() - (1.0 - 0.5f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn explicit_epsilon_is_not_shrunk() {
        let f = fam(2, vec![vec![0, 1]; 8]);
        let opts = PlanarOptions { epsilon: Some(q(4, 1)), ..Default::default() };
        assert!(matches!(represent_planar(&f, &opts), Err(PlanarError::LinePropertyViolated { .. })));
    }

    #[test]
    fn too_many_orderings_for_m() {
        let f = fam(2, vec![vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 0]]);
        let opts = PlanarOptions { m: Some(3), ..Default::default() };
        assert_eq!(represent_planar(&f, &opts), Err(PlanarError::TooManyOrderings { have: 4, target: 3 }));
    }

    #[test]
    fn oversized_epsilon_can_break_the_isomorphism() {
        let orders = vec![
            vec![2, 1, 3, 0],
            vec![1, 0, 3, 2],
            vec![1, 0, 2, 3],
            vec![0, 3, 1, 2],
            vec![3, 1, 2, 0],
            vec![0, 3, 1, 2],
            vec![1, 3, 0, 2],
        ];
        let f = fam(4, orders);
        let g = geometry_from_orderings(&f).unwrap();
        let opts = PlanarOptions { epsilon: Some(q(4, 1)), skip_validation: true, ..Default::default() };
        let rep = represent_planar(&f, &opts).unwrap();
        let report = verify_isomorphism_planar(&g, &rep, &BodyConfig::default()).unwrap();
        assert_eq!(report.witness, Some(IsoWitness { subset: Subset::singleton(2), convex_in_abstract: true }));
        let checked = PlanarOptions { skip_validation: false, ..opts };
        assert!(matches!(represent_planar(&f, &checked), Err(PlanarError::LinePropertyViolated { .. })));
        assert!(verify_isomorphism_planar(&g, &represent_planar(&f, &PlanarOptions::default()).unwrap(), &BodyConfig::default())
            .unwrap()
            .holds());
    }
}
