//! Representation of a convex geometry by axis-parallel ellipsoids close to the unit ball.
//!
//! With `d` orderings and `f(1) = s`, `f(i+1) = √((f(i)² + d − 1)/d)`, element
//! `g` becomes `Φ(g) = E(f(d+1−j_1(g)), ..., f(d+1−j_d(g)))`, where `j_i(g)` is
//! its place in ordering `i`. The orderings are first repeated cyclically to
//! `d' = max(m, n)` so every index is at least 1.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::geometry::{ClosureTable, ConvexGeometry, GeometryError, OrderingFamily, SetFamily};
use crate::planar::{first_disagreement, IsoWitness};
use crate::subset::Subset;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum EllipsoidError {
    #[error("scale s must exceed 1, got {0}")]
    InvalidScale(f64),
    #[error("semi-axes must be positive")]
    InvalidSemiaxes,
    #[error("dimension and length must be at least 1")]
    InvalidDimension,
    #[error("geometry has {geometry} elements, representation has {representation}")]
    SizeMismatch { geometry: usize, representation: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// `f(1), ..., f(N)` for dimension `d` and scale `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct FSequence {
    d: usize,
    s: f64,
    values: Vec<f64>,
    excess: Vec<f64>,
}

pub fn f_sequence(d: usize, s: f64, len: usize) -> Result<FSequence, EllipsoidError> {
    if !(s > 1.0 && s.is_finite()) {
        return Err(EllipsoidError::InvalidScale(s));
    }
    if d == 0 || len == 0 {
        return Err(EllipsoidError::InvalidDimension);
    }
    let mut values = vec![s];
    let df = d as f64;
    while values.len() < len {
        let prev = values[values.len() - 1];
        values.push(((prev * prev + df - 1.0) / df).sqrt());
    }
    // f(i)² − 1 = (s² − 1) / d^(i−1), and f − 1 = (f² − 1) / (1 + f) keeps full relative precision
    let mut square_excess = (s - 1.0) * (s + 1.0);
    let mut excess = Vec::with_capacity(len);
    for _ in 0..len {
        excess.push(square_excess / (1.0 + (1.0 + square_excess).sqrt()));
        square_excess /= df;
    }
    Ok(FSequence { d, s, values, excess })
}

impl FSequence {
    /// `f(i)`, 1-based.
    pub fn f(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `f(i) − 1`, 1-based, accurate even where `f(i)` rounds to `1.0`.
    pub fn excess(&self, i: usize) -> f64 {
        self.excess[i - 1]
    }

    /// `|d(f(i+1)² − 1) − (f(i)² − 1)|`.
    pub fn identity_residual(&self, i: usize) -> f64 {
        let (a, b) = (self.f(i), self.f(i + 1));
        (self.d as f64 * (b * b - 1.0) - (a * a - 1.0)).abs()
    }

    pub fn max_identity_residual(&self) -> f64 {
        (1..self.len()).map(|i| self.identity_residual(i)).fold(0.0, f64::max)
    }

    /// All values exceed 1 and strictly decrease (constant when `d = 1`), judged on `f − 1`.
    pub fn is_monotone(&self) -> bool {
        self.excess.iter().all(|&v| v > 0.0)
            && self.excess.windows(2).all(|w| if self.d == 1 { w[1] == w[0] } else { w[1] < w[0] })
    }
}

/// `E(a_1, ..., a_d) = {x : Σ x_i²/a_i² ≤ 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisEllipsoid {
    semiaxes: Vec<f64>,
}

impl AxisEllipsoid {
    pub fn new(semiaxes: Vec<f64>) -> Result<Self, EllipsoidError> {
        if semiaxes.is_empty() || !semiaxes.iter().all(|&a| a > 0.0 && a.is_finite()) {
            return Err(EllipsoidError::InvalidSemiaxes);
        }
        Ok(AxisEllipsoid { semiaxes })
    }

    pub fn dim(&self) -> usize {
        self.semiaxes.len()
    }

    pub fn semiaxes(&self) -> &[f64] {
        &self.semiaxes
    }
}

/// `h(E, x) = √(Σ a_i² x_i²)`.
pub fn ellipsoid_support(e: &AxisEllipsoid, x: &[f64]) -> f64 {
    e.semiaxes.iter().zip(x).map(|(a, xi)| a * a * xi * xi).sum::<f64>().sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EllipsoidRepresentation {
    /// The orderings actually used, `d'` of them.
    pub orderings: OrderingFamily,
    pub f: FSequence,
    /// `d' + 1 − j_i(g)` per element and axis.
    pub indices: Vec<Vec<usize>>,
    pub ellipsoids: Vec<AxisEllipsoid>,
}

impl EllipsoidRepresentation {
    pub fn dim(&self) -> usize {
        self.orderings.m()
    }

    pub fn s(&self) -> f64 {
        self.f.s()
    }

    pub fn labels(&self) -> &[String] {
        self.orderings.ground().labels()
    }
}

pub fn represent_ellipsoids(orderings: &OrderingFamily, s: f64) -> Result<EllipsoidRepresentation, EllipsoidError> {
    let n = orderings.n();
    let d = orderings.m().max(n).max(1);
    let used = orderings.padded_to(d);
    let f = f_sequence(d, s, d)?;
    let indices: Vec<Vec<usize>> = (0..n).map(|g| (0..d).map(|i| d + 1 - used.place(i, g)).collect()).collect();
    let ellipsoids = indices
        .iter()
        .map(|idx| AxisEllipsoid::new(idx.iter().map(|&k| f.f(k)).collect()))
        .collect::<Result<_, _>>()?;
    Ok(EllipsoidRepresentation { orderings: used, f, indices, ellipsoids })
}

/// `max_g max_i a_i(g) − 1`: every `Φ(g)` lies between the unit ball and the ball of this radius plus one.
pub fn ball_closeness(rep: &EllipsoidRepresentation) -> f64 {
    rep.ellipsoids.iter().flat_map(|e| e.semiaxes.iter()).map(|a| a - 1.0).fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleOptions {
    pub samples: usize,
    pub seed: u64,
    pub tau: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { samples: 20_000, seed: 42, tau: 1e-9 }
    }
}

/// A step of the verification that did not go through.
#[derive(Clone, Debug, PartialEq)]
pub enum EllipsoidFailure {
    /// `subset` is convex but no axis separates `element` from it.
    NoSeparatingAxis { subset: Subset, element: usize },
    /// `element` lies in the closure of `subset` but is not dominated along every axis.
    NoDominatingWitness { subset: Subset, element: usize },
    /// The semi-axis chain bounding `Φ(element)` by the witnesses fails on `axis`.
    AnalyticChain { subset: Subset, element: usize, axis: usize },
    /// A sampled direction where `Φ(element)` sticks out of the witnesses' hull.
    OracleViolation { subset: Subset, element: usize, direction: Vec<f64>, margin: f64 },
    /// The geometry derived from sampled containment differs from the abstract one.
    DerivedMismatch(IsoWitness),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EllipsoidReport {
    pub failures: Vec<EllipsoidFailure>,
    pub convex_checked: usize,
    pub nonconvex_checked: usize,
    pub max_identity_residual: f64,
    /// Smallest `max_i h(Φ(h_i), x) − h(Φ(g), x)` seen by the oracle.
    pub min_oracle_margin: f64,
    /// The geometry of sampled hull containment on the ellipsoids.
    pub derived: ConvexGeometry,
}

impl EllipsoidReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Seeded unit directions of `ℝ^d` (normalised Gaussian vectors) followed by `±e_i`.
pub fn sample_directions(d: usize, samples: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples + 2 * d);
    while out.len() < samples {
        let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            out.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    for i in 0..d {
        for sign in [1.0, -1.0] {
            let mut e = vec![0.0; d];
            e[i] = sign;
            out.push(e);
        }
    }
    out
}

/// Support values of each ellipsoid on each direction, and of the hull of
/// every subset (as the pointwise maximum).
struct SupportTable {
    n: usize,
    k: usize,
    hull: Vec<Vec<f64>>,
}

impl SupportTable {
    fn new(rep: &EllipsoidRepresentation, dirs: &[Vec<f64>]) -> Self {
        let n = rep.ellipsoids.len();
        let single: Vec<Vec<f64>> =
            rep.ellipsoids.iter().map(|e| dirs.iter().map(|x| ellipsoid_support(e, x)).collect()).collect();
        let k = dirs.len();
        let mut hull = vec![Vec::new(); 1 << n];
        hull[0] = vec![f64::NEG_INFINITY; k];
        for bits in 1..1usize << n {
            let low = bits.trailing_zeros() as usize;
            let rest = &hull[bits & (bits - 1)];
            hull[bits] = rest.iter().zip(&single[low]).map(|(a, b)| a.max(*b)).collect();
        }
        SupportTable { n, k, hull }
    }

    fn of(&self, s: Subset) -> &[f64] {
        &self.hull[s.bits() as usize]
    }

    /// Smallest `h(hull of s, x) − h(Φ(g), x)` and its direction index.
    fn margin(&self, g: usize, s: Subset) -> (f64, usize) {
        let (hs, hg) = (self.of(s), self.of(Subset::singleton(g)));
        (0..self.k).map(|j| (hs[j] - hg[j], j)).fold((f64::INFINITY, 0), |a, b| if b.0 < a.0 { b } else { a })
    }

    fn closure(&self, x: Subset, tau: f64) -> Subset {
        if x.is_empty() {
            return x;
        }
        (0..self.n).filter(|&g| !x.contains(g) && self.margin(g, x).0 >= -tau).fold(x, Subset::with)
    }
}

/// Checks both directions of the isomorphism `g ↦ Φ(g)` on every subset.
///
/// Convex `X`, `g ∉ X`: some axis `i` has `f(d'+1−j_i(g))` above every
/// `f(d'+1−j_i(h))`, `h ∈ X`, so the halfspace `x_i < f(d'+1−j_i(g))` holds
/// `Φ(X)` but not `Φ(g)`.
///
/// Non-convex `X`, `g` in its closure: per axis a witness `h_i ∈ X` above `g`,
/// the identity `d'(f(k)² − 1) = f(k−1)² − 1` and `f(k−1) ≤ a_i(h_i)` bound
/// `Φ(g)` by the witnesses; the sampled oracle then compares support values.
pub fn verify_isomorphism_ellipsoid(
    geometry: &ConvexGeometry,
    rep: &EllipsoidRepresentation,
    opts: &OracleOptions,
) -> Result<EllipsoidReport, EllipsoidError> {
    let n = geometry.n();
    if n != rep.ellipsoids.len() {
        return Err(EllipsoidError::SizeMismatch { geometry: n, representation: rep.ellipsoids.len() });
    }
    let d = rep.dim();
    let dirs = sample_directions(d, opts.samples, opts.seed);
    let table = SupportTable::new(rep, &dirs);
    let f = |k: usize| rep.f.f(k);
    let idx = &rep.indices;
    let mut failures = Vec::new();
    let (mut convex_checked, mut nonconvex_checked) = (0, 0);
    let mut min_oracle_margin = f64::INFINITY;
    let tol = 1e-12;
    for x in Subset::all(n) {
        if geometry.is_convex(x) {
            convex_checked += 1;
            for g in (0..n).filter(|&g| !x.contains(g)) {
                let separated = (0..d).any(|i| x.iter().all(|h| f(idx[g][i]) > f(idx[h][i])));
                if !separated {
                    failures.push(EllipsoidFailure::NoSeparatingAxis { subset: x, element: g });
                }
            }
            continue;
        }
        nonconvex_checked += 1;
        for g in geometry.closure(x).difference(x).iter() {
            let witnesses: Option<Vec<usize>> = (0..d)
                .map(|i| x.iter().filter(|&h| rep.orderings.precedes(i, g, h)).max_by_key(|&h| rep.orderings.place(i, h)))
                .collect();
            let Some(witnesses) = witnesses else {
                failures.push(EllipsoidFailure::NoDominatingWitness { subset: x, element: g });
                continue;
            };
            for (i, &h) in witnesses.iter().enumerate() {
                let k = idx[g][i];
                let chain = k >= 2
                    && f(k) < f(k - 1)
                    && f(k - 1) <= f(idx[h][i])
                    && rep.f.identity_residual(k - 1) < tol
                    && rep.ellipsoids[h].semiaxes().iter().all(|&a| a >= 1.0);
                if !chain {
                    failures.push(EllipsoidFailure::AnalyticChain { subset: x, element: g, axis: i });
                }
            }
            let hs: Subset = witnesses.into_iter().collect();
            let (margin, j) = table.margin(g, hs);
            min_oracle_margin = min_oracle_margin.min(margin);
            if margin < -opts.tau {
                failures.push(EllipsoidFailure::OracleViolation {
                    subset: x,
                    element: g,
                    direction: dirs[j].clone(),
                    margin,
                });
            }
        }
    }
    let closure = ClosureTable::try_tabulate(n, |x| Ok::<_, GeometryError>(table.closure(x, opts.tau)))?;
    let derived = ConvexGeometry::new(SetFamily::new(geometry.ground().clone(), closure.fixed_points())?)?;
    if let Some(w) = first_disagreement(geometry, &derived) {
        failures.push(EllipsoidFailure::DerivedMismatch(w));
    }
    Ok(EllipsoidReport {
        failures,
        convex_checked,
        nonconvex_checked,
        max_identity_residual: rep.f.max_identity_residual(),
        min_oracle_margin,
        derived,
    })
}

/// Sampled hull-containment closure of the ellipsoid family, tabulated on all subsets.
pub fn ellipsoid_closure_table(rep: &EllipsoidRepresentation, opts: &OracleOptions) -> ClosureTable {
    let dirs = sample_directions(rep.dim(), opts.samples, opts.seed);
    let table = SupportTable::new(rep, &dirs);
    ClosureTable::tabulate(&crate::geometry::FnClosure::new(rep.ellipsoids.len(), |x| table.closure(x, opts.tau)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::{cdim_with_witness, crosspolytope_geometry, generating_orderings};
    use crate::geometry::{check_anti_exchange, fixtures::*, geometry_from_orderings, GroundSet};
    use proptest::prelude::*;

    fn fam(n: usize, orders: Vec<Vec<usize>>) -> OrderingFamily {
        OrderingFamily::new(GroundSet::alphabetic(n), orders).unwrap()
    }

    fn quick() -> OracleOptions {
        OracleOptions { samples: 2000, ..Default::default() }
    }

    #[test]
    fn f_sequence_values() {
        let f = f_sequence(2, 2.0, 3).unwrap();
        assert_eq!(f.f(1), 2.0);
        assert!((f.f(2) - 2.5f64.sqrt()).abs() < 1e-15);
        assert!((f.f(3) - 1.75f64.sqrt()).abs() < 1e-15);
        let one = f_sequence(1, 1.7, 5).unwrap();
        assert!(one.values().iter().all(|&v| v == 1.7));
        assert!(one.is_monotone());
        assert_eq!(f_sequence(2, 1.0, 3), Err(EllipsoidError::InvalidScale(1.0)));
    }

    #[test]
    fn f_sequence_ratio_is_one_over_d() {
        for d in 2..=6 {
            let f = f_sequence(d, 2.0, 20).unwrap();
            assert!(f.is_monotone());
            assert!(f.max_identity_residual() < 1e-12);
            for i in 1..=20 {
                assert!((f.excess(i) - (f.f(i) - 1.0)).abs() < 1e-15);
            }
            for i in 1..10 {
                let r = (f.f(i + 1).powi(2) - 1.0) / (f.f(i).powi(2) - 1.0);
                assert!((r - 1.0 / d as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn support_values() {
        let ball = AxisEllipsoid::new(vec![1.0; 3]).unwrap();
        assert!((ellipsoid_support(&ball, &[0.6, 0.0, 0.8]) - 1.0).abs() < 1e-15);
        let e = AxisEllipsoid::new(vec![2.0, 1.0]).unwrap();
        assert_eq!(ellipsoid_support(&e, &[1.0, 0.0]), 2.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((ellipsoid_support(&e, &[r, r]) - 2.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn chain_representation() {
        let f = fam(3, vec![vec![0, 1, 2]]);
        let rep = represent_ellipsoids(&f, 1.5).unwrap();
        assert_eq!(rep.dim(), 3);
        let fs = &rep.f;
        assert_eq!(rep.ellipsoids[0].semiaxes(), &[fs.f(3); 3]);
        assert_eq!(rep.ellipsoids[2].semiaxes(), &[1.5; 3]);
        let report = verify_isomorphism_ellipsoid(&chain3(), &rep, &quick()).unwrap();
        assert!(report.holds(), "{:?}", report.failures);
        assert_eq!(report.convex_checked + report.nonconvex_checked, 8);
    }

    #[test]
    fn swapped_pair() {
        let f = fam(2, vec![vec![0, 1], vec![1, 0]]);
        let rep = represent_ellipsoids(&f, 2.0).unwrap();
        let fs = &rep.f;
        assert_eq!(rep.ellipsoids[0].semiaxes(), &[fs.f(2), fs.f(1)]);
        assert_eq!(rep.ellipsoids[1].semiaxes(), &[fs.f(1), fs.f(2)]);
        let g = geometry_from_orderings(&f).unwrap();
        let report = verify_isomorphism_ellipsoid(&g, &rep, &quick()).unwrap();
        assert!(report.holds());
        assert_eq!(report.nonconvex_checked, 0);
    }

    #[test]
    fn collinear_geometry() {
        let f = fam(3, vec![vec![0, 1, 2], vec![2, 1, 0]]);
        let rep = represent_ellipsoids(&f, 1.5).unwrap();
        let report = verify_isomorphism_ellipsoid(&collinear3(), &rep, &quick()).unwrap();
        assert!(report.holds(), "{:?}", report.failures);
        assert!(report.min_oracle_margin > 0.0);
        assert!(check_anti_exchange(&ellipsoid_closure_table(&rep, &quick())).unwrap().valid());
    }

    #[test]
    fn crosspolytope_through_its_copoint_orderings() {
        let g = crosspolytope_geometry(2).unwrap();
        let (_, antichain) = cdim_with_witness(&g);
        assert_eq!(antichain.width, 4);
        let f = generating_orderings(&g);
        assert_eq!(f.m(), 4);
        assert_eq!(geometry_from_orderings(&f).unwrap(), g);
        let rep = represent_ellipsoids(&f, 1.5).unwrap();
        assert_eq!(rep.dim(), f.m().max(5));
        let report = verify_isomorphism_ellipsoid(&g, &rep, &quick()).unwrap();
        assert!(report.holds(), "{:?}", report.failures);
    }

    #[test]
    fn closeness() {
        let f = fam(3, vec![vec![0, 1, 2], vec![2, 1, 0]]);
        for s in [1.01, 1.1, 1.5] {
            let c = ball_closeness(&represent_ellipsoids(&f, s).unwrap());
            assert!(c <= s - 1.0 + 1e-15 && c > 0.0);
        }
        assert_eq!(represent_ellipsoids(&f, 1.0), Err(EllipsoidError::InvalidScale(1.0)));
    }

    #[test]
    fn mismatched_geometry_is_reported() {
        let f = fam(3, vec![vec![0, 1, 2]]);
        let rep = represent_ellipsoids(&f, 1.5).unwrap();
        let report = verify_isomorphism_ellipsoid(&collinear3(), &rep, &quick()).unwrap();
        assert!(!report.holds());
    }

    proptest! {
        #[test]
        fn injective_and_between_balls(perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(), s in 1.01..3.0f64) {
            let f = fam(4, vec![vec![0, 1, 2, 3], perm]);
            let rep = represent_ellipsoids(&f, s).unwrap();
            for (a, e) in rep.ellipsoids.iter().enumerate() {
                prop_assert!(e.semiaxes().iter().all(|&x| x > 1.0 && x <= s));
                for b in &rep.ellipsoids[a + 1..] {
                    prop_assert_ne!(e, b);
                }
            }
        }
    }
}
