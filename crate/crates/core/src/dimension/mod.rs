//! Copoints, convex dimension, and geometries of rational point sets.
//!
//! The convex dimension (the least number of orders generating a geometry)
//! equals the width of the copoint poset, which is what [`cdim`] computes.

mod points;
mod width;

pub use points::{geometry_from_points, RationalPointConfig, MAX_DIM, MAX_POINTS};
pub use width::{chain_cover, is_antichain, poset_width, Antichain};

use num::{One, Zero};

use crate::exact::Rational;
use crate::geometry::{ConvexGeometry, GeometryError, OrderingFamily};
use crate::subset::Subset;

pub const MAX_CROSSPOLYTOPE_DIM: usize = 4;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum DimensionError {
    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("{n} points exceed the exhaustive cap of {cap}")]
    TooManyPoints { n: usize, cap: usize },
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("point {point} does not have {expected} coordinates")]
    CoordinateCount { point: usize, expected: usize },
    #[error("{labels} labels for {points} points")]
    LabelCount { labels: usize, points: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A convex set that is inclusion-maximal among convex sets avoiding `attached`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Copoint {
    pub set: Subset,
    pub attached: usize,
}

/// All copoints of a geometry, ordered by inclusion of their sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopointPoset {
    pub copoints: Vec<Copoint>,
}

impl CopointPoset {
    /// Distinct copoint sets in canonical order.
    pub fn sets(&self) -> Vec<Subset> {
        let mut v: Vec<Subset> = self.copoints.iter().map(|c| c.set).collect();
        crate::subset::canonicalize(&mut v);
        v
    }

    pub fn attached_to(&self, x: usize) -> Vec<Subset> {
        self.copoints.iter().filter(|c| c.attached == x).map(|c| c.set).collect()
    }

    /// `a ≤ b` in the poset.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.copoints[a].set.is_subset_of(self.copoints[b].set)
    }

    pub fn width(&self) -> Antichain {
        poset_width(&self.sets())
    }
}

/// For each element `x`, the maximal convex sets not containing `x`.
pub fn copoints(geometry: &ConvexGeometry) -> CopointPoset {
    let mut out = Vec::new();
    for x in 0..geometry.n() {
        let avoiding: Vec<Subset> = geometry.members().iter().copied().filter(|m| !m.contains(x)).collect();
        for &a in &avoiding {
            if !avoiding.iter().any(|b| a.is_proper_subset_of(*b)) {
                out.push(Copoint { set: a, attached: x });
            }
        }
    }
    CopointPoset { copoints: out }
}

/// Convex dimension, computed as the width of the copoint poset.
pub fn cdim(geometry: &ConvexGeometry) -> usize {
    copoints(geometry).width().width
}

/// Copoint width together with the witnessing antichain.
pub fn cdim_with_witness(geometry: &ConvexGeometry) -> (CopointPoset, Antichain) {
    let poset = copoints(geometry);
    let antichain = poset.width();
    (poset, antichain)
}

/// `cdim` orderings generating the geometry.
///
/// Each chain of a minimum chain cover of the copoints is refined to a maximal
/// chain of convex sets `∅ ⊂ X_1 ⊂ ... ⊂ X_n = E`; the order in which the
/// elements enter is one ordering.
pub fn generating_orderings(geometry: &ConvexGeometry) -> OrderingFamily {
    let n = geometry.n();
    let chains = chain_cover(&copoints(geometry).sets());
    let chains = if chains.is_empty() { vec![vec![]] } else { chains };
    let orders = chains
        .into_iter()
        .map(|chain| {
            let mut order = Vec::with_capacity(n);
            let mut cur = Subset::EMPTY;
            for target in chain.into_iter().chain([Subset::full(n)]) {
                while cur != target {
                    let e = target
                        .difference(cur)
                        .iter()
                        .find(|&e| geometry.is_convex(cur.with(e)))
                        .expect("intervals of a convex geometry are graded");
                    order.push(e);
                    cur = cur.with(e);
                }
            }
            order
        })
        .collect();
    OrderingFamily::new(geometry.ground().clone(), orders).expect("permutations")
}

/// `{0, +e_1, -e_1, ..., +e_n, -e_n}` in `ℚ^n`; element order is
/// `0, +e1, -e1, +e2, -e2, ...`.
pub fn crosspolytope_config(n: usize) -> Result<RationalPointConfig, DimensionError> {
    if n == 0 || n > MAX_CROSSPOLYTOPE_DIM {
        return Err(DimensionError::DimensionCap { dim: n, cap: MAX_CROSSPOLYTOPE_DIM });
    }
    let mut labels = vec!["0".to_owned()];
    let mut points = vec![vec![Rational::zero(); n]];
    for i in 0..n {
        for (sign, v) in [("+", Rational::one()), ("-", -Rational::one())] {
            let mut p = vec![Rational::zero(); n];
            p[i] = v;
            labels.push(format!("{sign}e{}", i + 1));
            points.push(p);
        }
    }
    RationalPointConfig::new(n, labels, points)
}

pub fn crosspolytope_geometry(n: usize) -> Result<ConvexGeometry, DimensionError> {
    geometry_from_points(&crosspolytope_config(n)?)
}

/// Element index of `+e_i` (`positive`) or `-e_i` in [`crosspolytope_geometry`], `i` 1-based.
pub fn crosspolytope_vertex(i: usize, positive: bool) -> usize {
    2 * i - usize::from(positive)
}

/// Checks the copoint structure of the crosspolytope geometry: the copoints of
/// the origin are exactly the `2^n` sign-choice sets `{ε_1 e_1, ..., ε_n e_n}`,
/// and the only copoint of each `±e_i` is its complement.
pub fn verify_crosspolytope_copoints(n: usize) -> Result<bool, DimensionError> {
    let g = crosspolytope_geometry(n)?;
    let poset = copoints(&g);
    let total = 2 * n + 1;
    let mut expected: Vec<Subset> = (0..1u64 << n)
        .map(|signs| (1..=n).map(|i| crosspolytope_vertex(i, signs >> (i - 1) & 1 == 0)).collect())
        .collect();
    crate::subset::canonicalize(&mut expected);
    let mut of_origin = poset.attached_to(0);
    crate::subset::canonicalize(&mut of_origin);
    if of_origin != expected {
        return Ok(false);
    }
    Ok((1..total).all(|v| poset.attached_to(v) == vec![Subset::full(total).without(v)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures::*;
    use crate::geometry::{check_anti_exchange, check_axioms, geometry_from_orderings, GroundSet, OrderingFamily};

    /// Copoints by testing every subset directly against the definition.
    fn brute_copoints(g: &ConvexGeometry) -> Vec<(Subset, usize)> {
        let n = g.n();
        let mut out = Vec::new();
        for x in 0..n {
            for a in Subset::all(n) {
                if a.contains(x) || !g.is_convex(a) {
                    continue;
                }
                let maximal = Subset::all(n).all(|b| b.contains(x) || !g.is_convex(b) || !a.is_proper_subset_of(b));
                if maximal {
                    out.push((a, x));
                }
            }
        }
        out
    }

    fn pairs(p: &CopointPoset) -> Vec<(Subset, usize)> {
        p.copoints.iter().map(|c| (c.set, c.attached)).collect()
    }

    #[test]
    fn collinear_copoints() {
        let g = collinear3();
        let p = copoints(&g);
        let s = |l: &[&str]| g.ground().subset(l);
        assert_eq!(pairs(&p), vec![(s(&["b", "c"]), 0), (s(&["a"]), 1), (s(&["c"]), 1), (s(&["a", "b"]), 2)]);
        assert_eq!(pairs(&p), brute_copoints(&g));
        assert_eq!(cdim(&g), 2);
        let (_, w) = cdim_with_witness(&g);
        assert_eq!(w.sets, vec![s(&["a", "b"]), s(&["b", "c"])]);
    }

    #[test]
    fn free_geometry_copoints() {
        let g = ConvexGeometry::free(GroundSet::alphabetic(3));
        let p = copoints(&g);
        assert_eq!(pairs(&p), brute_copoints(&g));
        assert_eq!(p.copoints.len(), 3);
        assert!(p.copoints.iter().all(|c| c.set.len() == 2 && !c.set.contains(c.attached)));
        assert_eq!(cdim(&g), 3);
    }

    #[test]
    fn chain_copoints() {
        let g = chain3();
        let p = copoints(&g);
        assert_eq!(
            pairs(&p),
            vec![(Subset::EMPTY, 0), (Subset::from_indices([0]), 1), (Subset::from_indices([0, 1]), 2)]
        );
        assert_eq!(cdim(&g), 1);
    }

    #[test]
    fn poset_order_is_inclusion() {
        let p = copoints(&collinear3());
        assert!(p.le(1, 3)); // {a} ⊆ {a,b}
        assert!(!p.le(0, 3));
    }

    #[test]
    fn crosspolytope_examples() {
        let g1 = crosspolytope_geometry(1).unwrap();
        assert_eq!(g1.members().len(), 7);
        assert_eq!(cdim(&g1), 2);
        let g2 = crosspolytope_geometry(2).unwrap();
        assert_eq!(cdim(&g2), 4);
        // {e1, e2} is convex; closure of {e1, -e1} contains the origin
        let e1 = crosspolytope_vertex(1, true);
        let m1 = crosspolytope_vertex(1, false);
        let e2 = crosspolytope_vertex(2, true);
        assert!(g2.is_convex(Subset::from_indices([e1, e2])));
        assert!(g2.closure(Subset::from_indices([e1, m1])).contains(0));
        assert!(check_axioms(g2.family()).valid());
        assert!(check_anti_exchange(&g2).unwrap().valid());
    }

    #[test]
    fn crosspolytope_copoint_structure() {
        for n in 1..=3 {
            assert!(verify_crosspolytope_copoints(n).unwrap(), "n = {n}");
        }
        let g = crosspolytope_geometry(1).unwrap();
        let mut c0 = copoints(&g).attached_to(0);
        crate::subset::canonicalize(&mut c0);
        assert_eq!(c0, vec![Subset::singleton(1), Subset::singleton(2)]);
    }

    #[test]
    fn crosspolytope_dimension_cap() {
        assert!(matches!(crosspolytope_geometry(5), Err(DimensionError::DimensionCap { .. })));
        assert!(matches!(crosspolytope_geometry(0), Err(DimensionError::DimensionCap { .. })));
    }

    #[test]
    fn generating_orderings_realize_cdim() {
        for g in [collinear3(), chain3(), crosspolytope_geometry(1).unwrap(), crosspolytope_geometry(2).unwrap()] {
            let f = generating_orderings(&g);
            assert_eq!(f.m(), cdim(&g));
            assert_eq!(geometry_from_orderings(&f).unwrap(), g);
        }
        let free = ConvexGeometry::free(GroundSet::alphabetic(3));
        assert_eq!(geometry_from_orderings(&generating_orderings(&free)).unwrap(), free);
    }

    #[test]
    fn cdim_bounded_by_generating_orders() {
        let f = OrderingFamily::new(GroundSet::alphabetic(4), vec![vec![0, 1, 2, 3], vec![3, 0, 2, 1]]).unwrap();
        let g = geometry_from_orderings(&f).unwrap();
        assert!(cdim(&g) <= 2);
    }

    #[test]
    fn copoints_grow_when_attached_point_added() {
        let g = crosspolytope_geometry(2).unwrap();
        for c in copoints(&g).copoints {
            assert!(g.is_convex(c.set));
            assert!(c.set.is_proper_subset_of(g.closure(c.set.with(c.attached))));
        }
    }
}
