use std::f64::consts::TAU;

use super::crossings::{pairwise_crossings, PairCrossings};
use super::hull::geometry_from_bodies;
use super::support::{support, unit};
use super::{BodyConfig, BodyError, BodyFamily};
use crate::dimension::cdim;
use crate::geometry::{GroundSet, OrderingFamily};

/// Orderings of the bodies by support value at one regular direction per
/// interval between consecutive crossing directions.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    /// Distinct orderings, least support first.
    pub orderings: OrderingFamily,
    /// Total number of common supporting directions over all pairs.
    pub crossings: usize,
    /// Largest number of common supporting directions of a single pair.
    pub max_pair_crossings: usize,
    /// The regular direction (as an angle) chosen in each interval.
    pub directions: Vec<f64>,
    pub pairs: Vec<PairCrossings>,
}

const FRACTIONS: [f64; 5] = [0.5, 0.25, 0.75, 0.125, 0.875];

pub fn sweep_orderings(family: &BodyFamily, cfg: &BodyConfig) -> Result<SweepResult, BodyError> {
    let n = family.len();
    let pairs = pairwise_crossings(family, cfg)?;
    let mut angles: Vec<f64> = pairs.iter().flat_map(|p| p.angles.iter().copied()).collect();
    angles.sort_by(f64::total_cmp);
    let intervals: Vec<(f64, f64)> = if angles.is_empty() {
        vec![(0.0, TAU)]
    } else {
        (0..angles.len())
            .map(|i| (angles[i], if i + 1 < angles.len() { angles[i + 1] } else { angles[0] + TAU }))
            .filter(|(a, b)| b - a > 1e-12)
            .collect()
    };
    let tie_tol = 1e-12 * (1.0 + family.radius_bound());
    let mut orders: Vec<Vec<usize>> = Vec::new();
    let mut directions = Vec::new();
    for (from, to) in intervals {
        let regular = FRACTIONS.iter().find_map(|f| {
            let theta = from + f * (to - from);
            let u = unit(theta);
            let h: Vec<f64> = family.bodies().iter().map(|b| support(b, u)).collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| h[i].total_cmp(&h[j]));
            let tie = order.windows(2).any(|w| h[w[1]] - h[w[0]] <= tie_tol);
            (!tie).then_some((theta.rem_euclid(TAU), order))
        });
        let (theta, order) = regular.ok_or(BodyError::NoRegularDirection { from, to })?;
        directions.push(theta);
        if !orders.contains(&order) {
            orders.push(order);
        }
    }
    let ground = GroundSet::new(family.labels().iter().cloned())?;
    Ok(SweepResult {
        orderings: OrderingFamily::new(ground, orders)?,
        crossings: pairs.iter().map(PairCrossings::count).sum(),
        max_pair_crossings: pairs.iter().map(PairCrossings::count).max().unwrap_or(0),
        directions,
        pairs,
    })
}

/// `cdim ≤ k · n(n−1)/2` for `k` the largest pairwise crossing count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub n: usize,
    pub k: usize,
    pub cdim: usize,
    pub bound: usize,
}

impl BoundCheck {
    /// `None` for fewer than two bodies, where there are no pairs to count.
    pub fn holds(&self) -> Option<bool> {
        (self.n >= 2).then_some(self.cdim <= self.bound)
    }
}

pub fn cdim_upper_bound_check(family: &BodyFamily, cfg: &BodyConfig) -> Result<BoundCheck, BodyError> {
    let n = family.len();
    let k = pairwise_crossings(family, cfg)?.iter().map(PairCrossings::count).max().unwrap_or(0);
    let g = geometry_from_bodies(family, cfg)?;
    Ok(BoundCheck { n, k, cdim: cdim(&g), bound: k * n * n.saturating_sub(1) / 2 })
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;
    use crate::geometry::geometry_from_orderings;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> BodyConfig {
        BodyConfig::default()
    }

    #[test]
    fn single_body() {
        let fam = BodyFamily::unlabeled(vec![disk(0.0, 0.0, 1.0)]);
        let r = sweep_orderings(&fam, &cfg()).unwrap();
        assert_eq!(r.orderings.orders(), &[vec![0]]);
        assert_eq!(r.crossings, 0);
        let b = cdim_upper_bound_check(&fam, &cfg()).unwrap();
        assert_eq!(b.holds(), None);
        assert_eq!(b.cdim, 1);
    }

    #[test]
    fn two_circles() {
        let fam = BodyFamily::unlabeled(vec![disk(0.0, 0.0, 1.0), disk(3.0, 0.0, 1.0)]);
        let r = sweep_orderings(&fam, &cfg()).unwrap();
        assert_eq!(r.crossings, 2);
        assert_eq!(r.orderings.m(), 2);
        let b = cdim_upper_bound_check(&fam, &cfg()).unwrap();
        assert_eq!((b.k, b.cdim, b.bound, b.holds()), (2, 2, 2, Some(true)));
    }

    #[test]
    fn three_generic_circles() {
        let fam = BodyFamily::unlabeled(vec![disk(0.0, 0.0, 1.0), disk(4.0, 0.5, 1.3), disk(1.5, 3.0, 0.7)]);
        let r = sweep_orderings(&fam, &cfg()).unwrap();
        assert!(r.orderings.m() <= 6);
        assert_eq!(geometry_from_orderings(&r.orderings).unwrap(), geometry_from_bodies(&fam, &cfg()).unwrap());
    }

    #[test]
    fn nested_pair_breaks_the_literal_bound() {
        // no crossings at all, yet one body still has to be ordered below the other
        let fam = BodyFamily::unlabeled(vec![disk(0.0, 0.0, 2.0), disk(0.5, 0.0, 1.0)]);
        let b = cdim_upper_bound_check(&fam, &cfg()).unwrap();
        assert_eq!((b.k, b.cdim, b.bound, b.holds()), (0, 1, 0, Some(false)));
    }

    #[test]
    fn sweep_reproduces_geometry_on_random_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.random_range(2..=5);
            let bodies = (0..n)
                .map(|_| disk(rng.random_range(-6.0..6.0), rng.random_range(-6.0..6.0), rng.random_range(0.3..2.0)))
                .collect();
            let fam = BodyFamily::unlabeled(bodies);
            let r = sweep_orderings(&fam, &cfg()).unwrap();
            let g = geometry_from_bodies(&fam, &cfg()).unwrap();
            assert_eq!(geometry_from_orderings(&r.orderings).unwrap(), g);
            let b = cdim_upper_bound_check(&fam, &cfg()).unwrap();
            assert!(r.crossings <= b.k * n * (n - 1) / 2);
            if b.k > 0 {
                assert_eq!(b.holds(), Some(true));
            }
        }
    }
}
