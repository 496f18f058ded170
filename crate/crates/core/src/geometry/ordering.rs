use super::{ConvexGeometry, GeometryError, GroundSet, SetFamily, DEFAULT_EXHAUSTIVE_CAP};
use crate::subset::Subset;

/// A list of total orders on a ground set.
///
/// Each order is stored as a permutation listing element indices from least
/// to greatest, so `orders[i][0]` is the minimum of the `i`-th order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingFamily {
    ground: GroundSet,
    orders: Vec<Vec<usize>>,
    // places[i][x] = 1-based position of x in order i
    places: Vec<Vec<usize>>,
}

impl OrderingFamily {
    pub fn new(ground: GroundSet, orders: Vec<Vec<usize>>) -> Result<Self, GeometryError> {
        if orders.is_empty() {
            return Err(GeometryError::NoOrderings);
        }
        let n = ground.len();
        let mut places = Vec::with_capacity(orders.len());
        for (k, order) in orders.iter().enumerate() {
            let mut place = vec![0usize; n];
            if order.len() != n {
                return Err(GeometryError::NotAPermutation { order: k, n });
            }
            for (pos, &x) in order.iter().enumerate() {
                if x >= n || place[x] != 0 {
                    return Err(GeometryError::NotAPermutation { order: k, n });
                }
                place[x] = pos + 1;
            }
            places.push(place);
        }
        Ok(OrderingFamily { ground, orders, places })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    /// Number of orders `m`.
    pub fn m(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    /// 1-based position of element `x` in order `i`.
    pub fn place(&self, i: usize, x: usize) -> usize {
        self.places[i][x]
    }

    /// `x` strictly precedes `y` in order `i`.
    pub fn precedes(&self, i: usize, x: usize, y: usize) -> bool {
        self.places[i][x] < self.places[i][y]
    }

    /// Each order repeated `s` times consecutively (`s·m` orders in total).
    pub fn duplicated(&self, s: usize) -> Self {
        assert!(s >= 1);
        let orders = self.orders.iter().flat_map(|o| std::iter::repeat_n(o.clone(), s)).collect();
        OrderingFamily::new(self.ground.clone(), orders).expect("copies of valid orders")
    }

    /// Cycles through the orders until there are at least `target` of them.
    pub fn padded_to(&self, target: usize) -> Self {
        if self.m() >= target {
            return self.clone();
        }
        let orders = (0..target).map(|k| self.orders[k % self.m()].clone()).collect();
        OrderingFamily::new(self.ground.clone(), orders).expect("copies of valid orders")
    }

    /// Drops repeated orders, keeping first occurrences.
    pub fn deduplicated(&self) -> Self {
        let mut orders: Vec<Vec<usize>> = Vec::new();
        for o in &self.orders {
            if !orders.contains(o) {
                orders.push(o.clone());
            }
        }
        OrderingFamily::new(self.ground.clone(), orders).expect("subset of valid orders")
    }

    /// `below[i][y]`: the set of elements strictly before `y` in order `i`.
    fn below_masks(&self) -> Vec<Vec<Subset>> {
        self.orders
            .iter()
            .map(|order| {
                let mut below = vec![Subset::EMPTY; self.n()];
                let mut acc = Subset::EMPTY;
                for &x in order {
                    below[x] = acc;
                    acc = acc.with(x);
                }
                below
            })
            .collect()
    }
}

/// The geometry generated by a family of orders: `X` is convex iff `X = ∅` or
/// every `y ∉ X` lies above all of `X` in at least one of the orders.
pub fn geometry_from_orderings(orderings: &OrderingFamily) -> Result<ConvexGeometry, GeometryError> {
    let n = orderings.n();
    if n > DEFAULT_EXHAUSTIVE_CAP {
        return Err(GeometryError::GroundTooLarge { n, cap: DEFAULT_EXHAUSTIVE_CAP });
    }
    let below = orderings.below_masks();
    let full = Subset::full(n);
    let members = Subset::all(n)
        .filter(|&x| {
            x.is_empty()
                || full.difference(x).iter().all(|y| below.iter().any(|b| x.is_subset_of(b[y])))
        })
        .collect();
    let family = SetFamily::new(orderings.ground().clone(), members)?;
    Ok(ConvexGeometry::new_unchecked(family))
}

#[cfg(test)]
mod tests {
    use super::super::{check_axioms, fixtures::*};
    use super::*;

    fn family(n: usize, orders: Vec<Vec<usize>>) -> OrderingFamily {
        OrderingFamily::new(GroundSet::alphabetic(n), orders).unwrap()
    }

    #[test]
    fn single_chain_gives_down_sets() {
        let g = geometry_from_orderings(&family(3, vec![vec![0, 1, 2]])).unwrap();
        assert_eq!(g, chain3());
    }

    #[test]
    fn opposite_chains_give_collinear_geometry() {
        let g = geometry_from_orderings(&family(3, vec![vec![0, 1, 2], vec![2, 1, 0]])).unwrap();
        assert_eq!(g, collinear3());
    }

    #[test]
    fn ground_always_convex() {
        let g = geometry_from_orderings(&family(4, vec![vec![3, 1, 0, 2], vec![0, 2, 1, 3]])).unwrap();
        assert!(g.is_convex(Subset::full(4)));
        assert!(check_axioms(g.family()).valid());
    }

    #[test]
    fn places_are_one_based() {
        let f = family(3, vec![vec![2, 0, 1]]);
        assert_eq!(f.place(0, 2), 1);
        assert_eq!(f.place(0, 0), 2);
        assert_eq!(f.place(0, 1), 3);
        assert!(f.precedes(0, 2, 1));
    }

    #[test]
    fn rejects_non_permutations() {
        let g = GroundSet::alphabetic(3);
        assert_eq!(
            OrderingFamily::new(g.clone(), vec![vec![0, 0, 1]]),
            Err(GeometryError::NotAPermutation { order: 0, n: 3 })
        );
        assert_eq!(
            OrderingFamily::new(g.clone(), vec![vec![0, 1]]),
            Err(GeometryError::NotAPermutation { order: 0, n: 3 })
        );
        assert_eq!(OrderingFamily::new(g, vec![]), Err(GeometryError::NoOrderings));
    }

    #[test]
    fn duplication_and_padding() {
        let f = family(3, vec![vec![0, 1, 2], vec![2, 1, 0]]);
        let d = f.duplicated(2);
        assert_eq!(d.m(), 4);
        assert_eq!(d.orders()[1], vec![0, 1, 2]);
        assert_eq!(d.orders()[2], vec![2, 1, 0]);
        let p = f.padded_to(5);
        assert_eq!(p.m(), 5);
        assert_eq!(p.orders()[4], vec![0, 1, 2]);
        assert_eq!(p.deduplicated(), f);
        assert_eq!(geometry_from_orderings(&d).unwrap(), geometry_from_orderings(&f).unwrap());
    }
}
