use num::{Signed, Zero};

use super::DimensionError;
use crate::exact::Rational;
use crate::geometry::{ConvexGeometry, GroundSet, SetFamily};
use crate::subset::Subset;

pub const MAX_POINTS: usize = 12;
pub const MAX_DIM: usize = 6;

/// Labelled points with exact rational coordinates in `ℚ^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPointConfig {
    dim: usize,
    labels: Vec<String>,
    points: Vec<Vec<Rational>>,
}

impl RationalPointConfig {
    pub fn new(dim: usize, labels: Vec<String>, points: Vec<Vec<Rational>>) -> Result<Self, DimensionError> {
        if dim > MAX_DIM {
            return Err(DimensionError::DimensionCap { dim, cap: MAX_DIM });
        }
        if labels.len() != points.len() {
            return Err(DimensionError::LabelCount { labels: labels.len(), points: points.len() });
        }
        if let Some(i) = points.iter().position(|p| p.len() != dim) {
            return Err(DimensionError::CoordinateCount { point: i, expected: dim });
        }
        for i in 0..points.len() {
            if let Some(j) = (i + 1..points.len()).find(|&j| points[i] == points[j]) {
                return Err(DimensionError::DuplicatePoint { first: i, second: j });
            }
        }
        Ok(RationalPointConfig { dim, labels, points })
    }

    /// Integer coordinates with labels `p0`, `p1`, ...
    pub fn from_ints(dim: usize, coords: &[&[i64]]) -> Result<Self, DimensionError> {
        let labels = (0..coords.len()).map(|i| format!("p{i}")).collect();
        let points = coords
            .iter()
            .map(|c| c.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        RationalPointConfig::new(dim, labels, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether point `p` lies in the convex hull of the points indexed by `set`.
    pub fn in_hull(&self, p: usize, set: Subset) -> bool {
        hull_witnesses(self, p).iter().any(|w| w.is_subset_of(set)) || set.contains(p)
    }
}

/// The geometry on the points where `X` is convex iff no point outside `X`
/// lies in the convex hull of `X`.
pub fn geometry_from_points(config: &RationalPointConfig) -> Result<ConvexGeometry, DimensionError> {
    let n = config.len();
    if n > MAX_POINTS {
        return Err(DimensionError::TooManyPoints { n, cap: MAX_POINTS });
    }
    let witnesses: Vec<Vec<Subset>> = (0..n).map(|p| hull_witnesses(config, p)).collect();
    let full = Subset::full(n);
    let members = Subset::all(n)
        .filter(|&x| {
            full.difference(x).iter().all(|p| !witnesses[p].iter().any(|w| w.is_subset_of(x)))
        })
        .collect();
    let ground = GroundSet::new(config.labels.iter().cloned())?;
    Ok(ConvexGeometry::new(SetFamily::new(ground, members)?)?)
}

/// Inclusion-minimal affinely independent sets of other points (at most `d+1`
/// of them) whose hull contains point `p`. By Carathéodory, `p ∈ conv(X)` iff
/// some witness is contained in `X`.
fn hull_witnesses(config: &RationalPointConfig, p: usize) -> Vec<Subset> {
    let n = config.len();
    let others = Subset::full(n).without(p);
    let mut found: Vec<Subset> = Vec::new();
    let mut candidates: Vec<Subset> =
        others.subsets().filter(|t| !t.is_empty() && t.len() <= config.dim + 1).collect();
    candidates.sort_by_key(|t| t.len());
    for t in candidates {
        if found.iter().any(|w| w.is_subset_of(t)) {
            continue;
        }
        let pts: Vec<&[Rational]> = t.iter().map(|i| config.points[i].as_slice()).collect();
        if in_simplex(&pts, &config.points[p]) {
            found.push(t);
        }
    }
    found
}

/// Whether `p` is a convex combination of the affinely independent `pts`.
/// Returns `false` when `pts` is affinely dependent.
fn in_simplex(pts: &[&[Rational]], p: &[Rational]) -> bool {
    let d = p.len();
    let k = pts.len() - 1;
    // columns t_j - t_0 (j = 1..k), right-hand side p - t_0
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|r| {
            let mut row: Vec<Rational> = (1..=k).map(|j| &pts[j][r] - &pts[0][r]).collect();
            row.push(&p[r] - &pts[0][r]);
            row
        })
        .collect();
    let Some(lambda) = solve_exact(&mut rows, k) else {
        return false;
    };
    let sum: Rational = lambda.iter().sum();
    lambda.iter().all(|l| !l.is_negative()) && !(Rational::from_integer(1.into()) - sum).is_negative()
}

/// Gaussian elimination on the augmented `rows` (`k` unknowns). Returns the
/// unique solution, or `None` if the system is inconsistent or the columns
/// are dependent.
fn solve_exact(rows: &mut [Vec<Rational>], k: usize) -> Option<Vec<Rational>> {
    let d = rows.len();
    let mut pivot_row = 0;
    for col in 0..k {
        let r = (pivot_row..d).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, r);
        let pivot = rows[pivot_row][col].clone();
        for v in &mut rows[pivot_row][col..=k] {
            *v /= &pivot;
        }
        let pivot_vals = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row[col..=k].iter_mut().zip(&pivot_vals[col..=k]) {
                    *v -= &f * p;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|c| rows[c][k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{check_anti_exchange, check_axioms};

    #[test]
    fn collinear_points() {
        let cfg = RationalPointConfig::from_ints(1, &[&[0], &[1], &[2]]).unwrap();
        let g = geometry_from_points(&cfg).unwrap();
        let lists: Vec<Vec<usize>> = g.members().iter().map(|m| m.indices()).collect();
        assert_eq!(lists, vec![vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![0, 1, 2]]);
    }

    #[test]
    fn collinear_points_embedded_in_plane() {
        let cfg = RationalPointConfig::from_ints(2, &[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        let g = geometry_from_points(&cfg).unwrap();
        assert_eq!(g.members().len(), 7);
        assert!(!g.is_convex(Subset::from_indices([0, 2])));
    }

    #[test]
    fn affinely_independent_points_are_free() {
        let cfg = RationalPointConfig::from_ints(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(geometry_from_points(&cfg).unwrap().members().len(), 8);
    }

    #[test]
    fn interior_point_of_triangle() {
        let cfg = RationalPointConfig::from_ints(2, &[&[0, 0], &[3, 0], &[0, 3], &[1, 1]]).unwrap();
        let g = geometry_from_points(&cfg).unwrap();
        assert!(!g.is_convex(Subset::from_indices([0, 1, 2])));
        assert!(g.is_convex(Subset::from_indices([0, 1, 3])));
        assert!(cfg.in_hull(3, Subset::from_indices([0, 1, 2])));
        assert!(!cfg.in_hull(3, Subset::from_indices([0, 1])));
        assert!(check_axioms(g.family()).valid());
        assert!(check_anti_exchange(&g).unwrap().valid());
    }

    #[test]
    fn point_on_edge_counts_as_inside() {
        let cfg = RationalPointConfig::from_ints(2, &[&[0, 0], &[2, 0], &[1, 0], &[0, 5]]).unwrap();
        let g = geometry_from_points(&cfg).unwrap();
        assert!(!g.is_convex(Subset::from_indices([0, 1])));
        assert!(!g.is_convex(Subset::from_indices([0, 1, 3])));
    }

    #[test]
    fn errors() {
        assert_eq!(
            RationalPointConfig::from_ints(7, &[]),
            Err(DimensionError::DimensionCap { dim: 7, cap: MAX_DIM })
        );
        assert_eq!(
            RationalPointConfig::from_ints(1, &[&[0], &[0]]),
            Err(DimensionError::DuplicatePoint { first: 0, second: 1 })
        );
        assert_eq!(
            RationalPointConfig::from_ints(2, &[&[0]]),
            Err(DimensionError::CoordinateCount { point: 0, expected: 2 })
        );
        let many: Vec<Vec<i64>> = (0..13).map(|i| vec![i]).collect();
        let refs: Vec<&[i64]> = many.iter().map(|v| v.as_slice()).collect();
        let cfg = RationalPointConfig::from_ints(1, &refs).unwrap();
        assert_eq!(geometry_from_points(&cfg), Err(DimensionError::TooManyPoints { n: 13, cap: 12 }));
    }
}
