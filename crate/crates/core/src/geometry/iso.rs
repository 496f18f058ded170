use std::collections::HashSet;

use super::{ConvexGeometry, GeometryError};
use crate::subset::Subset;

pub const DEFAULT_ISO_CAP: usize = 10;

/// Finds a bijection `φ` (as `phi[i]` = image of element `i`) such that
/// `φ(X) ∈ g2 ⇔ X ∈ g1`, or `None` if the geometries are not isomorphic.
pub fn isomorphic(g1: &ConvexGeometry, g2: &ConvexGeometry) -> Result<Option<Vec<usize>>, GeometryError> {
    isomorphic_with_cap(g1, g2, DEFAULT_ISO_CAP)
}

pub fn isomorphic_with_cap(
    g1: &ConvexGeometry,
    g2: &ConvexGeometry,
    cap: usize,
) -> Result<Option<Vec<usize>>, GeometryError> {
    let n = g1.n();
    if n != g2.n() || g1.members().len() != g2.members().len() {
        return Ok(None);
    }
    if n > cap {
        return Err(GeometryError::SearchCap { n, cap });
    }
    let p1 = profiles(g1);
    let p2 = profiles(g2);
    let mut sorted1 = p1.clone();
    let mut sorted2 = p2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return Ok(None);
    }
    // members of g1 grouped by their largest element, so each can be tested
    // as soon as the prefix containing it has been mapped
    let mut by_max: Vec<Vec<Subset>> = vec![Vec::new(); n];
    for &m in g1.members() {
        if let Some(top) = m.iter().last() {
            by_max[top].push(m);
        }
    }
    let targets: HashSet<Subset> = g2.members().iter().copied().collect();
    let mut search = Search { n, p1, p2, by_max, targets, phi: vec![usize::MAX; n], used: vec![false; n] };
    Ok(if search.extend(0) { Some(search.phi) } else { None })
}

/// Per-element profile: how many convex sets of each size contain the element.
fn profiles(g: &ConvexGeometry) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut p = vec![vec![0usize; n + 1]; n];
    for m in g.members() {
        for x in m.iter() {
            p[x][m.len()] += 1;
        }
    }
    p
}

struct Search {
    n: usize,
    p1: Vec<Vec<usize>>,
    p2: Vec<Vec<usize>>,
    by_max: Vec<Vec<Subset>>,
    targets: HashSet<Subset>,
    phi: Vec<usize>,
    used: Vec<bool>,
}

impl Search {
    fn extend(&mut self, k: usize) -> bool {
        if k == self.n {
            return true;
        }
        for t in 0..self.n {
            if self.used[t] || self.p1[k] != self.p2[t] {
                continue;
            }
            self.phi[k] = t;
            self.used[t] = true;
            let consistent = self.by_max[k].iter().all(|m| {
                let image: Subset = m.iter().map(|x| self.phi[x]).collect();
                self.targets.contains(&image)
            });
            if consistent && self.extend(k + 1) {
                return true;
            }
            self.used[t] = false;
        }
        self.phi[k] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{GroundSet, SetFamily};
    use super::*;

    #[test]
    fn self_isomorphism_is_identity() {
        let g = collinear3();
        assert_eq!(isomorphic(&g, &g).unwrap(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn chains_on_different_labels() {
        let g1 = chain3();
        let xyz = GroundSet::new(["x", "y", "z"]).unwrap();
        let g2 = ConvexGeometry::new(
            SetFamily::from_index_lists(xyz, &[vec![], vec![0], vec![0, 1], vec![0, 1, 2]]).unwrap(),
        )
        .unwrap();
        assert_eq!(isomorphic(&g1, &g2).unwrap(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn chain_vs_free_is_none() {
        let free = ConvexGeometry::free(GroundSet::alphabetic(3));
        assert_eq!(isomorphic(&chain3(), &free).unwrap(), None);
    }

    #[test]
    fn relabelled_geometry_is_found() {
        let g = collinear3();
        let r = g.relabel(&[1, 2, 0]);
        let phi = isomorphic(&g, &r).unwrap().unwrap();
        for m in g.members() {
            let image: Subset = m.iter().map(|x| phi[x]).collect();
            assert!(r.is_convex(image));
        }
    }

    #[test]
    fn search_cap() {
        let g = ConvexGeometry::free(GroundSet::indexed(11));
        assert_eq!(isomorphic(&g, &g), Err(GeometryError::SearchCap { n: 11, cap: 10 }));
    }
}
