use std::collections::VecDeque;

use crate::subset::Subset;

/// A maximum antichain of a family of sets under inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antichain {
    pub width: usize,
    /// Pairwise inclusion-incomparable sets, `width` of them.
    pub sets: Vec<Subset>,
}

/// Width of `sets` partially ordered by inclusion, with a witnessing antichain.
///
/// Duplicate sets are the same poset element and are merged first. The width
/// is `k − ν` where `ν` is a maximum matching of the bipartite graph with an
/// edge `i → j` for every strict inclusion `s_i ⊊ s_j`; the antichain is read
/// off a minimum vertex cover of that graph.
pub fn poset_width(sets: &[Subset]) -> Antichain {
    let mut elems = sets.to_vec();
    crate::subset::canonicalize(&mut elems);
    let k = elems.len();
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).filter(|&j| elems[i].is_proper_subset_of(elems[j])).collect())
        .collect();
    let matching = hopcroft_karp(k, k, &adj);
    let (left_z, right_z) = alternating_reach(k, &adj, &matching);
    // element x survives iff neither L_x nor R_x is in the cover (L \ Z) ∪ (R ∩ Z)
    let sets: Vec<Subset> = (0..k).filter(|&x| left_z[x] && !right_z[x]).map(|x| elems[x]).collect();
    debug_assert_eq!(sets.len(), k - matching.size);
    assert!(is_antichain(&sets), "König construction produced comparable sets");
    Antichain { width: sets.len(), sets }
}

/// A partition of the distinct sets into `width` chains, each listed by increasing inclusion.
pub fn chain_cover(sets: &[Subset]) -> Vec<Vec<Subset>> {
    let mut elems = sets.to_vec();
    crate::subset::canonicalize(&mut elems);
    let k = elems.len();
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).filter(|&j| elems[i].is_proper_subset_of(elems[j])).collect())
        .collect();
    let matching = hopcroft_karp(k, k, &adj);
    (0..k)
        .filter(|&x| matching.right[x].is_none())
        .map(|start| {
            let mut chain = vec![elems[start]];
            let mut cur = start;
            while let Some(next) = matching.left[cur] {
                chain.push(elems[next]);
                cur = next;
            }
            chain
        })
        .collect()
}

pub fn is_antichain(sets: &[Subset]) -> bool {
    sets.iter().enumerate().all(|(i, a)| {
        sets[i + 1..].iter().all(|b| !a.is_subset_of(*b) && !b.is_subset_of(*a))
    })
}

pub(crate) struct Matching {
    pub size: usize,
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

pub(crate) fn hopcroft_karp(nl: usize, nr: usize, adj: &[Vec<usize>]) -> Matching {
    let mut left = vec![None; nl];
    let mut right: Vec<Option<usize>> = vec![None; nr];
    let mut size = 0;
    loop {
        // BFS layering from free left vertices
        let mut dist = vec![usize::MAX; nl];
        let mut queue = VecDeque::new();
        for u in 0..nl {
            if left[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match right[v] {
                    None => found = true,
                    Some(w) if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        for u in 0..nl {
            if left[u].is_none() && augment(u, adj, &mut dist, &mut left, &mut right) {
                size += 1;
            }
        }
    }
    Matching { size, left, right }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    dist: &mut [usize],
    left: &mut [Option<usize>],
    right: &mut [Option<usize>],
) -> bool {
    for &v in &adj[u] {
        let ok = match right[v] {
            None => true,
            Some(w) => dist[w] == dist[u] + 1 && augment(w, adj, dist, left, right),
        };
        if ok {
            left[u] = Some(v);
            right[v] = Some(u);
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Vertices reachable from free left vertices along alternating paths.
fn alternating_reach(k: usize, adj: &[Vec<usize>], m: &Matching) -> (Vec<bool>, Vec<bool>) {
    let mut lz = vec![false; k];
    let mut rz = vec![false; k];
    let mut stack: Vec<usize> = (0..k).filter(|&u| m.left[u].is_none()).collect();
    for &u in &stack {
        lz[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if m.left[u] == Some(v) || rz[v] {
                continue;
            }
            rz[v] = true;
            if let Some(w) = m.right[v] {
                if !lz[w] {
                    lz[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    (lz, rz)
}
