//! Finite convex geometries as set systems.
//!
//! A [`ConvexGeometry`] is a family of subsets of a finite [`GroundSet`] that
//! contains `∅` and `E`, is closed under intersection, and lets every proper
//! member grow by a single element. Geometries can be generated from a family
//! of total orders ([`OrderingFamily`]) or from any closure operator that
//! passes [`check_anti_exchange`].

mod closure;
mod iso;
mod ordering;

pub use closure::{
    check_anti_exchange, check_anti_exchange_with_cap, ClosureOperator, ClosureReport,
    ClosureTable, ClosureViolation, FnClosure,
};
pub use iso::{isomorphic, isomorphic_with_cap, DEFAULT_ISO_CAP};
pub use ordering::{geometry_from_orderings, OrderingFamily};

use std::collections::HashSet;
use std::fmt;

use crate::subset::{canonicalize, Subset, MAX_ELEMENTS};

/// Default cap on ground-set size for operations that scan all `2^n` subsets.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("ground set of {n} elements exceeds the exhaustive cap of {cap}")]
    GroundTooLarge { n: usize, cap: usize },
    #[error("isomorphism search on {n} elements exceeds the cap of {cap}")]
    SearchCap { n: usize, cap: usize },
    #[error("index {index} out of range for a ground set of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("ordering {order} is not a permutation of 0..{n}")]
    NotAPermutation { order: usize, n: usize },
    #[error("an ordering family needs at least one ordering")]
    NoOrderings,
    #[error("family violates the convex geometry axioms: {0}")]
    NotAConvexGeometry(AxiomViolation),
}

/// Ordered list of distinct element labels; element `i` is `labels[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<Self, GeometryError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_ELEMENTS {
            return Err(GeometryError::GroundTooLarge { n: labels.len(), cap: MAX_ELEMENTS });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(GeometryError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Ground set labelled `"0"`, `"1"`, ...
    pub fn indexed(n: usize) -> Self {
        GroundSet::new((0..n).map(|i| i.to_string())).expect("indexed labels are distinct")
    }

    /// Ground set labelled `a`, `b`, `c`, ... (falls back to `e26`, `e27`, ... past `z`).
    pub fn alphabetic(n: usize) -> Self {
        GroundSet::new((0..n).map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("e{i}")
            }
        }))
        .expect("alphabetic labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Subset from labels; panics on unknown labels (intended for tests and fixtures).
    pub fn subset(&self, labels: &[&str]) -> Subset {
        labels
            .iter()
            .map(|l| self.index_of(l).unwrap_or_else(|| panic!("unknown label {l}")))
            .collect()
    }

    pub fn format_subset(&self, s: Subset) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A canonicalized family of subsets of a ground set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<Subset>,
}

impl SetFamily {
    /// Builds a family, checking every member lies in the ground set. Duplicates are removed.
    pub fn new(ground: GroundSet, mut members: Vec<Subset>) -> Result<Self, GeometryError> {
        let full = ground.full();
        for m in &members {
            if !m.is_subset_of(full) {
                let index = m.difference(full).iter().next().unwrap_or(0);
                return Err(GeometryError::IndexOutOfRange { index, n: ground.len() });
            }
        }
        canonicalize(&mut members);
        Ok(SetFamily { ground, members })
    }

    pub fn from_index_lists(ground: GroundSet, lists: &[Vec<usize>]) -> Result<Self, GeometryError> {
        let n = ground.len();
        let mut members = Vec::with_capacity(lists.len());
        for l in lists {
            if let Some(&index) = l.iter().find(|&&i| i >= n) {
                return Err(GeometryError::IndexOutOfRange { index, n });
            }
            members.push(Subset::from_indices(l.iter().copied()));
        }
        SetFamily::new(ground, members)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.members.binary_search_by_key(&s.canonical_key(), |m| m.canonical_key()).is_ok()
    }

    fn member_set(&self) -> HashSet<Subset> {
        self.members.iter().copied().collect()
    }
}

/// Which clause of the set-system definition fails, with a witness.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AxiomViolation {
    /// Axiom 1: `∅` is not a member.
    MissingEmpty,
    /// Axiom 1: the ground set is not a member.
    MissingGround,
    /// Axiom 2: `a ∩ b` is not a member.
    NotIntersectionClosed { a: Subset, b: Subset },
    /// Axiom 3: the member `set ≠ E` has no one-point extension in the family.
    NoOnePointExtension { set: Subset },
}

impl AxiomViolation {
    /// 1, 2 or 3.
    pub fn axiom(&self) -> u8 {
        match self {
            AxiomViolation::MissingEmpty | AxiomViolation::MissingGround => 1,
            AxiomViolation::NotIntersectionClosed { .. } => 2,
            AxiomViolation::NoOnePointExtension { .. } => 3,
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::MissingEmpty => write!(f, "axiom 1: empty set missing"),
            AxiomViolation::MissingGround => write!(f, "axiom 1: ground set missing"),
            AxiomViolation::NotIntersectionClosed { a, b } => {
                write!(f, "axiom 2: intersection of {a:?} and {b:?} missing")
            }
            AxiomViolation::NoOnePointExtension { set } => {
                write!(f, "axiom 3: {set:?} has no one-point convex extension")
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AxiomReport {
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the three set-system axioms, reporting the first violation found.
pub fn check_axioms(family: &SetFamily) -> AxiomReport {
    let n = family.ground.len();
    let full = Subset::full(n);
    let set = family.member_set();
    let violation = if !set.contains(&Subset::EMPTY) {
        Some(AxiomViolation::MissingEmpty)
    } else if !set.contains(&full) {
        Some(AxiomViolation::MissingGround)
    } else {
        intersection_violation(&family.members, &set).or_else(|| {
            family
                .members
                .iter()
                .find(|&&x| {
                    x != full && !full.difference(x).iter().any(|e| set.contains(&x.with(e)))
                })
                .map(|&x| AxiomViolation::NoOnePointExtension { set: x })
        })
    };
    AxiomReport { violation }
}

fn intersection_violation(members: &[Subset], set: &HashSet<Subset>) -> Option<AxiomViolation> {
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if !set.contains(&a.intersection(b)) {
                return Some(AxiomViolation::NotIntersectionClosed { a, b });
            }
        }
    }
    None
}

/// A set family certified to satisfy the convex geometry axioms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConvexGeometry {
    family: SetFamily,
}

impl ConvexGeometry {
    pub fn new(family: SetFamily) -> Result<Self, GeometryError> {
        match check_axioms(&family).violation {
            None => Ok(ConvexGeometry { family }),
            Some(v) => Err(GeometryError::NotAConvexGeometry(v)),
        }
    }

    /// Skips the axiom check; used by constructions that are correct by design
    /// and re-checked by their tests.
    pub(crate) fn new_unchecked(family: SetFamily) -> Self {
        debug_assert!(check_axioms(&family).valid());
        ConvexGeometry { family }
    }

    /// The geometry whose convex sets are the fixed points of `op`.
    pub fn from_closure<C: ClosureOperator + ?Sized>(
        ground: GroundSet,
        op: &C,
    ) -> Result<Self, GeometryError> {
        let n = ground.len();
        if n > DEFAULT_EXHAUSTIVE_CAP {
            return Err(GeometryError::GroundTooLarge { n, cap: DEFAULT_EXHAUSTIVE_CAP });
        }
        let members = Subset::all(n).filter(|&x| op.close(x) == x).collect();
        ConvexGeometry::new(SetFamily::new(ground, members)?)
    }

    /// Every subset of the ground set is convex.
    pub fn free(ground: GroundSet) -> Self {
        let members = Subset::all(ground.len()).collect();
        ConvexGeometry::new_unchecked(SetFamily::new(ground, members).expect("subsets of ground"))
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn ground(&self) -> &GroundSet {
        &self.family.ground
    }

    pub fn n(&self) -> usize {
        self.family.ground.len()
    }

    pub fn members(&self) -> &[Subset] {
        &self.family.members
    }

    pub fn is_convex(&self, x: Subset) -> bool {
        self.family.contains(&x)
    }

    /// Intersection of all convex sets containing `x`.
    pub fn closure(&self, x: Subset) -> Subset {
        closure(self, x)
    }

    /// Same geometry with labels permuted: element `i` is relabelled as element `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let mut labels = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.ground().label(i).to_owned();
        }
        let ground = GroundSet::new(labels).expect("permutation of distinct labels");
        let members = self.members().iter().map(|m| m.iter().map(|i| perm[i]).collect()).collect();
        ConvexGeometry::new_unchecked(SetFamily::new(ground, members).expect("permuted subsets"))
    }
}

/// Intersection of all members of `geometry` that contain `x`.
pub fn closure(geometry: &ConvexGeometry, x: Subset) -> Subset {
    geometry
        .members()
        .iter()
        .filter(|m| x.is_subset_of(**m))
        .fold(geometry.ground().full(), |acc, m| acc.intersection(*m))
}

impl ClosureOperator for ConvexGeometry {
    fn ground_size(&self) -> usize {
        self.n()
    }

    fn close(&self, x: Subset) -> Subset {
        closure(self, x)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// `∅,{a},{b},{c},{a,b},{b,c},E`: three collinear points with `b` in the middle.
    pub fn collinear3() -> ConvexGeometry {
        let g = GroundSet::alphabetic(3);
        let fam = SetFamily::from_index_lists(
            g,
            &[vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![0, 1, 2]],
        )
        .unwrap();
        ConvexGeometry::new(fam).unwrap()
    }

    /// Down-sets of the chain `a < b < c`.
    pub fn chain3() -> ConvexGeometry {
        let g = GroundSet::alphabetic(3);
        let fam =
            SetFamily::from_index_lists(g, &[vec![], vec![0], vec![0, 1], vec![0, 1, 2]]).unwrap();
        ConvexGeometry::new(fam).unwrap()
    }
}
