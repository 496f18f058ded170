use super::{GeometryError, DEFAULT_EXHAUSTIVE_CAP};
use crate::subset::Subset;

/// A map `X ↦ Φ(X)` on subsets of `{0, .., n-1}`.
pub trait ClosureOperator {
    fn ground_size(&self) -> usize;
    fn close(&self, x: Subset) -> Subset;
}

/// Closure operator backed by a plain function.
pub struct FnClosure<F> {
    n: usize,
    f: F,
}

impl<F: Fn(Subset) -> Subset> FnClosure<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnClosure { n, f }
    }
}

impl<F: Fn(Subset) -> Subset> ClosureOperator for FnClosure<F> {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn close(&self, x: Subset) -> Subset {
        (self.f)(x)
    }
}

/// A closure operator tabulated on all `2^n` subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureTable {
    n: usize,
    table: Vec<Subset>,
}

impl ClosureTable {
    /// Tabulates a fallible evaluator. Fails with the first evaluator error.
    pub fn try_tabulate<E, F>(n: usize, mut f: F) -> Result<Self, E>
    where
        F: FnMut(Subset) -> Result<Subset, E>,
    {
        let table = Subset::all(n).map(&mut f).collect::<Result<Vec<_>, E>>()?;
        Ok(ClosureTable { n, table })
    }

    pub fn tabulate<C: ClosureOperator + ?Sized>(op: &C) -> Self {
        let n = op.ground_size();
        ClosureTable { n, table: Subset::all(n).map(|x| op.close(x)).collect() }
    }

    /// Fixed points in increasing bit order.
    pub fn fixed_points(&self) -> Vec<Subset> {
        Subset::all(self.n).filter(|&x| self.close(x) == x).collect()
    }
}

impl ClosureOperator for ClosureTable {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn close(&self, x: Subset) -> Subset {
        self.table[x.bits() as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureViolation {
    NotExtensive { x: Subset },
    /// `Φ(x) ⊄ Φ(x ∪ {e})`.
    NotMonotone { x: Subset, e: usize },
    NotIdempotent { x: Subset },
    EmptyNotClosed { image: Subset },
    /// `x, y ∉ Φ(a)`, `x ≠ y` and `Φ(a ∪ {x}) = Φ(a ∪ {y})`.
    AntiExchange { a: Subset, x: usize, y: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub violation: Option<ClosureViolation>,
}

impl ClosureReport {
    pub fn valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exhaustively checks that `op` is a closure operator with `Φ(∅) = ∅` and the
/// anti-exchange property, using the default cap of 20 elements.
pub fn check_anti_exchange<C: ClosureOperator + ?Sized>(op: &C) -> Result<ClosureReport, GeometryError> {
    check_anti_exchange_with_cap(op, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn check_anti_exchange_with_cap<C: ClosureOperator + ?Sized>(
    op: &C,
    cap: usize,
) -> Result<ClosureReport, GeometryError> {
    let n = op.ground_size();
    if n > cap {
        return Err(GeometryError::GroundTooLarge { n, cap });
    }
    let table: Vec<Subset> = Subset::all(n).map(|x| op.close(x)).collect();
    let phi = |x: Subset| table[x.bits() as usize];
    Ok(ClosureReport { violation: find_violation(n, &phi) })
}

fn find_violation(n: usize, phi: &dyn Fn(Subset) -> Subset) -> Option<ClosureViolation> {
    let full = Subset::full(n);
    for x in Subset::all(n) {
        let cx = phi(x);
        if !x.is_subset_of(cx) || !cx.is_subset_of(full) {
            return Some(ClosureViolation::NotExtensive { x });
        }
        if phi(cx) != cx {
            return Some(ClosureViolation::NotIdempotent { x });
        }
        // monotonicity along single-element steps implies it for all X ⊆ Y
        if let Some(e) = full.difference(x).iter().find(|&e| !cx.is_subset_of(phi(x.with(e)))) {
            return Some(ClosureViolation::NotMonotone { x, e });
        }
    }
    let empty = phi(Subset::EMPTY);
    if !empty.is_empty() {
        return Some(ClosureViolation::EmptyNotClosed { image: empty });
    }
    for a in Subset::all(n) {
        let outside: Vec<usize> = full.difference(phi(a)).iter().collect();
        for (i, &x) in outside.iter().enumerate() {
            let cx = phi(a.with(x));
            for &y in &outside[i + 1..] {
                if cx == phi(a.with(y)) {
                    return Some(ClosureViolation::AntiExchange { a, x, y });
                }
            }
        }
    }
    None
}
