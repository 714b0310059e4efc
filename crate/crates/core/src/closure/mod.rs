//! Exact closure of finitely generated groups by breadth-first search.
//!
//! Each level multiplies the frontier by every generator and inverse in
//! parallel, then inserts the products sequentially in a fixed order, so the
//! element list and the reported order do not depend on the schedule.

use std::collections::HashSet;
use std::hash::Hash;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

mod scalars;

pub use scalars::{determinant_order, scalar_spectrum, ScalarEntry, ScalarMatrix, ScalarReport};

/// Default element cap for closures.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Elements of a group that can be composed, inverted and keyed exactly.
///
/// `Eq` and `Hash` must agree: the closure deduplicates through a hash set and
/// relies on `Eq` for collisions.
pub trait GroupElement: Clone + Eq + Hash + Send + Sync {
    /// `self · rhs`.
    fn compose(&self, rhs: &Self) -> Self;
    fn try_inverse(&self) -> Option<Self>;
}

/// Elements that admit a canonical representative modulo scalars.
pub trait ProjectiveNormalize: GroupElement {
    /// Divide by the first nonzero entry in row-major order.
    fn projective_normal(&self) -> Self;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureStatus {
    Complete,
    CapExceeded,
}

#[derive(Debug, Clone)]
pub struct ClosureResult<T> {
    pub status: ClosureStatus,
    /// Set when the status is complete.
    pub order: Option<usize>,
    /// Distinct elements seen before stopping.
    pub elements_found: usize,
    pub generator_count: usize,
    pub levels: usize,
    pub elapsed_ms: u128,
    /// All elements in discovery order, when requested.
    pub elements: Option<Vec<T>>,
}

impl<T> ClosureResult<T> {
    pub fn is_complete(&self) -> bool {
        self.status == ClosureStatus::Complete
    }

    /// Telemetry without the element store.
    pub fn summary(&self) -> ClosureSummary {
        ClosureSummary {
            status: self.status,
            order: self.order,
            elements_found: self.elements_found,
            generator_count: self.generator_count,
            levels: self.levels,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureSummary {
    pub status: ClosureStatus,
    pub order: Option<usize>,
    pub elements_found: usize,
    pub generator_count: usize,
    pub levels: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosureError {
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("scalar report needs a complete closure with stored elements")]
    NoElementStore,
}

/// BFS closure of `⟨gens⟩` starting from `identity`.
///
/// Stops with [`ClosureStatus::CapExceeded`] once more than `cap` distinct
/// elements are known. Finiteness is only ever certified by completion.
pub fn group_closure<T: GroupElement>(
    identity: &T,
    gens: &[T],
    cap: usize,
    store: bool,
) -> Result<ClosureResult<T>, ClosureError> {
    let start = Instant::now();
    let mut steps: Vec<T> = Vec::with_capacity(2 * gens.len());
    for (k, g) in gens.iter().enumerate() {
        let inv = g.try_inverse().ok_or(ClosureError::NotInvertible(k))?;
        steps.push(g.clone());
        if &inv != g {
            steps.push(inv);
        }
    }
    let mut seen: HashSet<T> = HashSet::new();
    let mut stored: Vec<T> = Vec::new();
    seen.insert(identity.clone());
    if store {
        stored.push(identity.clone());
    }
    let mut frontier = vec![identity.clone()];
    let mut levels = 0;
    let mut status = ClosureStatus::Complete;
    while !frontier.is_empty() {
        if seen.len() > cap {
            status = ClosureStatus::CapExceeded;
            break;
        }
        levels += 1;
        let candidates: Vec<T> = frontier
            .par_iter()
            .flat_map_iter(|x| steps.iter().map(move |g| x.compose(g)))
            .filter(|c| !seen.contains(c))
            .collect();
        let mut next = Vec::new();
        for c in candidates {
            if !seen.contains(&c) {
                seen.insert(c.clone());
                if store {
                    stored.push(c.clone());
                }
                next.push(c);
                if seen.len() > cap {
                    break;
                }
            }
        }
        frontier = next;
    }
    if seen.len() > cap {
        status = ClosureStatus::CapExceeded;
    }
    Ok(ClosureResult {
        status,
        order: (status == ClosureStatus::Complete).then_some(seen.len()),
        elements_found: seen.len(),
        generator_count: gens.len(),
        levels,
        elapsed_ms: start.elapsed().as_millis(),
        elements: store.then_some(stored),
    })
}

/// An element modulo scalars, kept in projective normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Projective<T>(pub T);

impl<T: ProjectiveNormalize> GroupElement for Projective<T> {
    fn compose(&self, rhs: &Self) -> Self {
        Projective(self.0.compose(&rhs.0).projective_normal())
    }

    fn try_inverse(&self) -> Option<Self> {
        self.0.try_inverse().map(|x| Projective(x.projective_normal()))
    }
}

/// Closure of the image of `⟨gens⟩` in the projective linear group.
pub fn projective_closure<T: ProjectiveNormalize>(
    identity: &T,
    gens: &[T],
    cap: usize,
    store: bool,
) -> Result<ClosureResult<Projective<T>>, ClosureError> {
    let gens: Vec<Projective<T>> = gens
        .iter()
        .map(|g| Projective(g.projective_normal()))
        .collect();
    group_closure(&Projective(identity.projective_normal()), &gens, cap, store)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{CyclotomicNumber, RootOfUnity};
    use crate::rep::{DenseMatrix, MonomialMatrix};

    #[test]
    fn identity_only() {
        let id = MonomialMatrix::identity(3);
        let r = group_closure(&id, &[id.clone()], 10, false).unwrap();
        assert_eq!(r.order, Some(1));
    }

    #[test]
    fn swap_has_order_two() {
        let swap = MonomialMatrix::new(vec![1, 0], vec![RootOfUnity::one(); 2]).unwrap();
        let r = group_closure(&MonomialMatrix::identity(2), &[swap], 10, false).unwrap();
        assert_eq!(r.order, Some(2));
    }

    #[test]
    fn diagonal_zeta4() {
        let d = DenseMatrix::diagonal(&[CyclotomicNumber::root_of_unity(4, 1), CyclotomicNumber::one(4)]);
        let id = DenseMatrix::identity(2, 4);
        assert_eq!(group_closure(&id, &[d.clone()], 100, false).unwrap().order, Some(4));
        assert_eq!(projective_closure(&id, &[d], 100, false).unwrap().order, Some(4));
    }

    #[test]
    fn scalar_is_projectively_trivial() {
        let l = DenseMatrix::diagonal(&vec![CyclotomicNumber::root_of_unity(8, 3); 3]);
        let id = DenseMatrix::identity(3, 8);
        assert_eq!(projective_closure(&id, &[l.clone()], 100, false).unwrap().order, Some(1));
        assert_eq!(group_closure(&id, &[l], 100, false).unwrap().order, Some(8));
    }

    #[test]
    fn cap_marker() {
        let d = DenseMatrix::diagonal(&[CyclotomicNumber::root_of_unity(12, 1), CyclotomicNumber::one(12)]);
        let r = group_closure(&DenseMatrix::identity(2, 12), &[d], 5, false).unwrap();
        assert_eq!(r.status, ClosureStatus::CapExceeded);
        assert_eq!(r.order, None);
    }

    #[test]
    fn singular_generator_is_rejected() {
        let z = DenseMatrix::zero(2, 1);
        let err = group_closure(&DenseMatrix::identity(2, 1), &[z], 5, false).unwrap_err();
        assert_eq!(err, ClosureError::NotInvertible(0));
    }
}
