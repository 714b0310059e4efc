use serde::Serialize;

use crate::cyclotomic::CyclotomicNumber;
use crate::rep::{determinant, Matrix};

use super::{ClosureError, ClosureResult};

/// Matrices that can report whether they are a multiple of the identity.
pub trait ScalarMatrix {
    fn as_scalar(&self) -> Option<CyclotomicNumber>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalarEntry {
    pub value: CyclotomicNumber,
    /// Exact multiplicative order; `None` if the value is not a root of unity.
    pub order: Option<u64>,
    /// Number of closure elements equal to `value · Id`.
    pub multiplicity: usize,
    /// Whether `value^bound = 1`.
    pub satisfies_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalarReport {
    pub bound: u64,
    pub scalars: Vec<ScalarEntry>,
    /// Entries with `value^bound ≠ 1`. Diagnostic only.
    pub bound_violations: usize,
}

impl ScalarReport {
    pub fn all_within_bound(&self) -> bool {
        self.bound_violations == 0
    }
}

/// Collect the scalar matrices `λ·Id` in a complete closure with stored
/// elements, with the exact order of each `λ` and whether `λ^bound = 1`.
pub fn scalar_spectrum<T: ScalarMatrix>(
    closure: &ClosureResult<T>,
    bound: u64,
) -> Result<ScalarReport, ClosureError> {
    let elements = match (&closure.elements, closure.is_complete()) {
        (Some(e), true) => e,
        _ => return Err(ClosureError::NoElementStore),
    };
    let mut scalars: Vec<ScalarEntry> = Vec::new();
    for lambda in elements.iter().filter_map(ScalarMatrix::as_scalar) {
        if let Some(e) = scalars.iter_mut().find(|e| e.value == lambda) {
            e.multiplicity += 1;
            continue;
        }
        let order = lambda.order_of_root(u64::MAX);
        let satisfies_bound = lambda.pow(bound as i64).map(|v| v.is_one()).unwrap_or(false);
        scalars.push(ScalarEntry {
            value: lambda,
            order,
            multiplicity: 1,
            satisfies_bound,
        });
    }
    scalars.sort_by_key(|e| e.order.unwrap_or(u64::MAX));
    let bound_violations = scalars.iter().filter(|e| !e.satisfies_bound).count();
    Ok(ScalarReport {
        bound,
        scalars,
        bound_violations,
    })
}

/// Order of `det(mat)` as a root of unity, if it is one of order at most `cap`.
pub fn determinant_order(mat: &Matrix, cap: u64) -> Option<u64> {
    determinant(mat).order_of_root(cap)
}
