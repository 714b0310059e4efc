//! Braid group representations from pointed categories, twisted Drinfeld
//! doubles and Tambara–Yamagami centers, with exact word evaluation.

mod bracket;
mod builders;
mod matrix;
mod spec;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::cocycle::CocycleError;
use crate::cyclotomic::{lcm, CyclotomicNumber, FieldError};
use crate::group::GroupError;

pub use bracket::{assoc_scalar, Bracketing};
pub use builders::{
    bimultiplicativity_violation, double_rep, pointed_rep, ty_rep, ty_rep_strands, TyRep, MAX_DIMENSION,
};
pub use matrix::{DenseMatrix, Matrix, MonomialMatrix};
pub use spec::{AlphaSpec, BuiltRep, RepFile, RepSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("braiding is not bimultiplicative at ({a}, {b}, {c})")]
    NotBimultiplicative { a: usize, b: usize, c: usize },
    #[error("Δ² = {0} is not a root of unity")]
    DeltaNotRoot(String),
    #[error("generator {0} is singular")]
    Singular(usize),
    #[error("invalid strand count {0}")]
    Strands(usize),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("invalid bracketing: {0}")]
    Bracketing(String),
    #[error("word uses s{index} but only {count} generators are given")]
    GeneratorIndex { index: usize, count: usize },
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Exact product `ρ(l₁)ρ(l₂)⋯ρ(l_k)` of a braid word.
///
/// Monomial generators stay monomial; otherwise everything is lifted to the
/// lcm of the generators' conductors.
pub fn evaluate_word(gens: &[Matrix], word: &BraidWord) -> Result<Matrix, RepError> {
    let dim = gens.first().map(Matrix::dim).ok_or_else(|| RepError::Dimension("no generators".into()))?;
    if gens.iter().any(|g| g.dim() != dim) {
        return Err(RepError::Dimension("generators have different dimensions".into()));
    }
    if let Some(&(i, _)) = word.letters().iter().find(|&&(i, _)| i > gens.len()) {
        return Err(RepError::GeneratorIndex { index: i, count: gens.len() });
    }
    if let Some(mono) = gens.iter().map(Matrix::as_monomial).collect::<Option<Vec<_>>>() {
        let inv: Vec<MonomialMatrix> = mono.iter().map(|m| m.inverse()).collect();
        let mut acc = MonomialMatrix::identity(dim);
        for &(i, s) in word.letters() {
            acc = acc.mul(if s > 0 { mono[i - 1] } else { &inv[i - 1] });
        }
        return Ok(Matrix::Monomial(acc));
    }
    let n = gens.iter().fold(1, |acc, g| lcm(acc, g.conductor()));
    let dense = gens.iter().map(|g| g.to_dense(n)).collect::<Result<Vec<_>, _>>()?;
    let mut inv: Vec<Option<DenseMatrix>> = vec![None; dense.len()];
    let mut acc = DenseMatrix::identity(dim, n);
    for &(i, s) in word.letters() {
        let m = if s > 0 {
            &dense[i - 1]
        } else {
            if inv[i - 1].is_none() {
                inv[i - 1] = Some(dense[i - 1].inverse().ok_or(RepError::Singular(i))?);
            }
            inv[i - 1].as_ref().unwrap()
        };
        acc = acc.mul(m);
    }
    Ok(Matrix::Dense(acc))
}

/// A defining relation of the braid group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", rename_all = "kebab-case")]
pub enum BraidRelation {
    /// `σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}`.
    Braid { i: usize },
    /// `σ_i σ_j = σ_j σ_i` for `|i − j| > 1`.
    FarCommutation { i: usize, j: usize },
}

impl fmt::Display for BraidRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BraidRelation::Braid { i } => write!(f, "s{i} s{j} s{i} = s{j} s{i} s{j}", j = i + 1),
            BraidRelation::FarCommutation { i, j } => write!(f, "s{i} s{j} = s{j} s{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub generators: usize,
    pub relations_checked: usize,
    /// The first relation that fails, in the order braid relations first and
    /// then far commutations, each by increasing index.
    pub first_failure: Option<BraidRelation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Check every braid and far-commutation relation exactly.
pub fn check_braid_relations(gens: &[Matrix]) -> Result<RelationReport, RepError> {
    let k = gens.len();
    let strands = k + 1;
    let mut relations: Vec<BraidRelation> = (1..k).map(|i| BraidRelation::Braid { i }).collect();
    for i in 1..=k {
        for j in i + 2..=k {
            relations.push(BraidRelation::FarCommutation { i, j });
        }
    }
    let mut checked = 0;
    for rel in relations.iter().copied() {
        let (lhs, rhs) = match rel {
            BraidRelation::Braid { i } => (vec![i, i + 1, i], vec![i + 1, i, i + 1]),
            BraidRelation::FarCommutation { i, j } => (vec![i, j], vec![j, i]),
        };
        let word = |v: Vec<usize>| BraidWord::new(strands, v.into_iter().map(|i| (i, 1)).collect());
        let l = evaluate_word(gens, &word(lhs)?)?;
        let r = evaluate_word(gens, &word(rhs)?)?;
        checked += 1;
        if !l.same_values(&r) {
            return Ok(RelationReport {
                generators: k,
                relations_checked: checked,
                first_failure: Some(rel),
            });
        }
    }
    Ok(RelationReport {
        generators: k,
        relations_checked: checked,
        first_failure: None,
    })
}

/// Exact determinant; `sign(p)·∏ s_b` for monomial matrices.
pub fn determinant(m: &Matrix) -> CyclotomicNumber {
    match m {
        Matrix::Monomial(m) => m.determinant().to_cyclotomic_min(),
        Matrix::Dense(m) => m.determinant(),
    }
}
