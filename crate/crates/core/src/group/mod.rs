//! Finite groups, finite abelian groups, bicharacters and quadratic forms.

mod abelian;
mod finite;

use thiserror::Error;

pub use abelian::{
    check_quadratic_form, enumerate_quadratic_forms, Bicharacter, FiniteAbelianGroup,
    QuadraticForm, QuadraticFormReport,
};
pub use finite::{FiniteGroup, GroupSpec, MAX_GROUP_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("malformed table: {0}")]
    Table(String),
    #[error("group of order {0} exceeds the supported size")]
    TooLarge(usize),
    #[error("invalid invariant factors: {0}")]
    InvariantFactors(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: {g}·{n}·{g}⁻¹ leaves it")]
    NotNormal { g: usize, n: usize },
    #[error("invalid form: {0}")]
    Form(String),
}
