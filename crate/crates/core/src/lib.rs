//! Exact computations for braid group representations coming from
//! weakly group-theoretical braided fusion categories.
//!
//! Modules, bottom-up: [`cyclotomic`] fields and roots of unity, finite
//! [`group`]s and quadratic forms, 3-[`cocycle`]s and their crossed
//! structures, representation builders in [`rep`], the permutation action in
//! [`braid`], and the BFS [`closure`] engine that certifies finite images.

pub mod braid;
pub mod closure;
pub mod cocycle;
pub mod cyclotomic;
pub mod group;
pub mod rep;
