//! 3-cocycles on finite groups with values in roots of unity.
//!
//! Provides the differential, the exhaustive cocycle test, a standard
//! generator for cyclic groups, normalization to `|G|`-th roots of unity with
//! an explicit witness, the crossed structure on `Vec_G^α`, and the
//! pushforward to a quotient group.

mod cochain;
mod crossed;
mod file;

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::RootOfUnity;
use crate::group::{FiniteGroup, GroupError};

pub use cochain::{
    builtin_cocycle_cyclic, coboundary3, cocycle_violation, is_cocycle, Cochain2, Cochain3,
};
pub(crate) use cochain::require_cocycle;
pub use file::{Cochain2Entry, Cochain2File, CocycleEntry, CocycleFile};
pub use crossed::{crossed_structure, gamma_value, mu_value, CrossedIdentity, CrossedStructure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("not a 3-cocycle: dα ≠ 1 at {0:?}")]
    NotACocycle([usize; 4]),
    #[error("crossed-structure identity `{family}` fails at {tuple:?}")]
    IdentityFailure {
        family: CrossedIdentity,
        tuple: Vec<usize>,
    },
    #[error("cochains live on different groups")]
    GroupMismatch,
    #[error("cochain table has {found} entries, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("not a homomorphism: {0}")]
    Homomorphism(String),
    #[error("invalid entry: {0}")]
    Entry(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Replace `α` by the cohomologous `α' = α·d(r)` whose values are `|G|`-th roots of unity.
///
/// `r(g₁,g₂)` is the `|G|`-th root of `∏_{g₀} α(g₀,g₁,g₂)⁻¹` obtained by the
/// exponent lift `ζ_M^e ↦ ζ_{M|G|}^e`. Returns `(α', r)`.
pub fn normalize_cocycle(alpha: &Cochain3) -> Result<(Cochain3, Cochain2), CocycleError> {
    require_cocycle(alpha)?;
    let g = alpha.group().clone();
    let m = g.order() as u64;
    let r = Cochain2::from_fn(g.clone(), |g1, g2| {
        let prod = g
            .elements()
            .fold(RootOfUnity::one(), |acc, g0| acc.mul(alpha.get(g0, g1, g2)));
        prod.inv().root(m)
    });
    let normalized = alpha.mul(&coboundary3(&r))?;
    debug_assert!(normalized.values().iter().all(|v| m % v.order() == 0));
    Ok((normalized, r))
}

/// Quotient data returned by [`pushforward_cocycle`].
#[derive(Debug, Clone)]
pub struct Pushforward {
    pub quotient: Arc<FiniteGroup>,
    /// `projection[g]` is the coset index of `g`.
    pub projection: Vec<usize>,
    pub cocycle: Cochain3,
}

/// `α^C(fN, gN, hN) = ∏_{x∈fN, y∈gN, z∈hN} α(x,y,z)^{|N|}` on `G/N`.
pub fn pushforward_cocycle(alpha: &Cochain3, normal: &[usize]) -> Result<Pushforward, CocycleError> {
    require_cocycle(alpha)?;
    let g = alpha.group();
    let (quotient, projection) = g.quotient(normal)?;
    let n_size = normal.iter().collect::<BTreeSet<_>>().len() as i64;
    let cosets = cosets(&projection, quotient.order());
    let quotient = Arc::new(quotient);
    let cocycle = Cochain3::from_fn(quotient.clone(), |f, gg, h| {
        let mut acc = RootOfUnity::one();
        for &x in &cosets[f] {
            for &y in &cosets[gg] {
                for &z in &cosets[h] {
                    acc = acc.mul(alpha.get(x, y, z));
                }
            }
        }
        acc.pow(n_size)
    });
    Ok(Pushforward {
        quotient,
        projection,
        cocycle,
    })
}

/// The 2-cochain `r^C(F, G) = ∏_{y∈F, z∈G} r(y,z)^{|N|²}` on `G/N`, for which
/// `pushforward(α·dr) = pushforward(α)·d(r^C)`.
pub fn pushforward_cochain2(r: &Cochain2, push: &Pushforward) -> Cochain2 {
    let cosets = cosets(&push.projection, push.quotient.order());
    let n_size = cosets[0].len() as i64;
    Cochain2::from_fn(push.quotient.clone(), |f, gg| {
        let mut acc = RootOfUnity::one();
        for &y in &cosets[f] {
            for &z in &cosets[gg] {
                acc = acc.mul(r.get(y, z));
            }
        }
        acc.pow(n_size * n_size)
    })
}

fn cosets(projection: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); count];
    for (g, &c) in projection.iter().enumerate() {
        out[c].push(g);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_trivial() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let (a, r) = normalize_cocycle(&Cochain3::trivial(g)).unwrap();
        assert!(a.values().iter().all(|v| v.is_one()));
        assert!(r.values().iter().all(|v| v.is_one()));
    }

    #[test]
    fn normalize_rejects_non_cocycles() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let mut a = Cochain3::trivial(g);
        a.set(0, 1, 1, RootOfUnity::minus_one());
        assert!(matches!(normalize_cocycle(&a), Err(CocycleError::NotACocycle(_))));
    }

    #[test]
    fn pushforward_trivial_subgroup_is_identity() {
        let alpha = builtin_cocycle_cyclic(4, 1).unwrap();
        let p = pushforward_cocycle(&alpha, &[0]).unwrap();
        assert_eq!(p.quotient.order(), 4);
        assert_eq!(p.cocycle.values(), alpha.values());
    }

    #[test]
    fn pushforward_whole_group() {
        let alpha = builtin_cocycle_cyclic(4, 1).unwrap();
        let p = pushforward_cocycle(&alpha, &[0, 1, 2, 3]).unwrap();
        assert_eq!(p.quotient.order(), 1);
        let full = alpha.values().iter().fold(RootOfUnity::one(), |a, b| a.mul(*b)).pow(4);
        assert_eq!(p.cocycle.get(0, 0, 0), full);
        assert!(is_cocycle(&p.cocycle));
    }

    #[test]
    fn pushforward_z4_to_z2() {
        let alpha = builtin_cocycle_cyclic(4, 1).unwrap();
        let p = pushforward_cocycle(&alpha, &[0, 2]).unwrap();
        assert_eq!(p.quotient.order(), 2);
        assert!(is_cocycle(&p.cocycle));
        // Brute force: multiply α over the 8 lifts of each quotient triple, then square.
        for f in 0..2 {
            for g in 0..2 {
                for h in 0..2 {
                    let mut acc = RootOfUnity::one();
                    for x in [f, f + 2] {
                        for y in [g, g + 2] {
                            for z in [h, h + 2] {
                                acc = acc.mul(alpha.get(x, y, z));
                            }
                        }
                    }
                    assert_eq!(p.cocycle.get(f, g, h), acc.pow(2));
                }
            }
        }
    }

    #[test]
    fn pushforward_requires_normality() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let alpha = Cochain3::trivial(g.clone());
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        assert!(matches!(
            pushforward_cocycle(&alpha, &[g.identity(), t]),
            Err(CocycleError::Group(GroupError::NotNormal { .. }))
        ));
    }
}
