//! The braided `G`-crossed structure on `Vec_G^α`: the tensor structure `μ`
//! of the conjugation action, the composition isomorphisms `γ`, and the
//! crossed braiding `c`, which is the identity on every simple.

use std::fmt;

use crate::cyclotomic::RootOfUnity;

use super::{require_cocycle, Cochain3, CocycleError};

/// Identity families that a crossed structure must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossedIdentity {
    /// `μ_g(xy,z)μ_g(x,y) / (μ_g(x,yz)μ_g(y,z)) = α(ᵍx,ᵍy,ᵍz)/α(x,y,z)`.
    TensorFunctor,
    /// `γ_{gh,f}(x) γ_{g,h}(ᶠx) = γ_{g,hf}(x) γ_{h,f}(x)`.
    ActionAssociativity,
    /// `μ_{gh}(x,y) / (μ_h(x,y) μ_g(ʰx,ʰy)) = γ_{g,h}(xy) / (γ_{g,h}(x)γ_{g,h}(y))`.
    MonoidalComposition,
    /// `μ_g(x,y) / μ_g(xyx⁻¹, x) = γ_{ᵍx,g}(y) / γ_{g,x}(y)`.
    Hexagon0,
    /// `c_{g,x} = 1`.
    TrivialCrossedBraiding,
}

impl fmt::Display for CrossedIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CrossedIdentity::TensorFunctor => "tensor-functor",
            CrossedIdentity::ActionAssociativity => "action-associativity",
            CrossedIdentity::MonoidalComposition => "monoidal-composition",
            CrossedIdentity::Hexagon0 => "hexagon-0",
            CrossedIdentity::TrivialCrossedBraiding => "trivial-crossed-braiding",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct CrossedStructure {
    alpha: Cochain3,
    mu: Vec<RootOfUnity>,
    gamma: Vec<RootOfUnity>,
    c: Vec<RootOfUnity>,
}

/// `μ_g(y,z) = α(ᵍy, ᵍz, g) α(g, y, z) / α(ᵍy, g, z)` where `ᵍy = gyg⁻¹`.
pub fn mu_value(alpha: &Cochain3, g: usize, y: usize, z: usize) -> RootOfUnity {
    let grp = alpha.group();
    let (gy, gz) = (grp.conj(g, y), grp.conj(g, z));
    alpha
        .get(gy, gz, g)
        .mul(alpha.get(g, y, z))
        .div(alpha.get(gy, g, z))
}

/// `γ_{g,h}(x) = α(g, ʰx, h) / (α(g, h, x) α(ᵍʰx, g, h))`.
pub fn gamma_value(alpha: &Cochain3, g: usize, h: usize, x: usize) -> RootOfUnity {
    let grp = alpha.group();
    let hx = grp.conj(h, x);
    let ghx = grp.conj(grp.mul(g, h), x);
    alpha
        .get(g, hx, h)
        .div(alpha.get(g, h, x))
        .div(alpha.get(ghx, g, h))
}

impl CrossedStructure {
    /// Tabulates the structure from a cocycle without verifying the identities.
    fn tabulate(alpha: &Cochain3) -> Self {
        let grp = alpha.group();
        let n = grp.order();
        let mut mu = Vec::with_capacity(n * n * n);
        let mut gamma = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    mu.push(mu_value(alpha, a, b, c));
                    gamma.push(gamma_value(alpha, a, b, c));
                }
            }
        }
        CrossedStructure {
            alpha: alpha.clone(),
            mu,
            gamma,
            c: vec![RootOfUnity::one(); n * n],
        }
    }

    pub fn alpha(&self) -> &Cochain3 {
        &self.alpha
    }

    #[inline]
    fn n(&self) -> usize {
        self.alpha.group().order()
    }

    /// `μ_g(y, z)`.
    #[inline]
    pub fn mu(&self, g: usize, y: usize, z: usize) -> RootOfUnity {
        let n = self.n();
        self.mu[(g * n + y) * n + z]
    }

    /// `γ_{g,h}(x)`.
    #[inline]
    pub fn gamma(&self, g: usize, h: usize, x: usize) -> RootOfUnity {
        let n = self.n();
        self.gamma[(g * n + h) * n + x]
    }

    /// `c_{g,x}`.
    #[inline]
    pub fn c(&self, g: usize, x: usize) -> RootOfUnity {
        self.c[g * self.n() + x]
    }

    /// First tuple violating one of the five identity families.
    pub fn first_violation(&self) -> Option<(CrossedIdentity, Vec<usize>)> {
        let grp = self.alpha.group().clone();
        let els = || grp.elements();
        for g in els() {
            for x in els() {
                for y in els() {
                    let lhs = self.mu(g, x, y).div(self.mu(g, grp.conj(x, y), x));
                    let rhs = self.gamma(grp.conj(g, x), g, y).div(self.gamma(g, x, y));
                    if lhs != rhs {
                        return Some((CrossedIdentity::Hexagon0, vec![g, x, y]));
                    }
                }
                if !self.c(g, x).is_one() {
                    return Some((CrossedIdentity::TrivialCrossedBraiding, vec![g, x]));
                }
            }
        }
        for g in els() {
            for x in els() {
                for y in els() {
                    for z in els() {
                        let lhs = self
                            .mu(g, grp.mul(x, y), z)
                            .mul(self.mu(g, x, y))
                            .div(self.mu(g, x, grp.mul(y, z)))
                            .div(self.mu(g, y, z));
                        let rhs = self
                            .alpha
                            .get(grp.conj(g, x), grp.conj(g, y), grp.conj(g, z))
                            .div(self.alpha.get(x, y, z));
                        if lhs != rhs {
                            return Some((CrossedIdentity::TensorFunctor, vec![g, x, y, z]));
                        }
                    }
                }
            }
        }
        for g in els() {
            for h in els() {
                for f in els() {
                    for x in els() {
                        let lhs = self
                            .gamma(grp.mul(g, h), f, x)
                            .mul(self.gamma(g, h, grp.conj(f, x)));
                        let rhs = self
                            .gamma(g, grp.mul(h, f), x)
                            .mul(self.gamma(h, f, x));
                        if lhs != rhs {
                            return Some((CrossedIdentity::ActionAssociativity, vec![g, h, f, x]));
                        }
                    }
                }
            }
        }
        for g in els() {
            for h in els() {
                for x in els() {
                    for y in els() {
                        let lhs = self
                            .mu(grp.mul(g, h), x, y)
                            .div(self.mu(h, x, y))
                            .div(self.mu(g, grp.conj(h, x), grp.conj(h, y)));
                        let rhs = self
                            .gamma(g, h, grp.mul(x, y))
                            .div(self.gamma(g, h, x))
                            .div(self.gamma(g, h, y));
                        if lhs != rhs {
                            return Some((CrossedIdentity::MonoidalComposition, vec![g, h, x, y]));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Build `μ, γ, c` for a cocycle and verify all five identity families
/// exhaustively. A violation is an internal-consistency error: the identities
/// are consequences of the cocycle condition.
pub fn crossed_structure(alpha: &Cochain3) -> Result<CrossedStructure, CocycleError> {
    require_cocycle(alpha)?;
    let s = CrossedStructure::tabulate(alpha);
    if let Some((family, tuple)) = s.first_violation() {
        return Err(CocycleError::IdentityFailure { family, tuple });
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cocycle::builtin_cocycle_cyclic;
    use crate::group::FiniteGroup;

    #[test]
    fn trivial_cocycle_gives_trivial_structure() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let s = crossed_structure(&Cochain3::trivial(g)).unwrap();
        assert!(s.mu.iter().chain(&s.gamma).all(|v| v.is_one()));
    }

    #[test]
    fn z2_gamma_value() {
        let alpha = builtin_cocycle_cyclic(2, 1).unwrap();
        let s = crossed_structure(&alpha).unwrap();
        // γ_{1,1}(1) = α(1,1,1) / (α(1,1,1) α(1,1,1)) = -1
        assert_eq!(s.gamma(1, 1, 1), RootOfUnity::minus_one());
    }

    #[test]
    fn z4_identities_hold() {
        let alpha = builtin_cocycle_cyclic(4, 1).unwrap();
        let s = crossed_structure(&alpha).unwrap();
        assert!(s.first_violation().is_none());
    }

    #[test]
    fn corrupted_table_is_caught() {
        let alpha = builtin_cocycle_cyclic(4, 1).unwrap();
        let mut s = CrossedStructure::tabulate(&alpha);
        s.gamma[5] = s.gamma[5].mul(RootOfUnity::minus_one());
        assert!(s.first_violation().is_some());
    }
}
