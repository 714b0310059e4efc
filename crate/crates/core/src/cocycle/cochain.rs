use std::sync::Arc;

use crate::cyclotomic::RootOfUnity;
use crate::group::FiniteGroup;

use super::CocycleError;

/// A 2-cochain `G² → μ_∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain2 {
    group: Arc<FiniteGroup>,
    values: Vec<RootOfUnity>,
}

/// A 3-cochain `G³ → μ_∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain3 {
    group: Arc<FiniteGroup>,
    values: Vec<RootOfUnity>,
}

impl Cochain2 {
    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        Cochain2 {
            group,
            values: vec![RootOfUnity::one(); n * n],
        }
    }

    pub fn from_fn(group: Arc<FiniteGroup>, f: impl Fn(usize, usize) -> RootOfUnity) -> Self {
        let n = group.order();
        let values = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| f(a, b)).collect();
        Cochain2 { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> RootOfUnity {
        self.values[a * self.group.order() + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: RootOfUnity) {
        let n = self.group.order();
        self.values[a * n + b] = v;
    }

    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }
}

impl Cochain3 {
    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        Cochain3 {
            group,
            values: vec![RootOfUnity::one(); n * n * n],
        }
    }

    pub fn from_fn(group: Arc<FiniteGroup>, f: impl Fn(usize, usize, usize) -> RootOfUnity) -> Self {
        let n = group.order();
        let mut values = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    values.push(f(a, b, c));
                }
            }
        }
        Cochain3 { group, values }
    }

    pub fn from_values(group: Arc<FiniteGroup>, values: Vec<RootOfUnity>) -> Result<Self, CocycleError> {
        let n = group.order();
        if values.len() != n * n * n {
            return Err(CocycleError::Shape {
                expected: n * n * n,
                found: values.len(),
            });
        }
        Ok(Cochain3 { group, values })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> RootOfUnity {
        let n = self.group.order();
        self.values[(a * n + b) * n + c]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: RootOfUnity) {
        let n = self.group.order();
        self.values[(a * n + b) * n + c] = v;
    }

    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Cochain3) -> Result<Cochain3, CocycleError> {
        if self.group != other.group {
            return Err(CocycleError::GroupMismatch);
        }
        Ok(Cochain3 {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.mul(*b)).collect(),
        })
    }

    /// Pointwise quotient `self / other`.
    pub fn div(&self, other: &Cochain3) -> Result<Cochain3, CocycleError> {
        if self.group != other.group {
            return Err(CocycleError::GroupMismatch);
        }
        Ok(Cochain3 {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.div(*b)).collect(),
        })
    }

    pub fn pow(&self, k: i64) -> Cochain3 {
        Cochain3 {
            group: self.group.clone(),
            values: self.values.iter().map(|a| a.pow(k)).collect(),
        }
    }

    /// Inflation along a homomorphism `φ: H → G` given by its value table:
    /// `(φ*α)(a,b,c) = α(φa, φb, φc)`.
    pub fn pullback(&self, source: Arc<FiniteGroup>, hom: &[usize]) -> Result<Cochain3, CocycleError> {
        let g = &self.group;
        if hom.len() != source.order() || hom.iter().any(|&x| x >= g.order()) {
            return Err(CocycleError::Homomorphism("table has the wrong shape".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if hom[source.mul(a, b)] != g.mul(hom[a], hom[b]) {
                    return Err(CocycleError::Homomorphism(format!(
                        "φ({a}·{b}) ≠ φ({a})·φ({b})"
                    )));
                }
            }
        }
        Ok(Cochain3::from_fn(source, |a, b, c| self.get(hom[a], hom[b], hom[c])))
    }

    /// Least common multiple of the orders of all values.
    pub fn value_exponent(&self) -> u64 {
        use num_integer::Integer;
        self.values.iter().fold(1u64, |acc, v| acc.lcm(&v.order()))
    }
}

/// `(dr)(f,g,h) = r(g,h) r(f,gh) r(fg,h)⁻¹ r(f,g)⁻¹`.
pub fn coboundary3(r: &Cochain2) -> Cochain3 {
    let g = r.group.clone();
    let gg = g.clone();
    Cochain3::from_fn(g, move |f, x, h| {
        r.get(x, h)
            .mul(r.get(f, gg.mul(x, h)))
            .div(r.get(gg.mul(f, x), h))
            .div(r.get(f, x))
    })
}

/// First quadruple `(g₀,g₁,g₂,g₃)` where `dα ≠ 1`, if any.
pub fn cocycle_violation(alpha: &Cochain3) -> Option<[usize; 4]> {
    let g = alpha.group();
    for g0 in g.elements() {
        for g1 in g.elements() {
            let g01 = g.mul(g0, g1);
            for g2 in g.elements() {
                let g12 = g.mul(g1, g2);
                for g3 in g.elements() {
                    let v = alpha
                        .get(g1, g2, g3)
                        .div(alpha.get(g01, g2, g3))
                        .mul(alpha.get(g0, g12, g3))
                        .div(alpha.get(g0, g1, g.mul(g2, g3)))
                        .mul(alpha.get(g0, g1, g2));
                    if !v.is_one() {
                        return Some([g0, g1, g2, g3]);
                    }
                }
            }
        }
    }
    None
}

pub fn is_cocycle(alpha: &Cochain3) -> bool {
    cocycle_violation(alpha).is_none()
}

pub(crate) fn require_cocycle(alpha: &Cochain3) -> Result<(), CocycleError> {
    match cocycle_violation(alpha) {
        Some(q) => Err(CocycleError::NotACocycle(q)),
        None => Ok(()),
    }
}

/// `α(a,b,c) = ζ_k^{j·a·⌊(b+c)/k⌋}` on `Z/k`; represents the class `j ∈ Z/k ≅ H³(Z/k, C^×)`.
pub fn builtin_cocycle_cyclic(k: usize, j: i64) -> Result<Cochain3, CocycleError> {
    let g = Arc::new(FiniteGroup::cyclic(k).map_err(CocycleError::Group)?);
    let k64 = k as u64;
    Ok(Cochain3::from_fn(g, move |a, b, c| {
        RootOfUnity::new(k64, j * a as i64 * ((b + c) / k) as i64)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_z2_values() {
        let a = builtin_cocycle_cyclic(2, 1).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let expect = if (x, y, z) == (1, 1, 1) {
                        RootOfUnity::minus_one()
                    } else {
                        RootOfUnity::one()
                    };
                    assert_eq!(a.get(x, y, z), expect);
                }
            }
        }
        assert!(is_cocycle(&a));
    }

    #[test]
    fn builtin_z4_value() {
        let a = builtin_cocycle_cyclic(4, 1).unwrap();
        assert_eq!(a.get(1, 3, 3), RootOfUnity::new(4, 1));
        assert!(builtin_cocycle_cyclic(5, 0).unwrap().values().iter().all(|v| v.is_one()));
    }

    #[test]
    fn single_flipped_value_is_not_a_cocycle() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let mut a = Cochain3::trivial(g);
        assert!(is_cocycle(&a));
        // Flipping only α(1,1,1) gives the builtin generator, which is a cocycle;
        // flipping only α(0,1,1) is not.
        a.set(0, 1, 1, RootOfUnity::minus_one());
        assert!(cocycle_violation(&a).is_some());
    }

    #[test]
    fn coboundary_of_z2_cochain() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let mut r = Cochain2::trivial(g);
        r.set(1, 1, RootOfUnity::new(4, 1));
        let d = coboundary3(&r);
        // Each of the 8 four-term products contains r(1,1) once in the numerator
        // and once in the denominator, or not at all.
        assert!(d.values().iter().all(|v| v.is_one()));
        assert!(is_cocycle(&d));
    }
}
