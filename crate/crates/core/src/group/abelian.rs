use num_integer::Integer;

use super::{FiniteGroup, GroupError};
use crate::cyclotomic::RootOfUnity;

/// `Z/d_1 × … × Z/d_k` with `d_1 | d_2 | … | d_k`, elements indexed in mixed
/// radix with the first coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
    order: usize,
}

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: &[u32]) -> Result<Self, GroupError> {
        if let Some(&d) = invariant_factors.iter().find(|&&d| d < 2) {
            return Err(GroupError::InvariantFactors(format!("factor {d} is below 2")));
        }
        for w in invariant_factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(GroupError::InvariantFactors(format!(
                    "{} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        let order = invariant_factors.iter().map(|&d| d as usize).product::<usize>();
        if order > super::MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        Ok(FiniteAbelianGroup {
            factors: invariant_factors.to_vec(),
            order,
        })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            factors: Vec::new(),
            order: 1,
        }
    }

    pub fn invariant_factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1) as u64
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn coords(&self, mut a: usize) -> Vec<u32> {
        let mut c = vec![0u32; self.factors.len()];
        for (i, &d) in self.factors.iter().enumerate().rev() {
            c[i] = (a % d as usize) as u32;
            a /= d as usize;
        }
        c
    }

    pub fn index(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &d)| acc * d as usize + (c % d) as usize)
    }

    pub fn generator(&self, i: usize) -> usize {
        let mut c = vec![0u32; self.rank()];
        c[i] = 1;
        self.index(&c)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let c: Vec<u32> = ca
            .iter()
            .zip(&cb)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        self.index(&c)
    }

    pub fn neg(&self, a: usize) -> usize {
        let c: Vec<u32> = self
            .coords(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| (d - x) % d)
            .collect();
        self.index(&c)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// The same group as a [`FiniteGroup`] with identical element indices.
    pub fn to_group(&self) -> FiniteGroup {
        let groups: Vec<FiniteGroup> = self
            .factors
            .iter()
            .map(|&d| FiniteGroup::cyclic(d as usize).expect("factor within limits"))
            .collect();
        if groups.is_empty() {
            FiniteGroup::cyclic(1).expect("trivial group")
        } else {
            FiniteGroup::product(&groups).expect("order within limits")
        }
    }
}

/// A bimultiplicative pairing `A × A → μ_∞`, determined by its values on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter {
    group: FiniteAbelianGroup,
    gram: Vec<Vec<RootOfUnity>>,
    table: Vec<RootOfUnity>,
}

impl Bicharacter {
    /// Build from generator values `gram[i][j] = χ(e_i, e_j)`.
    ///
    /// Each value must have order dividing `gcd(d_i, d_j)`. Symmetry is
    /// required unless `allow_asymmetric` is set (braidings of pointed categories).
    fn build(
        group: &FiniteAbelianGroup,
        gram: Vec<Vec<RootOfUnity>>,
        allow_asymmetric: bool,
    ) -> Result<Self, GroupError> {
        let k = group.rank();
        if gram.len() != k || gram.iter().any(|r| r.len() != k) {
            return Err(GroupError::Form(format!("gram matrix must be {k}×{k}")));
        }
        for i in 0..k {
            for j in 0..k {
                let g = group.factors[i].gcd(&group.factors[j]) as u64;
                if g % gram[i][j].order() != 0 {
                    return Err(GroupError::Form(format!(
                        "value {} on generators ({i},{j}) has order not dividing {g}",
                        gram[i][j]
                    )));
                }
                if !allow_asymmetric && gram[i][j] != gram[j][i] {
                    return Err(GroupError::Form(format!("gram matrix not symmetric at ({i},{j})")));
                }
            }
        }
        let n = group.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            let ca = group.coords(a);
            for b in 0..n {
                let cb = group.coords(b);
                let mut v = RootOfUnity::one();
                for i in 0..k {
                    for j in 0..k {
                        let e = ca[i] as i64 * cb[j] as i64;
                        if e != 0 {
                            v = v.mul(gram[i][j].pow(e));
                        }
                    }
                }
                table.push(v);
            }
        }
        Ok(Bicharacter {
            group: group.clone(),
            gram,
            table,
        })
    }

    pub fn from_gram(group: &FiniteAbelianGroup, gram: Vec<Vec<RootOfUnity>>) -> Result<Self, GroupError> {
        Self::build(group, gram, false)
    }

    /// A possibly asymmetric bimultiplicative form, as used for pointed braidings.
    pub fn bimultiplicative_from_gram(
        group: &FiniteAbelianGroup,
        gram: Vec<Vec<RootOfUnity>>,
    ) -> Result<Self, GroupError> {
        Self::build(group, gram, true)
    }

    /// Recover the companion bicharacter `χ(a,b) = q(a)q(b)/q(a+b)` of a value table.
    pub fn from_quadratic_values(
        group: &FiniteAbelianGroup,
        q: &[RootOfUnity],
    ) -> Result<Self, GroupError> {
        if q.len() != group.order() {
            return Err(GroupError::Form(format!(
                "expected {} values of q, found {}",
                group.order(),
                q.len()
            )));
        }
        let k = group.rank();
        let gram = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let (a, b) = (group.generator(i), group.generator(j));
                        q[a].mul(q[b]).div(q[group.add(a, b)])
                    })
                    .collect()
            })
            .collect();
        Self::from_gram(group, gram)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn gram(&self) -> &[Vec<RootOfUnity>] {
        &self.gram
    }

    #[inline]
    pub fn value(&self, a: usize, b: usize) -> RootOfUnity {
        self.table[a * self.group.order() + b]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|a| (0..n).all(|b| self.value(a, b) == self.value(b, a)))
    }

    /// `a ↦ χ(a, ·)` is injective.
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.group.order();
        (1..n).all(|a| (0..n).any(|b| !self.value(a, b).is_one()))
    }
}

/// A validated quadratic form `q` with companion bicharacter `χ`:
/// `q(a+b)χ(a,b) = q(a)q(b)` and `q(a) = q(-a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    chi: Bicharacter,
    values: Vec<RootOfUnity>,
}

impl QuadraticForm {
    pub fn group(&self) -> &FiniteAbelianGroup {
        self.chi.group()
    }

    pub fn bicharacter(&self) -> &Bicharacter {
        &self.chi
    }

    #[inline]
    pub fn value(&self, a: usize) -> RootOfUnity {
        self.values[a]
    }

    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }
}

/// Outcome of [`check_quadratic_form`]; failures are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticFormReport {
    /// Pairs `(a, b)` with `q(a+b)χ(a,b) ≠ q(a)q(b)`.
    pub functional_failures: Vec<(usize, usize)>,
    /// Elements with `q(a) ≠ q(-a)`.
    pub evenness_failures: Vec<usize>,
    pub chi_symmetric: bool,
    pub chi_nondegenerate: bool,
    pub form: Option<QuadraticForm>,
}

impl QuadraticFormReport {
    pub fn passed(&self) -> bool {
        self.form.is_some()
    }
}

pub fn check_quadratic_form(
    group: &FiniteAbelianGroup,
    chi: &Bicharacter,
    q: &[RootOfUnity],
) -> Result<QuadraticFormReport, GroupError> {
    if chi.group() != group {
        return Err(GroupError::Form("bicharacter is defined on a different group".into()));
    }
    if q.len() != group.order() {
        return Err(GroupError::Form(format!(
            "expected {} values of q, found {}",
            group.order(),
            q.len()
        )));
    }
    let n = group.order();
    let mut functional_failures = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if q[group.add(a, b)].mul(chi.value(a, b)) != q[a].mul(q[b]) {
                functional_failures.push((a, b));
            }
        }
    }
    let evenness_failures: Vec<usize> = (0..n).filter(|&a| q[a] != q[group.neg(a)]).collect();
    let chi_symmetric = chi.is_symmetric();
    let chi_nondegenerate = chi.is_nondegenerate();
    let ok = functional_failures.is_empty() && evenness_failures.is_empty() && chi_symmetric && chi_nondegenerate;
    Ok(QuadraticFormReport {
        functional_failures,
        evenness_failures,
        chi_symmetric,
        chi_nondegenerate,
        form: ok.then(|| QuadraticForm {
            chi: chi.clone(),
            values: q.to_vec(),
        }),
    })
}

/// Every pair `(χ, q)` on `A` with `χ` symmetric non-degenerate and `q` a
/// quadratic form for it.
///
/// Generator values range over `μ_{gcd(d_i,d_j)}` for `χ` and `μ_{2d_i}` for
/// `q(e_i)`; the rest of `q` is forced by the functional equation and the
/// candidates are filtered by [`check_quadratic_form`].
pub fn enumerate_quadratic_forms(group: &FiniteAbelianGroup) -> Vec<QuadraticForm> {
    let k = group.rank();
    let f = group.invariant_factors();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let chi_radices: Vec<u64> = pairs.iter().map(|&(i, j)| f[i].gcd(&f[j]) as u64).collect();
    let q_radices: Vec<u64> = f.iter().map(|&d| 2 * d as u64).collect();
    let mut out = Vec::new();
    for chi_digits in mixed_radix(&chi_radices) {
        let mut gram = vec![vec![RootOfUnity::one(); k]; k];
        for (&(i, j), (&digit, &radix)) in pairs.iter().zip(chi_digits.iter().zip(&chi_radices)) {
            let r = RootOfUnity::new(radix, digit as i64);
            gram[i][j] = r;
            gram[j][i] = r;
        }
        let chi = Bicharacter::from_gram(group, gram).expect("orders divide the gcd");
        if !chi.is_nondegenerate() {
            continue;
        }
        for q_digits in mixed_radix(&q_radices) {
            let gen_values: Vec<RootOfUnity> = q_digits
                .iter()
                .zip(&q_radices)
                .map(|(&d, &r)| RootOfUnity::new(r, d as i64))
                .collect();
            let q = extend_quadratic(group, &chi, &gen_values);
            let report = check_quadratic_form(group, &chi, &q).expect("shapes agree");
            if let Some(form) = report.form {
                out.push(form);
            }
        }
    }
    out
}

/// Extend generator values by `q(a + e_i) = q(a) q(e_i) / χ(a, e_i)`, walking
/// coordinates in index order.
fn extend_quadratic(group: &FiniteAbelianGroup, chi: &Bicharacter, gen_values: &[RootOfUnity]) -> Vec<RootOfUnity> {
    let mut q = vec![RootOfUnity::one(); group.order()];
    for a in 1..group.order() {
        let c = group.coords(a);
        let i = c.iter().rposition(|&x| x != 0).expect("a is nonzero");
        let e = group.generator(i);
        let prev = group.sub(a, e);
        q[a] = q[prev].mul(gen_values[i]).div(chi.value(prev, e));
    }
    q
}

fn mixed_radix(radices: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &r in radices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..r).map(move |d| {
                    let mut p = prefix.clone();
                    p.push(d);
                    p
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RootOfUnity {
        s.parse().unwrap()
    }

    #[test]
    fn invariant_factor_validation() {
        assert!(FiniteAbelianGroup::new(&[2, 4]).is_ok());
        assert!(FiniteAbelianGroup::new(&[2, 3]).is_err());
        assert!(FiniteAbelianGroup::new(&[1]).is_err());
        assert_eq!(FiniteAbelianGroup::new(&[]).unwrap().order(), 1);
    }

    #[test]
    fn abelian_arithmetic_matches_group_table() {
        let a = FiniteAbelianGroup::new(&[2, 4]).unwrap();
        let g = a.to_group();
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.add(x, y), g.mul(x, y));
            }
            assert_eq!(a.neg(x), g.inv(x));
        }
    }

    #[test]
    fn z2_quadratic_form_passes() {
        let a = FiniteAbelianGroup::new(&[2]).unwrap();
        let chi = Bicharacter::from_gram(&a, vec![vec![r("-1")]]).unwrap();
        let rep = check_quadratic_form(&a, &chi, &[r("1"), r("i")]).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn z2_constant_form_fails_at_one_one() {
        let a = FiniteAbelianGroup::new(&[2]).unwrap();
        let chi = Bicharacter::from_gram(&a, vec![vec![r("-1")]]).unwrap();
        let rep = check_quadratic_form(&a, &chi, &[r("1"), r("1")]).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.functional_failures, vec![(1, 1)]);
    }

    #[test]
    fn trivial_group_form() {
        let a = FiniteAbelianGroup::trivial();
        let chi = Bicharacter::from_gram(&a, vec![]).unwrap();
        assert!(check_quadratic_form(&a, &chi, &[RootOfUnity::one()]).unwrap().passed());
    }

    #[test]
    fn gram_order_condition() {
        let a = FiniteAbelianGroup::new(&[2]).unwrap();
        assert!(Bicharacter::from_gram(&a, vec![vec![r("i")]]).is_err());
        let b = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        assert!(Bicharacter::from_gram(&b, vec![vec![r("1"), r("-1")], vec![r("1"), r("1")]]).is_err());
        assert!(Bicharacter::bimultiplicative_from_gram(&b, vec![vec![r("1"), r("-1")], vec![r("1"), r("1")]]).is_ok());
    }

    #[test]
    fn enumeration_counts() {
        // Z/2: q(1) = ±i. Z/3: q(1) = χ(1,1) ∈ {ω, ω²}. Z/2×Z/2: 4 non-degenerate χ, 4 forms each.
        let count = |f: &[u32]| enumerate_quadratic_forms(&FiniteAbelianGroup::new(f).unwrap()).len();
        assert_eq!(count(&[2]), 2);
        assert_eq!(count(&[3]), 2);
        assert_eq!(count(&[2, 2]), 16);
        assert_eq!(count(&[]), 1);
    }

    #[test]
    fn enumeration_matches_brute_force_on_z2() {
        // Every table q: Z/2 → μ_8 and every χ(1,1) ∈ {±1}, checked directly.
        let a = FiniteAbelianGroup::new(&[2]).unwrap();
        let mut brute = Vec::new();
        for c in ["1", "-1"] {
            let chi = Bicharacter::from_gram(&a, vec![vec![r(c)]]).unwrap();
            for e0 in 0..8 {
                for e1 in 0..8 {
                    let q = [RootOfUnity::new(8, e0), RootOfUnity::new(8, e1)];
                    if check_quadratic_form(&a, &chi, &q).unwrap().passed() {
                        brute.push(q.to_vec());
                    }
                }
            }
        }
        let mut enumerated: Vec<Vec<RootOfUnity>> = enumerate_quadratic_forms(&a)
            .into_iter()
            .map(|f| f.values().to_vec())
            .collect();
        brute.sort();
        enumerated.sort();
        assert_eq!(brute, enumerated);
    }

    #[test]
    fn companion_from_values() {
        let a = FiniteAbelianGroup::new(&[3]).unwrap();
        let w = RootOfUnity::new(3, 1);
        let chi = Bicharacter::from_quadratic_values(&a, &[RootOfUnity::one(), w, w]).unwrap();
        assert_eq!(chi.value(1, 1), w);
    }
}
