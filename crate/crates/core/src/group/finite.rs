use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// Largest group the table representation accepts.
pub const MAX_GROUP_ORDER: usize = 1000;

/// A finite group on the element indices `0..order` with precomputed tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
}

/// Description of a group in input files.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic { k: usize },
    Dihedral { k: usize },
    Symmetric { k: usize },
    Table { mul: Vec<Vec<usize>> },
    Product { factors: Vec<GroupSpec> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        FiniteGroup::from_spec(self)
    }
}

impl FiniteGroup {
    pub fn from_spec(spec: &GroupSpec) -> Result<Self, GroupError> {
        match spec {
            GroupSpec::Cyclic { k } => Self::cyclic(*k),
            GroupSpec::Dihedral { k } => Self::dihedral(*k),
            GroupSpec::Symmetric { k } => Self::symmetric(*k),
            GroupSpec::Table { mul } => Self::from_table(mul.clone()),
            GroupSpec::Product { factors } => {
                let groups = factors
                    .iter()
                    .map(Self::from_spec)
                    .collect::<Result<Vec<_>, _>>()?;
                Self::product(&groups)
            }
        }
    }

    /// Validate an explicit Cayley table: `mul[a][b]` is the index of `a·b`.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = mul.len();
        if n == 0 {
            return Err(GroupError::Table("empty table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        for (a, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Table(format!(
                    "row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::Table(format!("entry {bad} in row {a} out of range")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = Vec::with_capacity(n);
        for g in 0..n {
            let h = (0..n)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or(GroupError::NoInverse(g))?;
            inv.push(h as u32);
        }
        Ok(FiniteGroup {
            order: n,
            mul: mul.into_iter().flatten().map(|x| x as u32).collect(),
            inv,
            identity,
        })
    }

    /// `Z/k` written additively on `0..k`.
    pub fn cyclic(k: usize) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::Table("cyclic group of order 0".into()));
        }
        if k > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(k));
        }
        Ok(FiniteGroup {
            order: k,
            mul: (0..k)
                .flat_map(|a| (0..k).map(move |b| ((a + b) % k) as u32))
                .collect(),
            inv: (0..k).map(|a| ((k - a) % k) as u32).collect(),
            identity: 0,
        })
    }

    /// Dihedral group of order `2k`: index `s·k + r` stands for `t^s ρ^r`.
    pub fn dihedral(k: usize) -> Result<Self, GroupError> {
        if k == 0 || 2 * k > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(2 * k));
        }
        let idx = |s: usize, r: usize| s * k + r;
        let mut table = vec![vec![0usize; 2 * k]; 2 * k];
        for s1 in 0..2 {
            for r1 in 0..k {
                for s2 in 0..2 {
                    for r2 in 0..k {
                        // ρ^{r1} t^{s2} = t^{s2} ρ^{±r1}
                        let r1c = if s2 == 1 { (k - r1) % k } else { r1 };
                        table[idx(s1, r1)][idx(s2, r2)] = idx((s1 + s2) % 2, (r1c + r2) % k);
                    }
                }
            }
        }
        Self::from_table(table)
    }

    /// Symmetric group on `k` letters; elements are permutations in lexicographic order
    /// and `a·b` is the composition `x ↦ a(b(x))`.
    pub fn symmetric(k: usize) -> Result<Self, GroupError> {
        if k > 6 {
            return Err(GroupError::TooLarge((1..=k).product()));
        }
        let perms = permutations(k);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c: Vec<usize> = (0..k).map(|x| a[b[x]]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }

    /// Direct product; index is mixed radix with the first factor most significant.
    pub fn product(factors: &[FiniteGroup]) -> Result<Self, GroupError> {
        let order: usize = factors.iter().map(|g| g.order).product();
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let split = |mut x: usize| {
            let mut parts = vec![0usize; factors.len()];
            for (i, g) in factors.iter().enumerate().rev() {
                parts[i] = x % g.order;
                x /= g.order;
            }
            parts
        };
        let join = |parts: &[usize]| {
            parts
                .iter()
                .zip(factors)
                .fold(0usize, |acc, (&p, g)| acc * g.order + p)
        };
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            let pa = split(a);
            for b in 0..order {
                let pb = split(b);
                let pc: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, g)| g.mul(pa[i], pb[i]))
                    .collect();
                mul.push(join(&pc) as u32);
            }
        }
        let inv = (0..order)
            .map(|a| {
                let pa = split(a);
                let pi: Vec<usize> = factors.iter().enumerate().map(|(i, g)| g.inv(pa[i])).collect();
                join(&pi) as u32
            })
            .collect();
        let identity = join(&factors.iter().map(|g| g.identity).collect::<Vec<_>>());
        Ok(FiniteGroup {
            order,
            mul,
            inv,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn mul_all(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The Cayley table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul
            .chunks(self.order)
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    /// Exhaustive associativity, identity and inverse check of the stored tables.
    pub fn validate(&self) -> Result<(), GroupError> {
        Self::from_table(self.table()).map(|_| ())
    }

    /// Check that `set` is a normal subgroup.
    pub fn check_normal_subgroup(&self, set: &[usize]) -> Result<BTreeSet<usize>, GroupError> {
        let n: BTreeSet<usize> = set.iter().copied().collect();
        if let Some(&bad) = n.iter().find(|&&x| x >= self.order) {
            return Err(GroupError::NotASubgroup(format!("element {bad} out of range")));
        }
        if !n.contains(&self.identity) {
            return Err(GroupError::NotASubgroup("missing identity".into()));
        }
        for &a in &n {
            for &b in &n {
                if !n.contains(&self.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!(
                        "{a}·{b} = {} not in the set",
                        self.mul(a, b)
                    )));
                }
            }
        }
        for g in self.elements() {
            for &a in &n {
                if !n.contains(&self.conj(g, a)) {
                    return Err(GroupError::NotNormal { g, n: a });
                }
            }
        }
        Ok(n)
    }

    /// Quotient by a normal subgroup: returns `G/N` and the projection `G → G/N`.
    ///
    /// Cosets are numbered by their smallest element, in increasing order.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        let n = self.check_normal_subgroup(normal)?;
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if proj[g] == usize::MAX {
                let id = reps.len();
                reps.push(g);
                for &h in &n {
                    proj[self.mul(g, h)] = id;
                }
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| proj[self.mul(a, b)]).collect())
            .collect();
        Ok((FiniteGroup::from_table(table)?, proj))
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.mul(1, 3), 0);
        assert_eq!(z4.inv(1), 3);
        z4.validate().unwrap();
    }

    #[test]
    fn symmetric_three_has_three_involutions() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        let involutions = s3.elements().filter(|&g| s3.element_order(g) == 2).count();
        assert_eq!(involutions, 3);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn dihedral_and_products_are_groups() {
        for k in 1..=6 {
            let d = FiniteGroup::dihedral(k).unwrap();
            assert_eq!(d.order(), 2 * k);
            d.validate().unwrap();
        }
        let p = FiniteGroup::product(&[
            FiniteGroup::cyclic(2).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
        ])
        .unwrap();
        assert_eq!(p.order(), 12);
        p.validate().unwrap();
        assert!(!p.is_abelian());
    }

    #[test]
    fn bad_tables_are_rejected() {
        // x·y = x - y mod 3 is not associative.
        let t: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| (a + 3 - b) % 3).collect())
            .collect();
        assert!(matches!(
            FiniteGroup::from_table(t),
            Err(GroupError::NotAssociative { .. })
        ));
        let t = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(FiniteGroup::from_table(t), Err(GroupError::NoIdentity)));
        // Associative monoid with identity 0 where 1 has no inverse.
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_table(t), Err(GroupError::NoInverse(1))));
    }

    #[test]
    fn quotients() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let (q, proj) = z4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj, vec![0, 1, 0, 1]);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let transposition = (0..6).find(|&g| s3.element_order(g) == 2).unwrap();
        assert!(matches!(
            s3.quotient(&[s3.identity(), transposition]),
            Err(GroupError::NotNormal { .. })
        ));
    }

    #[test]
    fn spec_json() {
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"cyclic","k":4}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 4);
        let spec: GroupSpec = serde_json::from_str(
            r#"{"kind":"product","factors":[{"kind":"cyclic","k":2},{"kind":"symmetric","k":3}]}"#,
        )
        .unwrap();
        assert_eq!(spec.build().unwrap().order(), 12);
        let spec: GroupSpec =
            serde_json::from_str(r#"{"kind":"table","mul":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 2);
    }
}
