use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::closure::{GroupElement, ProjectiveNormalize, ScalarMatrix};
use crate::cyclotomic::{lcm, CyclotomicNumber, RootOfUnity};

use super::RepError;

/// A permutation matrix with root-of-unity scalars: `M e_b = s_b e_{p(b)}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    perm: Vec<u32>,
    scalars: Vec<RootOfUnity>,
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, scalars: Vec<RootOfUnity>) -> Result<Self, RepError> {
        let n = perm.len();
        if scalars.len() != n {
            return Err(RepError::Dimension(format!(
                "{} scalars for a permutation of {n} points",
                scalars.len()
            )));
        }
        let mut hit = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return Err(RepError::Dimension("perm is not a bijection".into()));
            }
        }
        Ok(MonomialMatrix {
            perm: perm.into_iter().map(|p| p as u32).collect(),
            scalars,
        })
    }

    pub fn identity(dim: usize) -> Self {
        MonomialMatrix {
            perm: (0..dim as u32).collect(),
            scalars: vec![RootOfUnity::one(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Target index of basis vector `b`.
    #[inline]
    pub fn perm(&self, b: usize) -> usize {
        self.perm[b] as usize
    }

    /// Scalar carried by basis vector `b`.
    #[inline]
    pub fn scalar(&self, b: usize) -> RootOfUnity {
        self.scalars[b]
    }

    pub fn scalars(&self) -> &[RootOfUnity] {
        &self.scalars
    }

    /// Entry in row `r`, column `c`.
    pub fn entry(&self, r: usize, c: usize) -> Option<RootOfUnity> {
        (self.perm(c) == r).then(|| self.scalars[c])
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &MonomialMatrix) -> MonomialMatrix {
        let (perm, scalars) = rhs
            .perm
            .iter()
            .zip(&rhs.scalars)
            .map(|(&p, &s)| (self.perm[p as usize], s.mul(self.scalars[p as usize])))
            .unzip();
        MonomialMatrix { perm, scalars }
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let n = self.dim();
        let mut perm = vec![0u32; n];
        let mut scalars = vec![RootOfUnity::one(); n];
        for b in 0..n {
            let p = self.perm(b);
            perm[p] = b as u32;
            scalars[p] = self.scalars[b].inv();
        }
        MonomialMatrix { perm, scalars }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &p)| k == p as usize) && self.scalars.iter().all(|s| s.is_one())
    }

    /// `sign(p) · ∏ s_b`.
    pub fn determinant(&self) -> RootOfUnity {
        let n = self.dim();
        let mut seen = vec![false; n];
        let mut odd = false;
        for start in 0..n {
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.perm(k);
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                odd = !odd;
            }
        }
        let prod = self.scalars.iter().fold(RootOfUnity::one(), |a, s| a.mul(*s));
        if odd {
            prod.mul(RootOfUnity::minus_one())
        } else {
            prod
        }
    }

    /// Smallest conductor containing every scalar.
    pub fn natural_conductor(&self) -> u32 {
        self.scalars.iter().fold(1u32, |acc, s| lcm(acc, s.order() as u32))
    }

    pub fn to_dense(&self, conductor: u32) -> Result<DenseMatrix, RepError> {
        let n = self.dim();
        let mut m = DenseMatrix::zero(n, conductor);
        for b in 0..n {
            m.entries[self.perm(b) * n + b] = self.scalars[b].to_cyclotomic(conductor)?;
        }
        Ok(m)
    }

    pub fn scalar_value(&self) -> Option<RootOfUnity> {
        let s = *self.scalars.first()?;
        (self.perm.iter().enumerate().all(|(k, &p)| k == p as usize) && self.scalars.iter().all(|&x| x == s))
            .then_some(s)
    }
}

impl fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.dim()).map(|b| format!("{}->{}:{}", b, self.perm(b), self.scalars[b])))
            .finish()
    }
}

impl GroupElement for MonomialMatrix {
    fn compose(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn try_inverse(&self) -> Option<Self> {
        Some(self.inverse())
    }
}

impl ProjectiveNormalize for MonomialMatrix {
    fn projective_normal(&self) -> Self {
        let Some(b) = self.perm.iter().position(|&p| p == 0) else {
            return self.clone();
        };
        let s = self.scalars[b].inv();
        MonomialMatrix {
            perm: self.perm.clone(),
            scalars: self.scalars.iter().map(|x| x.mul(s)).collect(),
        }
    }
}

impl ScalarMatrix for MonomialMatrix {
    fn as_scalar(&self) -> Option<CyclotomicNumber> {
        self.scalar_value().map(RootOfUnity::to_cyclotomic_min)
    }
}

/// A square matrix over `Q(ζ_N)` with every entry stored at the same conductor `N`.
///
/// Equality and hashing compare the stored representation, so two matrices
/// are equal only if they also share the conductor; use [`DenseMatrix::coerce`]
/// before comparing matrices built at different conductors.
#[derive(Clone)]
pub struct DenseMatrix {
    dim: usize,
    conductor: u32,
    entries: Vec<CyclotomicNumber>,
}

impl DenseMatrix {
    /// Row-major entries, each coerced to `conductor`.
    pub fn new(dim: usize, conductor: u32, entries: Vec<CyclotomicNumber>) -> Result<Self, RepError> {
        if entries.len() != dim * dim {
            return Err(RepError::Dimension(format!(
                "{} entries for a {dim}×{dim} matrix",
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .map(|z| z.coerce(conductor))
            .collect::<Result<_, _>>()?;
        Ok(DenseMatrix {
            dim,
            conductor,
            entries,
        })
    }

    pub fn zero(dim: usize, conductor: u32) -> Self {
        DenseMatrix {
            dim,
            conductor,
            entries: vec![CyclotomicNumber::zero(conductor); dim * dim],
        }
    }

    pub fn identity(dim: usize, conductor: u32) -> Self {
        let mut m = Self::zero(dim, conductor);
        for k in 0..dim {
            m.entries[k * dim + k] = CyclotomicNumber::one(conductor);
        }
        m
    }

    /// Diagonal matrix at the lcm of the entries' conductors.
    pub fn diagonal(diag: &[CyclotomicNumber]) -> Self {
        let n = diag.iter().fold(1, |acc, z| lcm(acc, z.conductor()));
        let mut m = Self::zero(diag.len(), n);
        for (k, z) in diag.iter().enumerate() {
            m.entries[k * diag.len() + k] = z.coerce(n).expect("lcm conductor");
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &CyclotomicNumber {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, z: CyclotomicNumber) -> Result<(), RepError> {
        self.entries[r * self.dim + c] = z.coerce(self.conductor)?;
        Ok(())
    }

    pub fn entries(&self) -> &[CyclotomicNumber] {
        &self.entries
    }

    pub fn coerce(&self, conductor: u32) -> Result<Self, RepError> {
        if conductor == self.conductor {
            return Ok(self.clone());
        }
        Self::new(self.dim, conductor, self.entries.clone())
    }

    /// `self · rhs`, lifted to the lcm conductor when the two differ.
    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        if self.conductor != rhs.conductor {
            let n = lcm(self.conductor, rhs.conductor);
            return self.coerce(n).unwrap().mul(&rhs.coerce(n).unwrap());
        }
        let d = self.dim;
        let mut out = Self::zero(d, self.conductor);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.multiply(b);
                    let slot = &mut out.entries[i * d + j];
                    *slot = slot.try_add(&t);
                }
            }
        }
        out
    }

    pub fn scale(&self, z: &CyclotomicNumber) -> DenseMatrix {
        let n = lcm(self.conductor, z.conductor());
        let z = z.coerce(n).expect("lcm conductor");
        let base = self.coerce(n).expect("lcm conductor");
        DenseMatrix {
            dim: self.dim,
            conductor: n,
            entries: base.entries.iter().map(|e| e.multiply(&z)).collect(),
        }
    }

    /// Entrywise complex conjugate of the transpose.
    pub fn conjugate_transpose(&self) -> DenseMatrix {
        let d = self.dim;
        let mut out = Self::zero(d, self.conductor);
        for i in 0..d {
            for j in 0..d {
                out.entries[j * d + i] = self.get(i, j).conjugate();
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..d).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    /// Fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> CyclotomicNumber {
        let d = self.dim;
        if d == 0 {
            return CyclotomicNumber::one(self.conductor);
        }
        let mut a: Vec<CyclotomicNumber> = self.entries.clone();
        let mut prev = CyclotomicNumber::one(self.conductor);
        let mut negate = false;
        for k in 0..d - 1 {
            if a[k * d + k].is_zero() {
                let Some(p) = (k + 1..d).find(|&r| !a[r * d + k].is_zero()) else {
                    return CyclotomicNumber::zero(self.conductor);
                };
                for c in 0..d {
                    a.swap(k * d + c, p * d + c);
                }
                negate = !negate;
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    let t = a[i * d + j]
                        .multiply(&a[k * d + k])
                        .try_sub(&a[i * d + k].multiply(&a[k * d + j]));
                    a[i * d + j] = t.divide(&prev).expect("Bareiss pivot is nonzero");
                }
            }
            prev = a[k * d + k].clone();
        }
        let det = a[d * d - 1].clone();
        if negate {
            -&det
        } else {
            det
        }
    }

    /// Exact inverse. Unitary matrices are recognized and inverted by the
    /// conjugate transpose; anything else goes through Gauss–Jordan.
    pub fn inverse(&self) -> Option<DenseMatrix> {
        let h = self.conjugate_transpose();
        if self.mul(&h).is_identity() {
            return Some(h);
        }
        self.gauss_jordan_inverse()
    }

    fn gauss_jordan_inverse(&self) -> Option<DenseMatrix> {
        let d = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(d, self.conductor);
        for col in 0..d {
            let p = (col..d).find(|&r| !a.get(r, col).is_zero())?;
            if p != col {
                for c in 0..d {
                    a.entries.swap(col * d + c, p * d + c);
                    inv.entries.swap(col * d + c, p * d + c);
                }
            }
            let piv = a.get(col, col).inverse().ok()?;
            for c in 0..d {
                a.entries[col * d + c] = a.get(col, c).multiply(&piv);
                inv.entries[col * d + c] = inv.get(col, c).multiply(&piv);
            }
            for r in 0..d {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for c in 0..d {
                    let t = a.get(r, c).try_sub(&f.multiply(a.get(col, c)));
                    a.entries[r * d + c] = t;
                    let t = inv.get(r, c).try_sub(&f.multiply(inv.get(col, c)));
                    inv.entries[r * d + c] = t;
                }
            }
        }
        Some(inv)
    }

    pub fn scalar_value(&self) -> Option<CyclotomicNumber> {
        let d = self.dim;
        let s = self.entries.first()?;
        let ok = (0..d).all(|i| {
            (0..d).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e == s
                } else {
                    e.is_zero()
                }
            })
        });
        ok.then(|| s.clone())
    }
}

impl PartialEq for DenseMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.conductor == other.conductor
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.raw_eq(b))
    }
}

impl Eq for DenseMatrix {}

impl Hash for DenseMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        for e in &self.entries {
            e.raw_hash(state);
        }
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

impl GroupElement for DenseMatrix {
    fn compose(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn try_inverse(&self) -> Option<Self> {
        self.inverse()
    }
}

impl ProjectiveNormalize for DenseMatrix {
    fn projective_normal(&self) -> Self {
        let Some(lead) = self.entries.iter().find(|e| !e.is_zero()) else {
            return self.clone();
        };
        if lead.is_one() {
            return self.clone();
        }
        let inv = lead.inverse().expect("nonzero");
        DenseMatrix {
            dim: self.dim,
            conductor: self.conductor,
            entries: self.entries.iter().map(|e| e.multiply(&inv)).collect(),
        }
    }
}

impl ScalarMatrix for DenseMatrix {
    fn as_scalar(&self) -> Option<CyclotomicNumber> {
        self.scalar_value()
    }
}

/// A braid generator image of either shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MatrixJson", try_from = "MatrixJson")]
pub enum Matrix {
    Monomial(MonomialMatrix),
    Dense(DenseMatrix),
}

impl Matrix {
    pub fn dim(&self) -> usize {
        match self {
            Matrix::Monomial(m) => m.dim(),
            Matrix::Dense(m) => m.dim(),
        }
    }

    /// Smallest conductor at which the matrix is stored exactly.
    pub fn conductor(&self) -> u32 {
        match self {
            Matrix::Monomial(m) => m.natural_conductor(),
            Matrix::Dense(m) => m.conductor(),
        }
    }

    pub fn to_dense(&self, conductor: u32) -> Result<DenseMatrix, RepError> {
        match self {
            Matrix::Monomial(m) => m.to_dense(conductor),
            Matrix::Dense(m) => m.coerce(conductor),
        }
    }

    pub fn as_monomial(&self) -> Option<&MonomialMatrix> {
        match self {
            Matrix::Monomial(m) => Some(m),
            Matrix::Dense(_) => None,
        }
    }

    pub fn as_dense(&self) -> Option<&DenseMatrix> {
        match self {
            Matrix::Dense(m) => Some(m),
            Matrix::Monomial(_) => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Matrix::Monomial(m) => m.is_identity(),
            Matrix::Dense(m) => m.is_identity(),
        }
    }

    /// Value equality across shapes and conductors.
    pub fn same_values(&self, other: &Matrix) -> bool {
        match (self, other) {
            (Matrix::Monomial(a), Matrix::Monomial(b)) => a == b,
            _ => {
                let n = lcm(self.conductor(), other.conductor());
                match (self.to_dense(n), other.to_dense(n)) {
                    (Ok(a), Ok(b)) => a == b,
                    _ => false,
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum MatrixJson {
    Monomial {
        dim: usize,
        perm: Vec<usize>,
        scalars: Vec<RootOfUnity>,
    },
    Dense {
        dim: usize,
        conductor: u32,
        entries: Vec<Vec<CyclotomicNumber>>,
    },
}

impl From<Matrix> for MatrixJson {
    fn from(m: Matrix) -> Self {
        match m {
            Matrix::Monomial(m) => MatrixJson::Monomial {
                dim: m.dim(),
                perm: m.perm.iter().map(|&p| p as usize).collect(),
                scalars: m.scalars,
            },
            Matrix::Dense(m) => MatrixJson::Dense {
                dim: m.dim,
                conductor: m.conductor,
                entries: m.entries.chunks(m.dim.max(1)).map(|r| r.to_vec()).collect(),
            },
        }
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = RepError;

    fn try_from(j: MatrixJson) -> Result<Self, RepError> {
        match j {
            MatrixJson::Monomial { dim, perm, scalars } => {
                if perm.len() != dim {
                    return Err(RepError::Dimension(format!("dim {dim} but {} perm entries", perm.len())));
                }
                Ok(Matrix::Monomial(MonomialMatrix::new(perm, scalars)?))
            }
            MatrixJson::Dense {
                dim,
                conductor,
                entries,
            } => {
                if entries.len() != dim || entries.iter().any(|r| r.len() != dim) {
                    return Err(RepError::Dimension(format!("entries are not {dim}×{dim}")));
                }
                Ok(Matrix::Dense(DenseMatrix::new(
                    dim,
                    conductor,
                    entries.into_iter().flatten().collect(),
                )?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, e: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(n, e)
    }

    #[test]
    fn monomial_product_matches_dense() {
        let a = MonomialMatrix::new(vec![1, 2, 0], vec![RootOfUnity::new(4, 1), RootOfUnity::one(), RootOfUnity::new(3, 1)]).unwrap();
        let b = MonomialMatrix::new(vec![0, 2, 1], vec![RootOfUnity::minus_one(), RootOfUnity::new(4, 3), RootOfUnity::one()]).unwrap();
        let n = 12;
        assert_eq!(a.mul(&b).to_dense(n).unwrap(), a.to_dense(n).unwrap().mul(&b.to_dense(n).unwrap()));
        assert!(a.mul(&a.inverse()).is_identity());
        assert_eq!(
            a.determinant().to_cyclotomic(n).unwrap(),
            a.to_dense(n).unwrap().determinant()
        );
    }

    #[test]
    fn transposition_determinant() {
        let s = MonomialMatrix::new(vec![1, 0], vec![RootOfUnity::one(); 2]).unwrap();
        assert_eq!(s.determinant(), RootOfUnity::minus_one());
        assert_eq!(s.to_dense(1).unwrap().determinant(), CyclotomicNumber::from_integer(1, -1));
    }

    #[test]
    fn scalar_determinant() {
        let l = z(8, 3);
        let m = DenseMatrix::diagonal(&[l.clone(), l.clone(), l.clone()]);
        assert_eq!(m.determinant(), l.pow(3).unwrap());
        assert!(DenseMatrix::identity(4, 5).determinant().is_one());
    }

    #[test]
    fn determinant_needs_pivoting() {
        let one = CyclotomicNumber::one(4);
        let zero = CyclotomicNumber::zero(4);
        let m = DenseMatrix::new(3, 4, vec![zero.clone(), one.clone(), zero.clone(), one.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone(), z(4, 1)]).unwrap();
        assert_eq!(m.determinant(), -&z(4, 1));
    }

    #[test]
    fn gauss_jordan_inverse() {
        let e = |k: i64| CyclotomicNumber::from_integer(3, k);
        let m = DenseMatrix::new(2, 3, vec![e(2), z(3, 1), e(1), e(1)]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(DenseMatrix::zero(2, 3).inverse().is_none());
    }

    #[test]
    fn projective_normal_form() {
        let m = DenseMatrix::diagonal(&[z(4, 1), CyclotomicNumber::one(4)]);
        let p = m.projective_normal();
        assert!(p.get(0, 0).is_one());
        assert_eq!(*p.get(1, 1), z(4, 3));
    }

    #[test]
    fn json_round_trip() {
        let a = Matrix::Monomial(MonomialMatrix::new(vec![1, 0], vec![RootOfUnity::new(8, 3), RootOfUnity::minus_one()]).unwrap());
        let b = Matrix::Dense(DenseMatrix::new(2, 8, vec![z(8, 1), z(8, 2), CyclotomicNumber::zero(8), z(8, 7)]).unwrap());
        for m in [a, b] {
            let text = serde_json::to_string(&m).unwrap();
            let back: Matrix = serde_json::from_str(&text).unwrap();
            assert_eq!(back, m);
        }
    }
}
