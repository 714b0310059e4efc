use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{field, lcm, prime_factors, FieldData};
use super::FieldError;

/// An exact element of the cyclotomic field `Q(ζ_N)`.
///
/// Stored as integer numerators over one positive common denominator in the
/// power basis `1, ζ_N, …, ζ_N^{φ(N)-1}`, with `gcd(numerators, den) = 1`.
/// Values at different conductors compare equal when they agree after
/// coercion to the lcm of the conductors.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<FieldData>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    fn from_parts(field: Arc<FieldData>, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len(), field.degree);
        let mut z = CyclotomicNumber { field, num, den };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(conductor: u32) -> Self {
        let f = field(conductor);
        let d = f.degree;
        CyclotomicNumber {
            field: f,
            num: vec![BigInt::zero(); d],
            den: BigInt::one(),
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_integer(conductor, 1)
    }

    pub fn from_integer(conductor: u32, n: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(conductor: u32, q: BigRational) -> Self {
        let f = field(conductor);
        let mut num = vec![BigInt::zero(); f.degree];
        num[0] = q.numer().clone();
        Self::from_parts(f, num, q.denom().clone())
    }

    /// `ζ_N^e` for any integer exponent.
    pub fn root_of_unity(conductor: u32, e: i64) -> Self {
        let f = field(conductor);
        let e = e.rem_euclid(conductor as i64) as u64;
        let num = f.monomial(e);
        CyclotomicNumber {
            field: f,
            num,
            den: BigInt::one(),
        }
    }

    /// Build from rational coordinates in the power basis of `Q(ζ_N)`.
    pub fn from_coeffs(conductor: u32, coeffs: &[BigRational]) -> Result<Self, FieldError> {
        let f = field(conductor);
        if coeffs.len() != f.degree {
            return Err(FieldError::CoefficientLength {
                conductor,
                expected: f.degree,
                found: coeffs.len(),
            });
        }
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_parts(f, num, den))
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    /// Power-basis coordinates as exact rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if this number lies in `Q`, read off the power basis.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The same value expressed at conductor `m`, which must be a multiple of this conductor.
    pub fn coerce(&self, m: u32) -> Result<Self, FieldError> {
        let n = self.conductor();
        if m == 0 || m % n != 0 {
            return Err(FieldError::BadCoercion { from: n, to: m });
        }
        Ok(self.coerce_unchecked(m))
    }

    pub(crate) fn coerce_unchecked(&self, m: u32) -> Self {
        let n = self.conductor();
        if m == n {
            return self.clone();
        }
        let target = field(m);
        let step = (m / n) as usize;
        let top = ((self.num.len().saturating_sub(1)) * step).max(target.degree.saturating_sub(1));
        let mut poly = vec![BigInt::zero(); top + 1];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                poly[k * step] = c.clone();
            }
        }
        target.reduce(&mut poly);
        CyclotomicNumber {
            field: target,
            num: poly,
            den: self.den.clone(),
        }
    }

    fn lift_pair(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor() == b.conductor() {
            (a.clone(), b.clone())
        } else {
            let m = lcm(a.conductor(), b.conductor());
            (a.coerce_unchecked(m), b.coerce_unchecked(m))
        }
    }

    fn add_same(&self, rhs: &Self, negate_rhs: bool) -> Self {
        debug_assert_eq!(self.conductor(), rhs.conductor());
        let num = if self.den == rhs.den {
            self.num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| if negate_rhs { a - b } else { a + b })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| {
                    let l = a * &rhs.den;
                    let r = b * &self.den;
                    if negate_rhs {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if self.den == rhs.den {
            self.den.clone()
        } else {
            &self.den * &rhs.den
        };
        Self::from_parts(self.field.clone(), num, den)
    }

    fn mul_same(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.conductor(), rhs.conductor());
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.conductor());
        }
        let d = self.field.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.field.reduce(&mut prod);
        Self::from_parts(self.field.clone(), prod, &self.den * &rhs.den)
    }

    pub fn try_add(&self, rhs: &Self) -> Self {
        let (a, b) = Self::lift_pair(self, rhs);
        a.add_same(&b, false)
    }

    pub fn try_sub(&self, rhs: &Self) -> Self {
        let (a, b) = Self::lift_pair(self, rhs);
        a.add_same(&b, true)
    }

    pub fn multiply(&self, rhs: &Self) -> Self {
        if self.conductor() == rhs.conductor() {
            return self.mul_same(rhs);
        }
        let (a, b) = Self::lift_pair(self, rhs);
        a.mul_same(&b)
    }

    /// Multiplication by `ζ_N^e`, cheaper than a general product.
    pub fn mul_root(&self, e: i64) -> Self {
        let n = self.conductor() as i64;
        let e = e.rem_euclid(n) as usize;
        if e == 0 || self.is_zero() {
            return self.clone();
        }
        let mut poly = vec![BigInt::zero(); self.num.len() + e];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                poly[k + e] = c.clone();
            }
        }
        self.field.reduce(&mut poly);
        CyclotomicNumber {
            field: self.field.clone(),
            num: poly,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * q.denom())
    }

    /// Multiplicative inverse, found by solving `x · self = 1` in the power basis.
    pub fn inverse(&self) -> Result<Self, FieldError> {
        self.one_like().divide(self)
    }

    /// Exact quotient `self / rhs`: solves the linear system `self = x · rhs`.
    pub fn divide(&self, rhs: &Self) -> Result<Self, FieldError> {
        if rhs.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (a, b) = Self::lift_pair(self, rhs);
        if a.is_zero() {
            return Ok(a);
        }
        let d = b.field.degree;
        // Column j of the system matrix is b·ζ^j; the common denominator of b cancels out
        // of the system once it is moved to the right-hand side.
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(d);
        let mut cur = b.num.clone();
        for j in 0..d {
            if j > 0 {
                let mut shifted = vec![BigInt::zero(); d + 1];
                for (k, c) in cur.iter().enumerate() {
                    shifted[k + 1] = c.clone();
                }
                b.field.reduce(&mut shifted);
                cur = shifted;
            }
            cols.push(cur.clone());
        }
        // Fraction-free Gauss-Jordan on the integer system (num_b-matrix) y = num_a.
        // Every intermediate entry is a minor, so each division by `prev` is exact.
        let mut rows: Vec<Vec<BigInt>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigInt> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(a.num[i].clone());
                row
            })
            .collect();
        let mut prev = BigInt::one();
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !rows[r][col].is_zero())
                .expect("multiplication by a nonzero field element is invertible");
            rows.swap(col, pivot);
            let (head, tail) = rows.split_at_mut(col);
            let (pivot_row, tail) = tail.split_first_mut().unwrap();
            for row in head.iter_mut().chain(tail.iter_mut()) {
                let factor = std::mem::take(&mut row[col]);
                for c in 0..=d {
                    if c == col {
                        continue;
                    }
                    let v = &pivot_row[col] * &row[c] - &factor * &pivot_row[c];
                    row[c] = v / &prev;
                }
            }
            prev = pivot_row[col].clone();
        }
        // y_i = rows[i][d] / det, and x = y · den_b / den_a.
        let denom = &prev * &a.den;
        let sol: Vec<BigRational> = rows
            .into_iter()
            .map(|mut r| BigRational::new(r.pop().unwrap() * &b.den, denom.clone()))
            .collect();
        CyclotomicNumber::from_coeffs(b.conductor(), &sol)
    }

    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_same(&sq);
            }
        }
        Ok(acc)
    }

    pub fn one_like(&self) -> Self {
        Self::one(self.conductor())
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.conductor())
    }

    /// Galois image under `ζ ↦ ζ^{-1}`; complex conjugation in the canonical embedding.
    pub fn conjugate(&self) -> Self {
        let n = self.conductor() as usize;
        let mut poly = vec![BigInt::zero(); n.max(self.num.len())];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                poly[(n - k) % n] += c;
            }
        }
        self.field.reduce(&mut poly);
        CyclotomicNumber {
            field: self.field.clone(),
            num: poly,
            den: self.den.clone(),
        }
    }

    /// Smallest `k ≤ cap` with `self^k = 1`, decided exactly.
    ///
    /// Every root of unity in `Q(ζ_N)` has order dividing `lcm(2, N)`, so the
    /// search only tests divisors of that number.
    pub fn order_of_root(&self, cap: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let l = lcm(2, self.conductor()) as u64;
        let is_one_at = |k: u64| self.pow(k as i64).map(|z| z.is_one()).unwrap_or(false);
        if !is_one_at(l) {
            return None;
        }
        let mut ord = l;
        for p in prime_factors(l) {
            while ord % p == 0 && is_one_at(ord / p) {
                ord /= p;
            }
        }
        (ord <= cap).then_some(ord)
    }

    /// Floating-point value under `ζ_N ↦ e^{2πi/N}`, rounded to `digits`
    /// decimal places (at most 15, the limit of `f64`). Diagnostics only.
    pub fn evaluate_numeric(&self, digits: u32) -> (f64, f64) {
        let n = self.conductor() as f64;
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = BigRational::new(c.clone(), self.den.clone())
                .to_f64()
                .unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += w * theta.cos();
            im += w * theta.sin();
        }
        let scale = 10f64.powi(digits.clamp(1, 15) as i32);
        ((re * scale).round() / scale, (im * scale).round() / scale)
    }

    /// Hash of the raw representation. Only consistent with `==` among values
    /// sharing one conductor, which is what matrix keys guarantee.
    pub(crate) fn raw_hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }

    pub(crate) fn raw_eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.den == other.den && self.num == other.num
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self.raw_eq(other);
        }
        let (a, b) = Self::lift_pair(self, other);
        a.raw_eq(&b)
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        write!(f, "(")?;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z{}", self.conductor())?,
                _ => write!(f, "{c}*z{}^{k}", self.conductor())?,
            }
        }
        write!(f, ")")?;
        if !self.den.is_one() {
            write!(f, "/{}", self.den)?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.try_add(rhs)
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.try_sub(rhs)
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.multiply(rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}
