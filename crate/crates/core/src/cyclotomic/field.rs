//! Cyclotomic polynomials and the per-conductor reduction data shared by
//! every [`CyclotomicNumber`](super::CyclotomicNumber) at that conductor.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
///
/// Computed by dividing `x^n - 1` by `Φ_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let mut memo: HashMap<u32, Vec<i64>> = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let divisor = cyclotomic_memo(d, memo);
            poly = divide_monic(&poly, &divisor);
        }
    }
    memo.insert(n, poly.clone());
    poly
}

/// Exact quotient of `num` by the monic polynomial `den`; the remainder must vanish.
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Reduction data for `Q(ζ_N)` in the power basis `1, ζ, …, ζ^{φ(N)-1}`.
#[derive(Debug)]
pub(crate) struct FieldData {
    pub conductor: u32,
    pub degree: usize,
    /// Monic `Φ_N`, constant term first, length `degree + 1`.
    pub phi: Vec<i64>,
}

impl FieldData {
    fn new(conductor: u32) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        FieldData {
            conductor,
            degree: phi.len() - 1,
            phi,
        }
    }

    /// Reduce a polynomial (any length) modulo `Φ_N` in place, truncating to `degree`.
    pub fn reduce(&self, poly: &mut Vec<BigInt>) {
        let d = self.degree;
        if poly.len() > d {
            for k in (d..poly.len()).rev() {
                if poly[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut poly[k]);
                let base = k - d;
                for j in 0..d {
                    let pj = self.phi[j];
                    if pj != 0 {
                        poly[base + j] -= &c * pj;
                    }
                }
            }
        }
        poly.resize(d, BigInt::zero());
    }

    /// The power-basis vector of `ζ_N^e`.
    pub fn monomial(&self, e: u64) -> Vec<BigInt> {
        let e = (e % self.conductor as u64) as usize;
        let mut v = vec![BigInt::zero(); e.max(self.degree - 1) + 1];
        v[e] = BigInt::from(1);
        self.reduce(&mut v);
        v
    }
}

type FieldCache = RwLock<HashMap<u32, Arc<FieldData>>>;

fn cache() -> &'static FieldCache {
    static CACHE: OnceLock<FieldCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared reduction data for conductor `n`; built once per conductor.
pub(crate) fn field(n: u32) -> Arc<FieldData> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(f) = cache().read().expect("field cache poisoned").get(&n) {
        return f.clone();
    }
    let built = Arc::new(FieldData::new(n));
    cache()
        .write()
        .expect("field cache poisoned")
        .entry(n)
        .or_insert(built)
        .clone()
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..=120 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n) as usize, "n={n}");
        }
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        // Smallest n whose cyclotomic polynomial has a coefficient outside {-1,0,1}.
        let p = cyclotomic_polynomial(105);
        assert!(p.contains(&-2));
        assert!(cyclotomic_polynomial(104).iter().all(|c| c.abs() <= 1));
    }

    #[test]
    fn product_over_divisors_is_x_pow_n_minus_one() {
        for n in [1u32, 6, 12, 15, 16, 30] {
            let mut prod = vec![1i64];
            for d in (1..=n).filter(|d| n % d == 0) {
                let f = cyclotomic_polynomial(d);
                let mut next = vec![0i64; prod.len() + f.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in f.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                prod = next;
            }
            let mut expect = vec![0i64; n as usize + 1];
            expect[0] = -1;
            expect[n as usize] = 1;
            assert_eq!(prod, expect, "n={n}");
        }
    }
}
