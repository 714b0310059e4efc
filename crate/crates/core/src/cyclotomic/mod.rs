//! Exact arithmetic in cyclotomic fields.
//!
//! Every structure constant, matrix entry and determinant produced by the
//! crate lives in some `Q(ζ_N)`. Equality is decided on canonical rational
//! coordinates; floating point is only used for display and for choosing the
//! positive square root in [`sqrt_positive_integer`].

mod field;
mod number;
mod root;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use field::{cyclotomic_polynomial, euler_phi};
pub(crate) use field::lcm;
pub use number::CyclotomicNumber;
pub use root::RootOfUnity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot coerce from conductor {from} to {to}: not a multiple")]
    BadCoercion { from: u32, to: u32 },
    #[error("conductor {conductor} expects {expected} coefficients, found {found}")]
    CoefficientLength {
        conductor: u32,
        expected: usize,
        found: usize,
    },
    #[error("root of unity of order {order} does not lie in Q(zeta_{conductor})")]
    RootNotInField { order: u64, conductor: u32 },
    #[error("value is not a root of unity: {0}")]
    NotARoot(String),
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

fn primes_of_squarefree_part(mut m: u64) -> (u64, Vec<u64>) {
    let mut square = 1u64;
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        square *= p.pow(k / 2);
        if k % 2 == 1 {
            primes.push(p);
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    (square, primes)
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// `±√p` for a prime `p`, built from the quadratic Gauss sum.
fn sqrt_prime(p: u64) -> CyclotomicNumber {
    if p == 2 {
        return &CyclotomicNumber::root_of_unity(8, 1) + &CyclotomicNumber::root_of_unity(8, -1);
    }
    let n = if p % 4 == 1 { p as u32 } else { 4 * p as u32 };
    let step = (n as u64 / p) as i64;
    let mut g = CyclotomicNumber::zero(n);
    for a in 1..p {
        let term = CyclotomicNumber::root_of_unity(n, a as i64 * step);
        g = if legendre(a, p) == 1 {
            &g + &term
        } else {
            &g - &term
        };
    }
    // g² = p for p ≡ 1 (mod 4) and -p otherwise, when (i·g)² = p.
    if p % 4 == 1 {
        g
    } else {
        g.mul_root(n as i64 / 4)
    }
}

/// The positive square root of `m` as an exact cyclotomic number.
///
/// The sign is fixed by a floating-point evaluation in the embedding
/// `ζ_N ↦ e^{2πi/N}`; exactness of `s² = m` does not depend on it.
pub fn sqrt_positive_integer(m: u64) -> CyclotomicNumber {
    assert!(m >= 1, "square root of a non-positive integer");
    let (square, primes) = primes_of_squarefree_part(m);
    let conductor = primes.iter().fold(1u32, |acc, &p| {
        let c = match p {
            2 => 8,
            p if p % 4 == 1 => p as u32,
            p => 4 * p as u32,
        };
        lcm(acc, c)
    });
    let mut s = CyclotomicNumber::from_integer(conductor, square as i64);
    for p in primes {
        s = &s * &sqrt_prime(p);
    }
    let s = s.coerce(conductor).expect("conductor covers all prime factors");
    if s.evaluate_numeric(12).0 < 0.0 {
        -s
    } else {
        s
    }
}

/// Serialized scalar: `{"conductor": N, "coeffs": [["p", "q"], …]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ScalarJson {
    pub conductor: u32,
    pub coeffs: Vec<(String, String)>,
}

impl From<&CyclotomicNumber> for ScalarJson {
    fn from(z: &CyclotomicNumber) -> Self {
        ScalarJson {
            conductor: z.conductor(),
            coeffs: z
                .coeffs()
                .into_iter()
                .map(|c| (c.numer().to_string(), c.denom().to_string()))
                .collect(),
        }
    }
}

impl TryFrom<&ScalarJson> for CyclotomicNumber {
    type Error = FieldError;

    fn try_from(s: &ScalarJson) -> Result<Self, FieldError> {
        if s.conductor == 0 {
            return Err(FieldError::Parse("conductor 0".into()));
        }
        let coeffs = s
            .coeffs
            .iter()
            .map(|(p, q)| {
                let p = BigInt::from_str(p).map_err(|_| FieldError::Parse(p.clone()))?;
                let q = BigInt::from_str(q).map_err(|_| FieldError::Parse(q.clone()))?;
                if q == BigInt::from(0) {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(BigRational::new(p, q))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CyclotomicNumber::from_coeffs(s.conductor, &coeffs)
    }
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ScalarJson::deserialize(d)?;
        CyclotomicNumber::try_from(&raw).map_err(serde::de::Error::custom)
    }
}

/// A scalar in an input file: either the full serialized form or root-of-unity
/// shorthand such as `"-1"`, `"i"` or `"z8^3"`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ScalarInput {
    Root(String),
    Exact(ScalarJson),
}

impl ScalarInput {
    pub fn to_root(&self) -> Result<RootOfUnity, FieldError> {
        match self {
            ScalarInput::Root(s) => s.parse(),
            ScalarInput::Exact(j) => {
                let z = CyclotomicNumber::try_from(j)?;
                RootOfUnity::from_cyclotomic(&z).ok_or_else(|| FieldError::NotARoot(z.to_string()))
            }
        }
    }

    pub fn from_root(r: RootOfUnity) -> Self {
        ScalarInput::Root(r.to_string())
    }
}
