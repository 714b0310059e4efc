use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::{CyclotomicNumber, FieldError};

/// A root of unity `ζ_N^e`, kept as the reduced fraction `e/N` in `Q/Z`.
///
/// After reduction `N` is the exact multiplicative order, so structural
/// equality is value equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u64,
    exp: u64,
}

impl RootOfUnity {
    pub fn new(n: u64, e: i64) -> Self {
        assert!(n >= 1, "root of unity with conductor 0");
        let e = e.rem_euclid(n as i64) as u64;
        let g = e.gcd(&n);
        if e == 0 {
            return Self::one();
        }
        RootOfUnity {
            order: n / g,
            exp: e / g,
        }
    }

    pub const fn one() -> Self {
        RootOfUnity { order: 1, exp: 0 }
    }

    pub const fn minus_one() -> Self {
        RootOfUnity { order: 2, exp: 1 }
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponent `e` in `ζ_order^e`, coprime to the order.
    pub fn exponent(&self) -> u64 {
        self.exp
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// Exponent of this root written over `ζ_n`; `None` when the order does not divide `n`.
    pub fn exponent_at(&self, n: u64) -> Option<u64> {
        (n % self.order == 0).then(|| self.exp * (n / self.order))
    }

    pub fn mul(self, rhs: Self) -> Self {
        let l = self.order.lcm(&rhs.order);
        let e = self.exp * (l / self.order) + rhs.exp * (l / rhs.order);
        Self::new(l, (e % l) as i64)
    }

    pub fn inv(self) -> Self {
        Self::new(self.order, -(self.exp as i64))
    }

    pub fn div(self, rhs: Self) -> Self {
        self.mul(rhs.inv())
    }

    pub fn pow(self, k: i64) -> Self {
        let e = (self.exp as i128 * k as i128).rem_euclid(self.order as i128);
        Self::new(self.order, e as i64)
    }

    /// A square root: `ζ_N^e ↦ ζ_{2N}^e`.
    pub fn sqrt(self) -> Self {
        Self::new(self.order * 2, self.exp as i64)
    }

    /// The `k`-th root `ζ_N^e ↦ ζ_{kN}^e`.
    pub fn root(self, k: u64) -> Self {
        Self::new(self.order * k, self.exp as i64)
    }

    /// Exact value in `Q(ζ_n)`. Roots of order `2·N'` with `N'` odd embed in
    /// `Q(ζ_{N'})` as well, so the requirement is `order | lcm(2, n)`.
    pub fn to_cyclotomic(self, n: u32) -> Result<CyclotomicNumber, FieldError> {
        let n64 = n as u64;
        if let Some(e) = self.exponent_at(n64) {
            return Ok(CyclotomicNumber::root_of_unity(n, e as i64));
        }
        if n64 % 2 == 1 && (2 * n64) % self.order == 0 {
            // ζ_{2n} = -ζ_n^{(n+1)/2}
            let e = self.exp * (2 * n64 / self.order);
            let z = CyclotomicNumber::root_of_unity(n, (e * (n64 + 1) / 2) as i64);
            return Ok(if e % 2 == 1 { -z } else { z });
        }
        Err(FieldError::RootNotInField {
            order: self.order,
            conductor: n,
        })
    }

    /// Exact value in the smallest cyclotomic field containing it.
    pub fn to_cyclotomic_min(self) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(self.order as u32, self.exp as i64)
    }

    /// Recognise an exact cyclotomic value as a root of unity.
    pub fn from_cyclotomic(z: &CyclotomicNumber) -> Option<Self> {
        let n = z.conductor();
        let ord = z.order_of_root(u64::MAX)?;
        (0..ord)
            .filter(|e| e.gcd(&ord) == 1 || ord == 1)
            .map(|e| RootOfUnity::new(ord, e as i64))
            .find(|r| r.to_cyclotomic(n).map(|v| &v == z).unwrap_or(false))
    }

    pub fn evaluate_numeric(&self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI * self.exp as f64 / self.order as f64;
        (theta.cos(), theta.sin())
    }
}

impl Default for RootOfUnity {
    fn default() -> Self {
        Self::one()
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exp) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (4, 1) => write!(f, "i"),
            (4, 3) => write!(f, "-i"),
            (n, 1) => write!(f, "z{n}"),
            (n, e) => write!(f, "z{n}^{e}"),
        }
    }
}

/// Parses `1`, `-1`, `i`, `-i`, `zN`, `zN^e` (negative `e` allowed) and `e(a/b)` meaning `exp(2πi·a/b)`.
impl FromStr for RootOfUnity {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || FieldError::Parse(s.to_string());
        match t {
            "1" => return Ok(Self::one()),
            "-1" => return Ok(Self::minus_one()),
            "i" => return Ok(Self::new(4, 1)),
            "-i" => return Ok(Self::new(4, 3)),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix('z') {
            let (n, e) = match rest.split_once('^') {
                Some((n, e)) => (n, e.trim_start_matches('(').trim_end_matches(')')),
                None => (rest, "1"),
            };
            let n: u64 = n.parse().map_err(|_| bad())?;
            let e: i64 = e.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(Self::new(n, e));
        }
        if let Some(frac) = t.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
            let (a, b) = frac.split_once('/').ok_or_else(bad)?;
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            return Ok(Self::new(b, a));
        }
        Err(bad())
    }
}

impl serde::Serialize for RootOfUnity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RootOfUnity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_canonical() {
        assert_eq!(RootOfUnity::new(8, 4), RootOfUnity::minus_one());
        assert_eq!(RootOfUnity::new(6, 2), RootOfUnity::new(3, 1));
        assert_eq!(RootOfUnity::new(5, -5), RootOfUnity::one());
        assert_eq!(RootOfUnity::new(12, 9).order(), 4);
    }

    #[test]
    fn group_law() {
        let a = RootOfUnity::new(4, 1);
        let b = RootOfUnity::new(6, 1);
        assert_eq!(a.mul(b), RootOfUnity::new(12, 5));
        assert_eq!(a.mul(a.inv()), RootOfUnity::one());
        assert_eq!(b.pow(6), RootOfUnity::one());
        assert_eq!(b.pow(-1), b.inv());
        assert_eq!(a.sqrt().pow(2), a);
    }

    #[test]
    fn parse_and_display() {
        for s in ["1", "-1", "i", "-i", "z8", "z8^3", "z12^5"] {
            let r: RootOfUnity = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("z8^-1".parse::<RootOfUnity>().unwrap(), RootOfUnity::new(8, 7));
        assert_eq!("e(1/3)".parse::<RootOfUnity>().unwrap(), RootOfUnity::new(3, 1));
        assert!("z0".parse::<RootOfUnity>().is_err());
        assert!("2".parse::<RootOfUnity>().is_err());
    }

    #[test]
    fn odd_conductor_embedding() {
        let r = RootOfUnity::new(6, 1);
        let z = r.to_cyclotomic(3).unwrap();
        assert_eq!(z, CyclotomicNumber::root_of_unity(6, 1));
        assert_eq!(
            RootOfUnity::minus_one().to_cyclotomic(1).unwrap(),
            CyclotomicNumber::from_integer(1, -1)
        );
        assert!(RootOfUnity::new(4, 1).to_cyclotomic(3).is_err());
    }

    #[test]
    fn recognise_roots() {
        for (n, e) in [(1u64, 0i64), (2, 1), (8, 3), (12, 7), (6, 1)] {
            let r = RootOfUnity::new(n, e);
            let z = r.to_cyclotomic(24).unwrap();
            assert_eq!(RootOfUnity::from_cyclotomic(&z), Some(r));
        }
        assert_eq!(
            RootOfUnity::from_cyclotomic(&CyclotomicNumber::from_integer(4, 2)),
            None
        );
    }
}
