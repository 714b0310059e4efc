use std::fmt;

use rand::Rng;

use super::BraidError;

/// A word in the Artin generators `σ_1, …, σ_{n-1}` of `B_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::Strands(0));
        }
        for &(i, s) in &letters {
            if i == 0 || i >= strands {
                return Err(BraidError::GeneratorIndex { index: i, strands });
            }
            if s != 1 && s != -1 {
                return Err(BraidError::Parse(format!("exponent {s} on s{i}")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord {
            strands: strands.max(1),
            letters: Vec::new(),
        }
    }

    /// Parse whitespace-separated letters such as `s1 s2 s1^-1`.
    pub fn parse(strands: usize, text: &str) -> Result<Self, BraidError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let body = tok
                .strip_prefix('s')
                .ok_or_else(|| BraidError::Parse(format!("`{tok}` does not start with `s`")))?;
            let (idx, sign) = match body.split_once('^') {
                Some((i, "-1")) => (i, -1),
                Some((i, "1")) => (i, 1),
                Some(_) => return Err(BraidError::Parse(format!("`{tok}`: exponent must be 1 or -1"))),
                None => (body, 1),
            };
            let i: usize = idx
                .parse()
                .map_err(|_| BraidError::Parse(format!("`{tok}`: bad generator index")))?;
            letters.push((i, sign));
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::Strands(other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// Uniformly random letters; requires `strands ≥ 2`.
    pub fn random<R: Rng + ?Sized>(strands: usize, len: usize, rng: &mut R) -> Self {
        assert!(strands >= 2, "B_1 has no generators");
        let letters = (0..len)
            .map(|_| (rng.gen_range(1..strands), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        BraidWord { strands, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(i, s)) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{i}")?;
            if s < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Image in `S_n`: entry `k` is the strand that ends in position `k`.
pub fn symmetric_image(word: &BraidWord) -> Vec<usize> {
    let mut p: Vec<usize> = (0..word.strands()).collect();
    for &(i, _) in word.letters() {
        p.swap(i - 1, i);
    }
    p
}

pub fn is_pure(word: &BraidWord) -> bool {
    symmetric_image(word).iter().enumerate().all(|(k, &v)| k == v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w = BraidWord::parse(3, "s1 s2 s1^-1").unwrap();
        assert_eq!(w.letters(), &[(1, 1), (2, 1), (1, -1)]);
        assert_eq!(w.to_string(), "s1 s2 s1^-1");
        assert_eq!(w.inverse().to_string(), "s1 s2^-1 s1^-1");
    }

    #[test]
    fn parse_errors() {
        assert!(BraidWord::parse(3, "s3").is_err());
        assert!(BraidWord::parse(3, "s0").is_err());
        assert!(BraidWord::parse(3, "t1").is_err());
        assert!(BraidWord::parse(3, "s1^2").is_err());
        assert!(BraidWord::parse(3, "").unwrap().is_empty());
    }

    #[test]
    fn symmetric_images() {
        assert!(is_pure(&BraidWord::parse(2, "s1 s1").unwrap()));
        assert!(is_pure(&BraidWord::empty(4)));
        let p = symmetric_image(&BraidWord::parse(3, "s1 s2").unwrap());
        // A 3-cycle: no fixed points.
        assert!(p.iter().enumerate().all(|(k, &v)| k != v));
    }
}
