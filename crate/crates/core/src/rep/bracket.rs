use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::cocycle::Cochain3;
use crate::cyclotomic::RootOfUnity;

use super::RepError;

/// A full binary bracketing of a sequence of leaves.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Bracketing {
    Leaf,
    Node(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn node(a: Bracketing, b: Bracketing) -> Self {
        Bracketing::Node(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Bracketing::Leaf => 1,
            Bracketing::Node(a, b) => a.leaves() + b.leaves(),
        }
    }

    /// `((x₁x₂)x₃)⋯x_n`.
    pub fn left_comb(n: usize) -> Self {
        assert!(n >= 1);
        (1..n).fold(Bracketing::Leaf, |acc, _| Bracketing::node(acc, Bracketing::Leaf))
    }

    /// `x₁(x₂(⋯x_n))`.
    pub fn right_comb(n: usize) -> Self {
        assert!(n >= 1);
        (1..n).fold(Bracketing::Leaf, |acc, _| Bracketing::node(Bracketing::Leaf, acc))
    }

    /// Left comb on the first `k` leaves, then the pair `(x_{k+1} x_{k+2})`,
    /// then the remaining leaves one at a time. Leaves are counted from 0.
    pub fn with_pair(n: usize, k: usize) -> Self {
        assert!(k + 1 < n);
        let pair = Bracketing::node(Bracketing::Leaf, Bracketing::Leaf);
        let mut t = if k == 0 {
            pair
        } else {
            Bracketing::node(Self::left_comb(k), pair)
        };
        for _ in k + 2..n {
            t = Bracketing::node(t, Bracketing::Leaf);
        }
        t
    }

    /// Random bracketing from recursive uniform splits.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        assert!(n >= 1);
        if n == 1 {
            return Bracketing::Leaf;
        }
        let k = rng.gen_range(1..n);
        Bracketing::node(Self::random(k, rng), Self::random(n - k, rng))
    }

    /// Every bracketing reachable by one associator move, with the scalar of
    /// that move: `((AB)C) → (A(BC))` costs `α(a,b,c)` and the reverse costs
    /// `α(a,b,c)⁻¹`, where `a, b, c` are the degrees of the blocks.
    pub fn moves(&self, alpha: &Cochain3, degrees: &[usize]) -> Vec<(Bracketing, RootOfUnity)> {
        let mut out = Vec::new();
        self.collect_moves(alpha, degrees, &mut |t, s| out.push((t, s)));
        out
    }

    fn collect_moves(&self, alpha: &Cochain3, degrees: &[usize], emit: &mut dyn FnMut(Bracketing, RootOfUnity)) {
        let Bracketing::Node(a, b) = self else {
            return;
        };
        let g = alpha.group();
        let prod = |s: &[usize]| g.mul_all(s);
        let na = a.leaves();
        if let Bracketing::Node(a1, a2) = a.as_ref() {
            let n1 = a1.leaves();
            let s = alpha.get(prod(&degrees[..n1]), prod(&degrees[n1..na]), prod(&degrees[na..]));
            emit(
                Bracketing::node((**a1).clone(), Bracketing::node((**a2).clone(), (**b).clone())),
                s,
            );
        }
        if let Bracketing::Node(b1, b2) = b.as_ref() {
            let n1 = na + b1.leaves();
            let s = alpha.get(prod(&degrees[..na]), prod(&degrees[na..n1]), prod(&degrees[n1..]));
            emit(
                Bracketing::node(Bracketing::node((**a).clone(), (**b1).clone()), (**b2).clone()),
                s.inv(),
            );
        }
        a.collect_moves(alpha, &degrees[..na], &mut |t, s| emit(Bracketing::node(t, (**b).clone()), s));
        b.collect_moves(alpha, &degrees[na..], &mut |t, s| emit(Bracketing::node((**a).clone(), t), s));
    }

    /// Scalar of the canonical path to the left comb: repeatedly rewrite the
    /// root `A(B C)` as `(A B)C`, then recurse into the left factor.
    fn to_left_comb(&self, alpha: &Cochain3, degrees: &[usize]) -> RootOfUnity {
        let g = alpha.group();
        let mut acc = RootOfUnity::one();
        let mut t = self.clone();
        let mut degs = degrees;
        loop {
            match t {
                Bracketing::Leaf => return acc,
                Bracketing::Node(a, b) => match *b {
                    Bracketing::Leaf => {
                        degs = &degs[..degs.len() - 1];
                        t = *a;
                    }
                    Bracketing::Node(b1, b2) => {
                        let na = a.leaves();
                        let n1 = na + b1.leaves();
                        let s = alpha.get(
                            g.mul_all(&degs[..na]),
                            g.mul_all(&degs[na..n1]),
                            g.mul_all(&degs[n1..]),
                        );
                        acc = acc.mul(s.inv());
                        t = Bracketing::Node(Box::new(Bracketing::Node(a, b1)), b2);
                    }
                },
            }
        }
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracketing::Leaf => f.write_str("x"),
            Bracketing::Node(a, b) => write!(f, "({a} {b})"),
        }
    }
}

impl FromStr for Bracketing {
    type Err = RepError;

    /// Parses `((x x) x)`: parentheses enclose exactly two parts and any other
    /// word is a leaf.
    fn from_str(s: &str) -> Result<Self, RepError> {
        let spaced = s.replace('(', " ( ").replace(')', " ) ");
        let toks: Vec<&str> = spaced.split_whitespace().collect();
        let mut pos = 0;
        let t = parse_tree(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(RepError::Bracketing(format!("trailing input in `{s}`")));
        }
        Ok(t)
    }
}

fn parse_tree(toks: &[&str], pos: &mut usize) -> Result<Bracketing, RepError> {
    let tok = toks
        .get(*pos)
        .ok_or_else(|| RepError::Bracketing("unexpected end of input".into()))?;
    *pos += 1;
    match *tok {
        "(" => {
            let a = parse_tree(toks, pos)?;
            let b = parse_tree(toks, pos)?;
            if toks.get(*pos) != Some(&")") {
                return Err(RepError::Bracketing("a bracket must hold exactly two parts".into()));
            }
            *pos += 1;
            Ok(Bracketing::node(a, b))
        }
        ")" => Err(RepError::Bracketing("unbalanced `)`".into())),
        _ => Ok(Bracketing::Leaf),
    }
}

/// Scalar of the associativity isomorphism `from → to` on simple objects of
/// the given degrees, computed as the path `from → left comb → to`.
pub fn assoc_scalar(
    alpha: &Cochain3,
    degrees: &[usize],
    from: &Bracketing,
    to: &Bracketing,
) -> Result<RootOfUnity, RepError> {
    let n = degrees.len();
    if from.leaves() != n || to.leaves() != n {
        return Err(RepError::Bracketing(format!(
            "bracketings have {} and {} leaves for {n} degrees",
            from.leaves(),
            to.leaves()
        )));
    }
    if let Some(&d) = degrees.iter().find(|&&d| d >= alpha.group().order()) {
        return Err(RepError::Bracketing(format!("degree {d} is not a group element")));
    }
    if from == to {
        return Ok(RootOfUnity::one());
    }
    Ok(from.to_left_comb(alpha, degrees).div(to.to_left_comb(alpha, degrees)))
}
