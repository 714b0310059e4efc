//! Braid words, their permutation images, and the action `π_{n,G}` of `B_n`
//! on `G^{2n}` whose kernel `K_{n,G}` is a finite-index subgroup of `B_n`.

mod perm;
mod word;

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::closure::{group_closure, ClosureError, ClosureResult};
use crate::group::FiniteGroup;

pub use perm::Permutation;
pub use word::{is_pure, symmetric_image, BraidWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("invalid strand count {0}")]
    Strands(usize),
    #[error("generator s{index} does not exist on {strands} strands")]
    GeneratorIndex { index: usize, strands: usize },
    #[error("cannot parse braid word: {0}")]
    Parse(String),
    #[error("state space has {points} points, above the cap of {cap}; use the sampling check instead")]
    TooLarge { points: String, cap: usize },
}

/// `B_n` acting on `n`-tuples of pairs `(g_j, h_j) ∈ G²`.
///
/// Points are encoded in mixed radix `|G|` over `(g_1, h_1, …, g_n, h_n)`
/// with `g_1` most significant.
#[derive(Debug, Clone)]
pub struct PiAction {
    group: Arc<FiniteGroup>,
    n: usize,
}

impl PiAction {
    pub fn new(group: Arc<FiniteGroup>, n: usize) -> Result<Self, BraidError> {
        if n == 0 {
            return Err(BraidError::Strands(n));
        }
        Ok(PiAction { group, n })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    /// `|G|^{2n}`, or `None` on overflow.
    pub fn point_count(&self) -> Option<usize> {
        (self.group.order()).checked_pow(u32::try_from(2 * self.n).ok()?)
    }

    fn require_points(&self, cap: usize) -> Result<usize, BraidError> {
        match self.point_count() {
            Some(p) if p <= cap => Ok(p),
            p => Err(BraidError::TooLarge {
                points: p.map_or_else(
                    || format!("{}^{}", self.group.order(), 2 * self.n),
                    |p| p.to_string(),
                ),
                cap,
            }),
        }
    }

    pub fn encode(&self, pairs: &[(usize, usize)]) -> usize {
        let k = self.group.order();
        pairs.iter().fold(0, |acc, &(g, h)| (acc * k + g) * k + h)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<(usize, usize)> {
        let k = self.group.order();
        let mut out = vec![(0, 0); self.n];
        for slot in out.iter_mut().rev() {
            let h = idx % k;
            idx /= k;
            let g = idx % k;
            idx /= k;
            *slot = (g, h);
        }
        out
    }

    fn check_index(&self, i: usize) -> Result<(), BraidError> {
        if i == 0 || i >= self.n {
            return Err(BraidError::GeneratorIndex {
                index: i,
                strands: self.n,
            });
        }
        Ok(())
    }

    /// `σ_i^{±1}` in place; `σ_i` sends
    /// `(g_i,h_i),(g_{i+1},h_{i+1})` to `(g_i h_i g_i⁻¹ g_{i+1}, h_{i+1}),(g_i,h_i)`.
    pub fn apply_letter(&self, pairs: &mut [(usize, usize)], i: usize, sign: i8) {
        let g = &self.group;
        let (a, b) = (pairs[i - 1], pairs[i]);
        if sign > 0 {
            pairs[i - 1] = (g.mul(g.conj(a.0, a.1), b.0), b.1);
            pairs[i] = a;
        } else {
            let (g0, h0) = b;
            let g1 = g.mul(g.conj(g0, g.inv(h0)), a.0);
            pairs[i - 1] = b;
            pairs[i] = (g1, a.1);
        }
    }

    /// Image of a tuple under a word; the rightmost letter acts first, matching
    /// matrix products `ρ(w) = ρ(l_1)⋯ρ(l_k)`.
    pub fn apply_word(&self, word: &BraidWord, pairs: &mut [(usize, usize)]) {
        for &(i, s) in word.letters().iter().rev() {
            self.apply_letter(pairs, i, s);
        }
    }

    /// The permutation of the encoded points induced by `σ_i`.
    pub fn pi_sigma(&self, i: usize, cap: usize) -> Result<Permutation, BraidError> {
        self.check_index(i)?;
        let points = self.require_points(cap)?;
        let images = (0..points)
            .map(|x| {
                let mut t = self.decode(x);
                self.apply_letter(&mut t, i, 1);
                self.encode(&t)
            })
            .collect();
        Ok(Permutation::from_images(images).expect("σ_i acts bijectively"))
    }

    fn check_word(&self, word: &BraidWord) -> Result<(), BraidError> {
        if word.strands() != self.n {
            return Err(BraidError::Strands(word.strands()));
        }
        Ok(())
    }

    /// Whether the word fixes every point, decided exhaustively.
    pub fn in_kernel(&self, word: &BraidWord, cap: usize) -> Result<bool, BraidError> {
        self.check_word(word)?;
        let points = self.require_points(cap)?;
        let mut t = Vec::with_capacity(self.n);
        Ok((0..points).all(|x| {
            t.clear();
            t.extend(self.decode(x));
            self.apply_word(word, &mut t);
            self.encode(&t) == x
        }))
    }

    /// Falsification-only check on random points. A moved point proves the word
    /// is outside the kernel; finding none proves nothing.
    pub fn in_kernel_sampled<R: Rng + ?Sized>(
        &self,
        word: &BraidWord,
        samples: usize,
        rng: &mut R,
    ) -> Result<SampledKernelCheck, BraidError> {
        self.check_word(word)?;
        let k = self.group.order();
        for _ in 0..samples {
            let t: Vec<(usize, usize)> = (0..self.n)
                .map(|_| (rng.gen_range(0..k), rng.gen_range(0..k)))
                .collect();
            let mut img = t.clone();
            self.apply_word(word, &mut img);
            if img != t {
                return Ok(SampledKernelCheck::Moved { point: t, image: img });
            }
        }
        Ok(SampledKernelCheck::NoWitness { samples })
    }

    /// Order of `π_{n,G}(B_n)`, equal to the index `[B_n : K_{n,G}]`.
    pub fn image_order(&self, points_cap: usize, closure_cap: usize) -> Result<ClosureResult<Permutation>, PiOrderError> {
        let gens = (1..self.n)
            .map(|i| self.pi_sigma(i, points_cap))
            .collect::<Result<Vec<_>, _>>()?;
        let identity = Permutation::identity(self.require_points(points_cap)?);
        Ok(group_closure(&identity, &gens, closure_cap, false)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampledKernelCheck {
    Moved {
        point: Vec<(usize, usize)>,
        image: Vec<(usize, usize)>,
    },
    NoWitness {
        samples: usize,
    },
}

#[derive(Debug, Error)]
pub enum PiOrderError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}

/// Convenience wrapper for [`PiAction::pi_sigma`].
pub fn pi_sigma(group: Arc<FiniteGroup>, n: usize, i: usize, cap: usize) -> Result<Permutation, BraidError> {
    PiAction::new(group, n)?.pi_sigma(i, cap)
}

/// Convenience wrapper for [`PiAction::in_kernel`].
pub fn in_kernel(group: Arc<FiniteGroup>, word: &BraidWord, cap: usize) -> Result<bool, BraidError> {
    PiAction::new(group, word.strands())?.in_kernel(word, cap)
}

/// Convenience wrapper for [`PiAction::image_order`].
pub fn pi_image_order(
    group: Arc<FiniteGroup>,
    n: usize,
    cap: usize,
) -> Result<ClosureResult<Permutation>, PiOrderError> {
    PiAction::new(group, n)?.image_order(cap, cap)
}
