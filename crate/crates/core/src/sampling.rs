//! Reproducible parameter draws.
//!
//! The generator is a plain 64-bit LCG so that a seed yields the same draws
//! on every platform and toolchain.

use num_rational::BigRational;

use crate::algebra::AlgebraVector;
use crate::exactnum::Scalar;
use crate::group::GroupElement;

pub const LCG_MULTIPLIER: u64 = 6364136223846793005;
pub const LCG_INCREMENT: u64 = 1442695040888963407;

#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(LCG_MULTIPLIER).wrapping_add(LCG_INCREMENT);
        self.state
    }

    /// Uniform in `0..n`, taken from the high bits of the state.
    pub fn below(&mut self, n: u64) -> u64 {
        (self.next_u64() >> 33) % n
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// `n/d` with `n ∈ [−3, 3]` and `d ∈ [1, 3]`.
    pub fn small_rational(&mut self) -> BigRational {
        let n = self.range(-3, 3);
        let d = self.range(1, 3);
        BigRational::new(n.into(), d.into())
    }

    /// Real and imaginary parts drawn independently by [`Self::small_rational`].
    pub fn small_scalar(&mut self) -> Scalar {
        let re = self.small_rational();
        let im = self.small_rational();
        Scalar::new(re, im)
    }

    /// A vector with an independent small coefficient on each index.
    pub fn vector_on<'a>(&mut self, support: impl IntoIterator<Item = &'a GroupElement>) -> AlgebraVector {
        AlgebraVector::from_terms(
            support
                .into_iter()
                .map(|a| (a.clone(), self.small_scalar()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}
