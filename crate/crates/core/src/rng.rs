//! A small deterministic pseudo-random generator for parameter sweeps.
//!
//! Sweep reports must be byte-identical across runs, platforms and crate
//! versions, so this is a self-contained splitmix64 rather than an external
//! RNG whose stream might change under us.

use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `0..n` (modulo bias is irrelevant at these sizes).
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    /// A rational with numerator in `num_lo..=num_hi` and denominator in
    /// `den_lo..=den_hi` (normalization may reduce it further).
    pub fn rational_in(&mut self, num_lo: i64, num_hi: i64, den_lo: i64, den_hi: i64) -> Rational {
        let num = num_lo + self.below((num_hi - num_lo + 1) as u64) as i64;
        let den = den_lo + self.below((den_hi - den_lo + 1) as u64) as i64;
        Rational::ratio(num, den)
    }

    /// Like [`rational_in`](Self::rational_in) but never zero.
    pub fn nonzero_rational_in(
        &mut self,
        num_lo: i64,
        num_hi: i64,
        den_lo: i64,
        den_hi: i64,
    ) -> Rational {
        loop {
            let value = self.rational_in(num_lo, num_hi, den_lo, den_hi);
            if !value.is_zero() {
                return value;
            }
        }
    }
}
