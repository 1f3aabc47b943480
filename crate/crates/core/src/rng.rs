//! Tiny deterministic generator (splitmix64) for seeded sampling.
//!
//! Used by the frame-extraction sampling and by randomized test batteries.
//! Platform-independent and stable: the same seed always yields the same
//! stream, which keeps CLI outputs byte-identical across runs.

use crate::exactalg::{Poly, Rational};

pub(crate) struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Small rational with numerator in [-9, 9] and denominator in [1, 9].
    pub fn small_rational(&mut self) -> Rational {
        let n = (self.next_u64() % 19) as i64 - 9;
        let d = (self.next_u64() % 9) as i64 + 1;
        Rational::new(n, d)
    }

    /// Random polynomial of degree at most `max_deg` (possibly zero).
    pub fn poly(&mut self, max_deg: usize) -> Poly {
        let deg = (self.next_u64() as usize) % (max_deg + 1);
        Poly::from_coeffs((0..=deg).map(|_| self.small_rational()).collect())
    }
}
