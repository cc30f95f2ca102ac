//! Small deterministic pseudo-random generator (splitmix64).
//!
//! All sampling in the crate and the CLI derives from one of these, seeded
//! explicitly, so that sampled checks and reports are reproducible bit for
//! bit.

use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (n > 0).
    pub fn next_below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform integer in the inclusive range `lo..=hi`.
    pub fn next_int(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + self.next_below((hi - lo + 1) as u64) as i64
    }

    /// Random small rational with numerator in `-max_num..=max_num` and
    /// denominator in `1..=max_den`.
    pub fn next_rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        let num = self.next_int(-max_num, max_num);
        let den = self.next_int(1, max_den);
        Rational::new(num, den)
    }

    /// Random non-zero small rational.
    pub fn next_nonzero_rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        loop {
            let r = self.next_rational(max_num, max_den);
            if !r.is_zero() {
                return r;
            }
        }
    }
}
