//! SplitMix64, the one PRNG used by every generator.
//!
//! The recurrence is fixed so that any implementation reproduces the same
//! graphs from the same seed:
//!
//! ```text
//! state ← state + 0x9E3779B97F4A7C15            (wrapping)
//! z ← state
//! z ← (z ⊕ (z ≫ 30)) · 0xBF58476D1CE4E5B9       (wrapping)
//! z ← (z ⊕ (z ≫ 27)) · 0x94D049BB133111EB       (wrapping)
//! output z ⊕ (z ≫ 31)
//! ```
//!
//! Bounded draws use rejection: for bound `b`, outputs below
//! `(2⁶⁴ − b) mod b` are discarded and the result is `z mod b`.
//! Shuffles are Fisher–Yates from the last position down, swapping position
//! `i` with `below(i + 1)`.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound`. Panics if `bound == 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let z = self.next_u64();
            if z >= threshold {
                return z % bound;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range_inclusive(&mut self, lo: usize, hi: usize) -> usize {
        assert!(lo <= hi, "empty range {lo}..={hi}");
        lo + self.below((hi - lo) as u64 + 1) as usize
    }

    pub fn shuffle<T>(&mut self, v: &mut [T]) {
        for i in (1..v.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            v.swap(i, j);
        }
    }
}
