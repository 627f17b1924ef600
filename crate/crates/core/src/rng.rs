//! Counter-based deterministic random numbers for the search harness.
//!
//! Search candidates are derived from `(seed, index)` alone so that parallel
//! workers need no shared RNG state and any record can be regenerated in
//! isolation. The generator is SplitMix64; its output sequence is part of the
//! on-disk record format and must not change.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Stream for one search candidate, decorrelated from neighbouring
    /// indices by finalizing seed and index separately.
    pub fn for_candidate(seed: u64, index: u64) -> Self {
        Self::new(mix64(seed) ^ mix64(index.wrapping_add(0x9E37_79B9_7F4A_7C15)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        mix64(self.state)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [0, bound). Modulo bias is below 2⁻⁴⁸ for bound ≤ 2¹⁶.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
