//! SplitMix64 generator for reproducible sampling.
//!
//! Chosen for its fixed published output sequence: any other
//! implementation seeded the same way draws the same points, so CSV
//! output is comparable across languages.  `split` derives independent
//! child streams, one per sampled coordinate, which keeps each
//! coordinate's sequence stable when the others change their draw
//! counts.

/// SplitMix64 state; one `u64` of state, period 2^64.
#[derive(Clone, Debug)]
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

    /// Uniform in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (f64::EPSILON / 2.0)
    }

    /// Uniform in the open interval (lo, hi): the endpoint draw 0 is
    /// rejected and redrawn, and hi itself is unreachable.
    pub fn open_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        loop {
            let u = self.next_f64();
            if u != 0.0 {
                return lo + (hi - lo) * u;
            }
        }
    }

    /// Derive an independent child generator.
    pub fn split(&mut self) -> Self {
        Self::new(self.next_u64())
    }
}
