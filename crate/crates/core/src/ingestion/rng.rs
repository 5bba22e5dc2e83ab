use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

/// Deterministic random source for the synthetic generator.
///
/// The generator is xoshiro256++ seeded through SplitMix64 (the reference
/// `seed_from_u64`). Substream `j` is the base state advanced by `j` calls
/// to the xoshiro256 jump function (2^128 steps each), so streams never
/// overlap in practice. Uniforms use the top 53 bits of each output and
/// normal deviates come from the Box–Muller transform, so any
/// implementation of the same algorithms reproduces identical datasets.
#[derive(Debug, Clone)]
pub struct SplitStream {
    rng: Xoshiro256PlusPlus,
}

impl SplitStream {
    pub fn new(seed: u64) -> Self {
        SplitStream {
            rng: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    /// The `j`-th substream of `seed`.
    pub fn substream(seed: u64, j: usize) -> Self {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        for _ in 0..j {
            rng.jump();
        }
        SplitStream { rng }
    }

    /// Advances this stream to the start of its next substream.
    pub fn jump(&mut self) {
        self.rng.jump();
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Two independent standard normal deviates.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        // 1 - u lies in (0, 1], keeping the logarithm finite.
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        (r * theta.cos(), r * theta.sin())
    }
}
