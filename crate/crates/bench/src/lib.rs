//! Deterministic inputs shared by the benchmarks.

use cesaro_core::Seq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Prefix lengths every benchmark is run at.
pub const SIZES: [usize; 3] = [256, 4096, 65536];

/// A random vector in `[-1, 1)^len` from a fixed seed.
pub fn random_seq(len: usize, seed: u64) -> Seq {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Seq::new((0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("finite entries")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        assert_eq!(random_seq(32, 1), random_seq(32, 1));
        assert_ne!(random_seq(32, 1), random_seq(32, 2));
    }
}
