use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator used by every suite.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
