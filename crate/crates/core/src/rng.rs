//! Seeded random streams. Every randomized choice draws from a stream derived
//! from the run seed and a purpose tag, so runs replay exactly.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn stream(seed: u64, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(purpose);
    rng
}
