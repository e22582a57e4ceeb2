use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator for trial `trial` of the run seeded by `seed`.
///
/// Every trial owns a separate ChaCha stream, so the draws of one trial do
/// not depend on how many other trials ran or in which order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Fresh seed from the operating system, for runs that did not pin one.
pub fn random_seed() -> u64 {
    rand::rngs::OsRng.next_u64()
}
