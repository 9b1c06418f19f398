//! Random shifts from ChaCha8. Each `(epsilon index, trial)` pair reads its
//! own stream of the seeded generator, so a trial's draws do not depend on
//! how many trials ran before it or in which order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn trial_rng(seed: u64, eps_index: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((eps_index as u64) << 32) | trial as u64);
    rng
}

/// `s` shifts drawn uniformly from the open interval `(-eps, eps)`.
pub fn draw_deltas(rng: &mut impl Rng, s: usize, eps: f64) -> Vec<f64> {
    (0..s)
        .map(|_| loop {
            let d = rng.random_range(-eps..eps);
            if d != -eps {
                break d;
            }
        })
        .collect()
}
