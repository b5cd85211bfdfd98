//! Seeded random inputs for the benchmarks.

use qtgi::{QTensor, Quaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tensor(rng: &mut impl Rng, n1: usize, n2: usize, n3: usize) -> QTensor {
    QTensor::from_fn(n1, n2, n3, |_, _, _| {
        Quaternion::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        )
    })
}
