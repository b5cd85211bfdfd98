#![allow(dead_code)]

use qtgi::{t_inverse, tprod_chain, QTensor, Quaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn quaternion(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

pub fn tensor(rng: &mut impl Rng, n1: usize, n2: usize, n3: usize) -> QTensor {
    QTensor::from_fn(n1, n2, n3, |_, _, _| quaternion(rng))
}

/// `P * Q` with inner dimension `r`.
pub fn thin_product(rng: &mut impl Rng, n1: usize, r: usize, n2: usize, n3: usize) -> QTensor {
    let p = tensor(rng, n1, r, n3);
    let q = tensor(rng, r, n2, n3);
    tprod_chain(&[&p, &q]).unwrap()
}

/// `P * D * P⁻¹` where every frequency block of `D` is a well-conditioned
/// `n_inv`-block plus one `nil × nil` nilpotent Jordan block. Returns the
/// tensor and its index.
pub fn drazin_instance(rng: &mut impl Rng, n_inv: usize, nil: usize, n3: usize) -> (QTensor, usize) {
    let n = n_inv + nil;
    let noise = 0.1 / ((n * n3) as f64).sqrt();
    let d = QTensor::from_fn(n, n, n3, |i, j, k| {
        if i < n_inv && j < n_inv {
            let base = if k == 0 && i == j { 3.0 } else { 0.0 };
            quaternion(rng) * noise + Quaternion::real(base)
        } else if i >= n_inv && j == i + 1 && k == 0 {
            Quaternion::ONE
        } else {
            Quaternion::ZERO
        }
    });
    let p = QTensor::from_fn(n, n, n3, |i, j, k| {
        let base = if k == 0 && i == j { 2.0 } else { 0.0 };
        quaternion(rng) * (0.5 / ((n * n3) as f64).sqrt()) + Quaternion::real(base)
    });
    let pinv = t_inverse(&p).unwrap();
    (tprod_chain(&[&p, &d, &pinv]).unwrap(), nil)
}

pub fn rel_diff(a: &QTensor, b: &QTensor) -> f64 {
    (a - b).fro_norm() / b.fro_norm().max(1.0)
}

pub fn bits(t: &QTensor) -> Vec<u64> {
    t.entries().iter().flat_map(|q| q.components()).map(f64::to_bits).collect()
}
