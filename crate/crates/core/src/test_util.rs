use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::qmatrix::QMatrix;
use crate::quaternion::Quaternion;
use crate::tensor::QTensor;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_quaternion(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

pub fn random_qmatrix(rng: &mut impl Rng, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| random_quaternion(rng))
}

pub fn random_tensor(rng: &mut impl Rng, n1: usize, n2: usize, n3: usize) -> QTensor {
    QTensor::from_fn(n1, n2, n3, |_, _, _| random_quaternion(rng))
}

/// `P * D * P⁻¹` where `D` is a well-conditioned `n_inv × n_inv` block plus a
/// single `nil × nil` nilpotent Jordan block in the first slice. Returns the
/// tensor and its index.
pub fn drazin_instance(
    rng: &mut impl Rng,
    n_inv: usize,
    nil: usize,
    n3: usize,
) -> (QTensor, usize) {
    let n = n_inv + nil;
    let noise = 0.1 / ((n * n3) as f64).sqrt();
    let d = QTensor::from_fn(n, n, n3, |i, j, k| {
        if i < n_inv && j < n_inv {
            let base = if k == 0 && i == j { 3.0 } else { 0.0 };
            random_quaternion(rng) * noise + Quaternion::real(base)
        } else if i >= n_inv && j == i + 1 && k == 0 {
            Quaternion::ONE
        } else {
            Quaternion::ZERO
        }
    });
    let p = QTensor::from_fn(n, n, n3, |i, j, k| {
        let base = if k == 0 && i == j { 2.0 } else { 0.0 };
        random_quaternion(rng) * (0.5 / ((n * n3) as f64).sqrt()) + Quaternion::real(base)
    });
    let pinv = crate::tensor::t_inverse(&p).expect("diagonally dominant");
    let a = crate::tensor::tprod_chain(&[&p, &d, &pinv]).unwrap();
    (a, nil)
}
