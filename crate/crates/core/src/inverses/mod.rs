//! Generalized inverses of quaternion tensors.
//!
//! Each inverse is computed in the frequency domain on the half spectrum
//! (frequencies `0..=n3/2`), mirrored by the J-conjugation, and brought back
//! with [`from_frequency`]. Operations with an existence condition certify
//! their output in the spatial domain with the reference product.
//!
//! Numerical rank decisions compare singular values against
//! `rtol · σ_max`, where `σ_max` is the largest singular value over all
//! frequency blocks. `rtol = None` selects
//! [`default_tensor_rtol`](crate::tensor::frequency::default_tensor_rtol).

mod along;
mod drazin;
mod equations;
mod tsvd;

use crate::cmat;
use crate::error::Result;
use crate::tensor::frequency::{default_tensor_rtol, map_half};
use crate::tensor::{from_frequency, to_frequency, QTensor};

pub use along::{
    inv_along_left_formula, inv_along_right_formula, t_inv_along_left, t_inv_along_right,
    t_inv_along_right_frd,
};
pub use drazin::{t_core_nilpotent, t_drazin, t_group, t_multi_index, MultiIndex};
pub use equations::{gen_family, solve_sandwich, PenroseClass, FAMILY_TOL, SANDWICH_TOL};
pub use tsvd::{t_svd, TSvd};

pub(crate) fn resolve_rtol(a: &QTensor, rtol: Option<f64>) -> f64 {
    rtol.unwrap_or_else(|| default_tensor_rtol(a.n1(), a.n2(), a.n3()))
}

/// Moore–Penrose inverse: per-frequency complex pseudoinverse.
pub fn t_pinv(a: &QTensor, rtol: Option<f64>) -> Result<QTensor> {
    let (n1, n2, n3) = a.dims();
    let fa = to_frequency(a);
    let threshold = resolve_rtol(a, rtol) * fa.spectral_norm()?;
    let fx = map_half(n2, n1, n3, |i| cmat::pinv_with_threshold(fa.block(i), threshold))?;
    from_frequency(&fx)
}
