//! T-product algebra for third-order quaternion tensors and their
//! generalized inverses.
//!
//! The crate is organized bottom-up:
//!
//! - [`quaternion`]: the scalar type.
//! - [`qmatrix`]: dense quaternion matrices, the complex-adjoint embedding χ,
//!   and matrix-level SVD, pseudoinverse, index, Drazin inverse, full-rank
//!   decomposition and inverse along two matrices.
//! - [`tensor`]: quaternion tensors, the block-circulant T-product (the
//!   reference product) and the frequency-domain fast path.
//! - [`inverses`]: tensor-level T-SVD, Moore–Penrose, Drazin, group,
//!   core-nilpotent parts, inverses along two tensors, the sandwich-equation
//!   solver and `{1}`/`{1,3}`/`{1,4}` family generators.
//! - [`verify`]: residual reports computed with the reference product only.
//! - [`io`]: the `QT1` text format, and [`fixtures`] with worked examples.

pub mod cmat;
pub mod error;
pub mod fixtures;
pub mod inverses;
pub mod io;
pub mod parallel;
pub mod qmatrix;
pub mod quaternion;
pub mod tensor;
pub mod verify;

#[cfg(test)]
pub(crate) mod test_util;

pub use error::{Error, Result};
pub use inverses::{
    gen_family, solve_sandwich, t_core_nilpotent, t_drazin, t_group, t_inv_along_left,
    t_inv_along_right, t_inv_along_right_frd, t_multi_index, t_pinv, t_svd, MultiIndex,
    PenroseClass, TSvd,
};
pub use qmatrix::{chi_embed, chi_extract, ChiMatrix, QMatrix};
pub use quaternion::{qconj, qinv, qmul, Quaternion};
pub use tensor::{
    circ, fold, from_frequency, t_conj_transpose, t_fro_norm, t_identity, t_inverse, t_power,
    to_frequency, tprod_chain, tprod_fft, tprod_oracle, unfold, BlockCirculant, FrequencyStack, QTensor,
};
pub use verify::ResidualReport;
