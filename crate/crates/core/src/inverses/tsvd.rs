//! T-SVD `A = U * S * Vᴴ` with orthogonal `U`, `V` and F-diagonal `S`.
//!
//! Self-paired frequencies hold χ-images, so their factors come from the
//! quaternion SVD and stay χ-images. Other frequencies use a full complex
//! SVD whose singular triplets are placed on the χ-diagonal pattern
//! (positions `(t, t)` and `(n1 + t, n2 + t)`); the mirrored frequency gets
//! the J-conjugated factors. After the inverse transform `S` is diagonal in
//! every frontal slice and `U`, `V` are quaternion tensors.

use num_complex::Complex64;

use crate::cmat::{self, CMat, CVec};
use crate::error::Result;
use crate::qmatrix::{chi_embed, chi_project, qm_svd, QMatrix};
use crate::tensor::frequency::{half_len, is_self_paired, FrequencyStack};
use crate::tensor::{from_frequency, to_frequency, tprod_chain, QTensor};

use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct TSvd {
    /// `n1 × n1 × n3`.
    pub u: QTensor,
    /// `n1 × n2 × n3`, F-diagonal.
    pub s: QTensor,
    /// `n2 × n2 × n3`.
    pub v: QTensor,
}

impl TSvd {
    /// `U * S * Vᴴ` via the reference product.
    pub fn reconstruct(&self) -> Result<QTensor> {
        tprod_chain(&[&self.u, &self.s, &self.v.h()])
    }
}

struct BlockFactors {
    u: CMat,
    s: CMat,
    v: CMat,
}

pub fn t_svd(a: &QTensor) -> Result<TSvd> {
    let (n1, n2, n3) = a.dims();
    let fa = to_frequency(a);
    let factors = (0..half_len(n3))
        .into_par_iter()
        .map(|i| {
            if is_self_paired(i, n3) {
                self_paired_factors(fa.block(i))
            } else {
                paired_factors(fa.block(i), n1, n2)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut us = Vec::with_capacity(factors.len());
    let mut ss = Vec::with_capacity(factors.len());
    let mut vs = Vec::with_capacity(factors.len());
    for f in factors {
        us.push(f.u);
        ss.push(f.s);
        vs.push(f.v);
    }
    Ok(TSvd {
        u: from_frequency(&FrequencyStack::from_half(us, n1, n1, n3)?)?,
        s: from_frequency(&FrequencyStack::from_half(ss, n1, n2, n3)?)?,
        v: from_frequency(&FrequencyStack::from_half(vs, n2, n2, n3)?)?,
    })
}

fn self_paired_factors(block: &CMat) -> Result<BlockFactors> {
    let q = chi_project(block);
    let d = qm_svd(&q)?;
    let sigma = QMatrix::real_diagonal(q.rows(), q.cols(), &d.s);
    Ok(BlockFactors {
        u: chi_embed(&d.u).inner,
        s: chi_embed(&sigma).inner,
        v: chi_embed(&d.v).inner,
    })
}

/// Slot of the `t`-th column of a `2n`-dimensional basis whose first `2m`
/// columns are singular vectors: even `t` go to the top half, odd `t` to the
/// bottom half, the completion fills what is left.
fn slots(n: usize, m: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..2 * m)
        .map(|t| if t % 2 == 0 { t / 2 } else { n + t / 2 })
        .collect();
    out.extend(m..n);
    out.extend(n + m..2 * n);
    out
}

fn place(columns: &CMat, slots: &[usize]) -> CMat {
    let mut out = CMat::zeros(columns.nrows(), columns.ncols());
    for (t, &slot) in slots.iter().enumerate() {
        out.set_column(slot, &columns.column(t));
    }
    out
}

fn paired_factors(block: &CMat, n1: usize, n2: usize) -> Result<BlockFactors> {
    let m = n1.min(n2);
    let d = cmat::svd(block)?;
    let u_cols: Vec<CVec> = d.u.column_iter().map(|c| c.into_owned()).collect();
    let v_cols: Vec<CVec> = d.v.column_iter().map(|c| c.into_owned()).collect();
    let su = slots(n1, m);
    let sv = slots(n2, m);
    let u = place(&cmat::complete_unitary(u_cols, 2 * n1), &su);
    let v = place(&cmat::complete_unitary(v_cols, 2 * n2), &sv);
    let mut s = CMat::zeros(2 * n1, 2 * n2);
    for (t, &sigma) in d.s.iter().enumerate() {
        s[(su[t], sv[t])] = Complex64::new(sigma, 0.0);
    }
    Ok(BlockFactors { u, s, v })
}
