//! Multi-index, Drazin and group inverses, and the core-nilpotent split.
//!
//! The index is computed per χ-block of the half spectrum. The rank of the
//! `k`-th power is measured against `rtol · σ_max^k`, where `σ_max` is the
//! largest singular value over all blocks, so the threshold scales with the
//! power being tested.

use crate::cmat::{self, CMat};
use crate::error::{Error, Result};
use crate::tensor::frequency::{half_len, map_half};
use crate::tensor::{from_frequency, to_frequency, tprod_chain, FrequencyStack, QTensor};

use super::resolve_rtol;

use rayon::prelude::*;

/// Indices of the half-spectrum frequency blocks and their maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndex {
    pub indices: Vec<usize>,
    pub k_max: usize,
}

struct Spectrum {
    freq: FrequencyStack,
    sigma: f64,
    rtol: f64,
    index: MultiIndex,
}

fn require_square(a: &QTensor) -> Result<()> {
    if a.n1() != a.n2() {
        return Err(Error::DimensionMismatch(format!(
            "tensor {:?} is not square in its first two modes",
            a.dims()
        )));
    }
    Ok(())
}

fn analyze(a: &QTensor, rtol: Option<f64>) -> Result<Spectrum> {
    require_square(a)?;
    let rtol = resolve_rtol(a, rtol);
    let freq = to_frequency(a);
    let sigma = freq.spectral_norm()?;
    let indices = (0..half_len(a.n3()))
        .into_par_iter()
        .map(|i| cmat::index_with(freq.block(i), |k| rtol * sigma.powi(k as i32)))
        .collect::<Result<Vec<_>>>()?;
    let k_max = indices.iter().copied().max().unwrap_or(0);
    Ok(Spectrum {
        freq,
        sigma,
        rtol,
        index: MultiIndex { indices, k_max },
    })
}

pub fn t_multi_index(a: &QTensor, rtol: Option<f64>) -> Result<MultiIndex> {
    Ok(analyze(a, rtol)?.index)
}

fn drazin_from(a: &QTensor, s: &Spectrum) -> Result<QTensor> {
    let n = a.n1();
    let fx = map_half(n, n, a.n3(), |i| -> Result<CMat> {
        let k = s.index.indices[i];
        let threshold = s.rtol * s.sigma.powi(k as i32);
        cmat::drazin_with(s.freq.block(i), k, threshold).map_err(|e| match e {
            Error::Singular { .. } => Error::Singular { frequency: i },
            other => other,
        })
    })?;
    from_frequency(&fx)
}

/// Drazin inverse, per block `A^k (A^{2k+1})† A^k` with that block's index.
/// A block of index zero that is numerically singular yields
/// [`Error::Singular`].
pub fn t_drazin(a: &QTensor, rtol: Option<f64>) -> Result<QTensor> {
    let s = analyze(a, rtol)?;
    drazin_from(a, &s)
}

/// Group inverse; exists only when every block index is at most one.
pub fn t_group(a: &QTensor, rtol: Option<f64>) -> Result<QTensor> {
    let s = analyze(a, rtol)?;
    if let Some((frequency, &index)) = s.index.indices.iter().enumerate().find(|(_, &k)| k > 1) {
        return Err(Error::IndexTooLarge { frequency, index });
    }
    drazin_from(a, &s)
}

/// Core and nilpotent parts `(A*A*A^D, A − A*A*A^D)`.
pub fn t_core_nilpotent(a: &QTensor, rtol: Option<f64>) -> Result<(QTensor, QTensor)> {
    let x = t_drazin(a, rtol)?;
    let core = tprod_chain(&[a, a, &x])?;
    let nil = a.try_sub(&core)?;
    Ok((core, nil))
}
