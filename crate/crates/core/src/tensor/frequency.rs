//! Frequency-domain representation of quaternion tensors.
//!
//! The complex DFT does not block-diagonalize a quaternion block circulant
//! into quaternion blocks: `j·ω ≠ ω·j`, so the DFT matrix does not commute
//! with quaternion entries. Instead every frontal slice is first mapped
//! through the complex adjoint χ. The χ-slices form an ordinary complex
//! block circulant (blocks `2n1 × 2n2`), which the DFT does diagonalize,
//! and because χ is a ring homomorphism the T-product becomes a blockwise
//! product of the resulting frequency blocks.
//!
//! Blocks at mirrored frequencies are tied by
//! `block[n3 − i] = J · conj(block[i]) · J⁻¹` with `J = [[0, I], [−I, 0]]`.
//! Only frequencies `0..=n3/2` are ever computed; the mirrored half is
//! derived from that identity, which keeps the inverse transform on
//! χ-images by construction. Frequency `0` (and `n3/2` for even `n3`) is
//! self-paired, so those blocks are exact χ-images of quaternion matrices.
//!
//! Transform convention: unnormalized forward DFT with `ω = e^{−2π𝚤/n3}`,
//! inverse scaled by `1/n3`. Frequencies are zero-based throughout.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::cmat::{self, CMat};
use crate::error::{Error, Result};
use crate::qmatrix::{chi_embed, chi_project};

use super::{check_product, QTensor};

/// Relative χ-deviation above which [`from_frequency`] refuses to extract.
pub const STRUCTURE_TOL: f64 = 1e-8;

/// Default relative rank tolerance for tensor-level rank decisions:
/// `max(n1, n2) · n3 · 2⁻⁵²`, measured against the largest singular value
/// over all frequency blocks (the spectral norm of the block circulant).
pub fn default_tensor_rtol(n1: usize, n2: usize, n3: usize) -> f64 {
    (n1.max(n2) * n3) as f64 * f64::EPSILON
}

/// Mirror frequency `(n3 − i) mod n3`.
pub fn paired_frequency(i: usize, n3: usize) -> usize {
    (n3 - i % n3) % n3
}

pub fn is_self_paired(i: usize, n3: usize) -> bool {
    paired_frequency(i, n3) == i
}

/// Number of independently computed frequencies, `⌊n3/2⌋ + 1`.
pub fn half_len(n3: usize) -> usize {
    n3 / 2 + 1
}

/// Per-frequency complex blocks of a tensor, each `2n1 × 2n2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyStack {
    blocks: Vec<CMat>,
    n1: usize,
    n2: usize,
}

impl FrequencyStack {
    /// Wraps a full set of `n3` blocks. No pairing check is done here.
    pub fn new(blocks: Vec<CMat>, n1: usize, n2: usize) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::DimensionMismatch("empty frequency stack".into()));
        }
        if let Some(b) = blocks.iter().find(|b| b.shape() != (2 * n1, 2 * n2)) {
            return Err(Error::DimensionMismatch(format!(
                "frequency block {:?} is not {}×{}",
                b.shape(),
                2 * n1,
                2 * n2
            )));
        }
        Ok(Self { blocks, n1, n2 })
    }

    /// Builds the full stack from frequencies `0..=n3/2`, deriving the rest.
    pub fn from_half(mut half: Vec<CMat>, n1: usize, n2: usize, n3: usize) -> Result<Self> {
        if half.len() != half_len(n3) {
            return Err(Error::DimensionMismatch(format!(
                "{} half-spectrum blocks for n3 = {n3}",
                half.len()
            )));
        }
        for i in half.len()..n3 {
            let mirror = cmat::j_conj(&half[paired_frequency(i, n3)]);
            half.push(mirror);
        }
        Self::new(half, n1, n2)
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.n1, self.n2, self.blocks.len())
    }

    pub fn n3(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &CMat {
        &self.blocks[i]
    }

    /// Blocks `0..=n3/2`.
    pub fn half(&self) -> &[CMat] {
        &self.blocks[..half_len(self.n3())]
    }

    pub fn into_blocks(self) -> Vec<CMat> {
        self.blocks
    }

    /// Largest relative violation of the mirror identity.
    pub fn pairing_deviation(&self) -> f64 {
        let n3 = self.n3();
        let norm = self.blocks.iter().map(cmat::fro_norm).fold(0.0, f64::max);
        if norm == 0.0 {
            return 0.0;
        }
        (0..n3)
            .map(|i| {
                let mirror = cmat::j_conj(&self.blocks[i]);
                cmat::fro_norm(&(&self.blocks[paired_frequency(i, n3)] - mirror)) / norm
            })
            .fold(0.0, f64::max)
    }

    /// Largest singular value over all blocks.
    pub fn spectral_norm(&self) -> Result<f64> {
        max_spectral_norm(self.half())
    }
}

pub(crate) fn max_spectral_norm(blocks: &[CMat]) -> Result<f64> {
    let norms: Vec<f64> = blocks
        .par_iter()
        .map(cmat::spectral_norm)
        .collect::<Result<_>>()?;
    Ok(norms.into_iter().fold(0.0, f64::max))
}

/// Evaluates `f` on every half-spectrum frequency (in parallel, results in
/// frequency order) and assembles the full stack.
pub(crate) fn map_half<F>(n1: usize, n2: usize, n3: usize, f: F) -> Result<FrequencyStack>
where
    F: Fn(usize) -> Result<CMat> + Sync + Send,
{
    let half = (0..half_len(n3))
        .into_par_iter()
        .map(f)
        .collect::<Result<Vec<_>>>()?;
    FrequencyStack::from_half(half, n1, n2, n3)
}

pub fn to_frequency(a: &QTensor) -> FrequencyStack {
    let (n1, n2, n3) = a.dims();
    let chis: Vec<CMat> = a.slices().iter().map(|s| chi_embed(s).inner).collect();
    let (rows, cols) = (2 * n1, 2 * n2);
    let h = half_len(n3);
    let mut half = vec![CMat::zeros(rows, cols); h];

    let fft = FftPlanner::<f64>::new().plan_fft_forward(n3);
    let mut buf = vec![Complex64::ZERO; n3];
    for c in 0..cols {
        for r in 0..rows {
            for (k, x) in buf.iter_mut().enumerate() {
                *x = chis[k][(r, c)];
            }
            fft.process(&mut buf);
            for (i, block) in half.iter_mut().enumerate() {
                block[(r, c)] = buf[i];
            }
        }
    }
    FrequencyStack::from_half(half, n1, n2, n3).expect("half spectrum has the right length")
}

/// Inverse DFT followed by χ-extraction of each slice.
///
/// Fails with [`Error::StructureViolation`] when a reconstructed slice is
/// further than [`STRUCTURE_TOL`] (relative to the whole tensor) from a
/// χ-image, which signals a stack whose mirror pairing was broken.
pub fn from_frequency(fs: &FrequencyStack) -> Result<QTensor> {
    let (n1, n2, n3) = fs.dims();
    let (rows, cols) = (2 * n1, 2 * n2);
    let mut slices = vec![CMat::zeros(rows, cols); n3];

    let ifft = FftPlanner::<f64>::new().plan_fft_inverse(n3);
    let scale = 1.0 / n3 as f64;
    let mut buf = vec![Complex64::ZERO; n3];
    for c in 0..cols {
        for r in 0..rows {
            for (i, x) in buf.iter_mut().enumerate() {
                *x = fs.blocks[i][(r, c)];
            }
            ifft.process(&mut buf);
            for (k, s) in slices.iter_mut().enumerate() {
                s[(r, c)] = buf[k] * scale;
            }
        }
    }

    let total = slices
        .iter()
        .map(|s| cmat::fro_norm(s).powi(2))
        .sum::<f64>()
        .sqrt();
    if total > 0.0 {
        for s in &slices {
            let deviation = cmat::fro_norm(&(s - cmat::j_conj(s))) / total;
            if deviation > STRUCTURE_TOL || deviation.is_nan() {
                return Err(Error::StructureViolation {
                    deviation,
                    tol: STRUCTURE_TOL,
                });
            }
        }
    }
    let q: Vec<_> = slices.iter().map(chi_project).collect();
    QTensor::from_slices(&q)
}

/// T-product computed blockwise in the frequency domain.
pub fn tprod_fft(a: &QTensor, b: &QTensor) -> Result<QTensor> {
    check_product(a, b)?;
    let (fa, fb) = (to_frequency(a), to_frequency(b));
    let fc = map_half(a.n1(), b.n2(), a.n3(), |i| Ok(fa.block(i) * fb.block(i)))?;
    from_frequency(&fc)
}

pub fn t_inverse(a: &QTensor) -> Result<QTensor> {
    t_inverse_with(a, None)
}

/// Tensor inverse by per-frequency inversion. A block whose numerical rank
/// (against `rtol` times the largest singular value over all blocks) is
/// deficient yields [`Error::Singular`] naming that frequency.
pub fn t_inverse_with(a: &QTensor, rtol: Option<f64>) -> Result<QTensor> {
    let (n1, n2, n3) = a.dims();
    if n1 != n2 {
        return Err(Error::DimensionMismatch(format!(
            "inverse of non-square tensor {:?}",
            a.dims()
        )));
    }
    let fa = to_frequency(a);
    let threshold = rtol.unwrap_or_else(|| default_tensor_rtol(n1, n2, n3)) * fa.spectral_norm()?;
    let fx = map_half(n1, n1, n3, |i| {
        let block = fa.block(i);
        if threshold == 0.0 || cmat::rank_above(block, threshold)? < 2 * n1 {
            return Err(Error::Singular { frequency: i });
        }
        block
            .clone()
            .try_inverse()
            .ok_or(Error::Singular { frequency: i })
    })?;
    from_frequency(&fx)
}
