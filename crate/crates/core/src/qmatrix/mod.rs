//! Dense quaternion matrices and the complex-adjoint embedding χ.
//!
//! Every spectral routine in this crate works on χ-images: a quaternion
//! matrix `M = M_a + M_b j` (with complex `M_a`, `M_b`) maps to the complex
//! matrix `[[M_a, M_b], [−conj(M_b), conj(M_a)]]`. The map is an injective
//! ring homomorphism that also commutes with the conjugate transpose, so
//! products, inverses and singular values can be computed with complex
//! arithmetic and pulled back.

mod inverse;
mod svd;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::cmat::{self, CMat};
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

pub use inverse::{
    qm_core_nilpotent, qm_drazin, qm_frd, qm_index, qm_inv_along_left, qm_inv_along_right,
    qm_inv_along_right_frd, qm_inverse, qm_pinv, qm_rank, FullRankDecomp, INV_ALONG_TOL,
};
pub use svd::{qm_singular_values, qm_svd, qm_svd_with, QMatSvd};

/// Default relative rank tolerance: `max(rows, cols) · 2⁻⁵²`.
pub fn default_rtol(rows: usize, cols: usize) -> f64 {
    rows.max(cols) as f64 * f64::EPSILON
}

/// Dense quaternion matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { Quaternion::ONE } else { Quaternion::ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Diagonal `rows × cols` matrix with real diagonal entries `d`.
    pub fn real_diagonal(rows: usize, cols: usize, d: &[f64]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (t, &v) in d.iter().enumerate().take(rows.min(cols)) {
            m[(t, t)] = Quaternion::real(v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    /// Conjugate transpose `Mᴴ`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|q| q.scale(s)).collect(),
        }
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|q| q.is_finite())
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        Self::from_fn(self.rows, range.len(), |r, c| self[(r, range.start + c)])
    }

    /// Square power by repeated multiplication; `M⁰ = I`.
    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "shapes {:?} and {:?} differ",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Panics on non-conformable shapes; use [`QMatrix::try_mul`] for a checked product.
impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "non-conformable quaternion matrices");
        self.mul_unchecked(rhs)
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        self.try_add(rhs).expect("shape mismatch in quaternion matrix sum")
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self.try_sub(rhs).expect("shape mismatch in quaternion matrix difference")
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.scale(-1.0)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| match f.precision() {
                    Some(p) => format!("{:.*}", p, self[(r, c)]),
                    None => format!("{}", self[(r, c)]),
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A complex matrix `2m × 2n` carrying the block partition `(m, n)` of a
/// complex-adjoint image.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiMatrix {
    pub inner: CMat,
    pub m: usize,
    pub n: usize,
}

impl ChiMatrix {
    pub fn new(inner: CMat) -> Result<Self> {
        let (r, c) = inner.shape();
        if r % 2 != 0 || c % 2 != 0 {
            return Err(Error::DimensionMismatch(format!(
                "complex-adjoint matrix must have even shape, got {r}×{c}"
            )));
        }
        Ok(Self {
            inner,
            m: r / 2,
            n: c / 2,
        })
    }

    /// `‖X − J·conj(X)·J⁻¹‖_F / ‖X‖_F` (zero for the zero matrix).
    pub fn structure_deviation(&self) -> f64 {
        let norm = cmat::fro_norm(&self.inner);
        if norm == 0.0 {
            return 0.0;
        }
        cmat::fro_norm(&(&self.inner - cmat::j_conj(&self.inner))) / norm
    }
}

pub fn chi_embed(m: &QMatrix) -> ChiMatrix {
    let (r, c) = m.shape();
    let inner = CMat::from_fn(2 * r, 2 * c, |i, j| {
        let (a, b) = m[(i % r, j % c)].to_complex_pair();
        match (i < r, j < c) {
            (true, true) => a,
            (true, false) => b,
            (false, true) => -b.conj(),
            (false, false) => a.conj(),
        }
    });
    ChiMatrix { inner, m: r, n: c }
}

/// Inverse of [`chi_embed`]. Fails when the relative structure deviation
/// exceeds `tol`; otherwise projects onto the symmetric part first.
pub fn chi_extract(c: &ChiMatrix, tol: f64) -> Result<QMatrix> {
    let deviation = c.structure_deviation();
    if deviation > tol || deviation.is_nan() {
        return Err(Error::StructureViolation { deviation, tol });
    }
    Ok(chi_project(&c.inner))
}

/// Symmetric projection `(X + J·conj(X)·J⁻¹)/2` followed by extraction of the
/// `(M_a, M_b)` blocks. No tolerance check.
pub(crate) fn chi_project(inner: &CMat) -> QMatrix {
    let (rr, cc) = inner.shape();
    let (m, n) = (rr / 2, cc / 2);
    QMatrix::from_fn(m, n, |r, c| {
        let a = (inner[(r, c)] + inner[(r + m, c + n)].conj()) * 0.5;
        let b = (inner[(r, c + n)] - inner[(r + m, c)].conj()) * 0.5;
        Quaternion::from_complex_pair(a, b)
    })
}

/// Complex representative `[q_a; −conj(q_b)]` of a quaternion column.
#[cfg(test)]
pub(crate) fn column_to_complex(m: &QMatrix, col: usize) -> cmat::CVec {
    let r = m.rows();
    cmat::CVec::from_fn(2 * r, |i, _| {
        let (a, b) = m[(i % r, col)].to_complex_pair();
        if i < r {
            a
        } else {
            -b.conj()
        }
    })
}

/// Folds complex representatives back into quaternion columns
/// (`q_a = top`, `q_b = −conj(bottom)`).
pub(crate) fn columns_from_complex(cols: &[cmat::CVec], rows: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols.len(), |r, c| {
        let v = &cols[c];
        Quaternion::from_complex_pair(v[r], -v[r + rows].conj())
    })
}
