//! Third-order quaternion tensors and the T-product.
//!
//! The normative product is [`tprod_oracle`]: `fold(circ(A) · unfold(B))`,
//! evaluated entirely in quaternion arithmetic. [`tprod_fft`] computes the
//! same operator in the frequency domain; see [`frequency`] for why slices
//! go through the complex adjoint before the DFT.

pub mod frequency;

use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::qmatrix::QMatrix;
use crate::quaternion::Quaternion;

pub use frequency::{
    from_frequency, is_self_paired, paired_frequency, t_inverse, t_inverse_with, to_frequency,
    tprod_fft, FrequencyStack,
};

/// `n1 × n2 × n3` quaternion tensor, stored slice by slice (third index
/// outermost), each frontal slice row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QTensor {
    n1: usize,
    n2: usize,
    n3: usize,
    data: Vec<Quaternion>,
}

impl QTensor {
    pub fn zeros(n1: usize, n2: usize, n3: usize) -> Self {
        Self {
            n1,
            n2,
            n3,
            data: vec![Quaternion::ZERO; n1 * n2 * n3],
        }
    }

    pub fn from_fn(
        n1: usize,
        n2: usize,
        n3: usize,
        mut f: impl FnMut(usize, usize, usize) -> Quaternion,
    ) -> Self {
        let mut data = Vec::with_capacity(n1 * n2 * n3);
        for k in 0..n3 {
            for i in 0..n1 {
                for j in 0..n2 {
                    data.push(f(i, j, k));
                }
            }
        }
        Self { n1, n2, n3, data }
    }

    /// Entries in storage order: `k` outermost, then `i`, then `j`.
    pub fn from_entries(n1: usize, n2: usize, n3: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != n1 * n2 * n3 {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n1}×{n2}×{n3} tensor",
                data.len()
            )));
        }
        Ok(Self { n1, n2, n3, data })
    }

    pub fn from_slices(slices: &[QMatrix]) -> Result<Self> {
        let first = slices
            .first()
            .ok_or_else(|| Error::DimensionMismatch("no frontal slices".into()))?;
        let (n1, n2) = first.shape();
        let mut data = Vec::with_capacity(n1 * n2 * slices.len());
        for s in slices {
            if s.shape() != (n1, n2) {
                return Err(Error::DimensionMismatch(format!(
                    "frontal slice {:?} differs from {:?}",
                    s.shape(),
                    (n1, n2)
                )));
            }
            data.extend_from_slice(s.as_slice());
        }
        Ok(Self {
            n1,
            n2,
            n3: slices.len(),
            data,
        })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.n1, self.n2, self.n3)
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn n3(&self) -> usize {
        self.n3
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Quaternion {
        self.data[(k * self.n1 + i) * self.n2 + j]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, q: Quaternion) {
        self.data[(k * self.n1 + i) * self.n2 + j] = q;
    }

    /// Frontal slice `A(:, :, k)`, zero-based.
    pub fn slice(&self, k: usize) -> QMatrix {
        let len = self.n1 * self.n2;
        QMatrix::from_row_major(self.n1, self.n2, self.data[k * len..(k + 1) * len].to_vec())
            .expect("slice length is n1·n2")
    }

    pub fn slices(&self) -> Vec<QMatrix> {
        (0..self.n3).map(|k| self.slice(k)).collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            data: self.data.iter().map(|q| q.scale(s)).collect(),
            ..*self
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|q| q.is_finite())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Result<Self> {
        if self.dims() != rhs.dims() {
            return Err(Error::DimensionMismatch(format!(
                "tensor shapes {:?} and {:?} differ",
                self.dims(),
                rhs.dims()
            )));
        }
        Ok(Self {
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
            ..*self
        })
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        t_fro_norm(self)
    }

    /// Conjugate transpose; see [`t_conj_transpose`].
    pub fn h(&self) -> Self {
        t_conj_transpose(self)
    }
}

impl Add for &QTensor {
    type Output = QTensor;
    fn add(self, rhs: &QTensor) -> QTensor {
        self.try_add(rhs).expect("tensor shape mismatch in sum")
    }
}

impl Sub for &QTensor {
    type Output = QTensor;
    fn sub(self, rhs: &QTensor) -> QTensor {
        self.try_sub(rhs).expect("tensor shape mismatch in difference")
    }
}

/// Block circulant `circ(unfold(A))`, of size `n1·n3 × n2·n3`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCirculant {
    pub inner: QMatrix,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

/// Vertical stack of the frontal slices.
pub fn unfold(a: &QTensor) -> QMatrix {
    QMatrix::from_row_major(a.n1 * a.n3, a.n2, a.data.clone()).expect("storage is slice-major")
}

pub fn fold(m: &QMatrix, n3: usize) -> Result<QTensor> {
    if n3 == 0 || !m.rows().is_multiple_of(n3) {
        return Err(Error::DimensionMismatch(format!(
            "{} rows cannot be folded into {n3} frontal slices",
            m.rows()
        )));
    }
    QTensor::from_entries(m.rows() / n3, m.cols(), n3, m.as_slice().to_vec())
}

/// Block `(r, c)` is slice `(r − c) mod n3`.
pub fn circ(a: &QTensor) -> BlockCirculant {
    let (n1, n2, n3) = a.dims();
    let inner = QMatrix::from_fn(n1 * n3, n2 * n3, |row, col| {
        let (br, i) = (row / n1, row % n1);
        let (bc, j) = (col / n2, col % n2);
        a.get(i, j, (br + n3 - bc) % n3)
    });
    BlockCirculant { inner, n1, n2, n3 }
}

fn check_product(a: &QTensor, b: &QTensor) -> Result<()> {
    if a.n2 != b.n1 || a.n3 != b.n3 {
        return Err(Error::DimensionMismatch(format!(
            "T-product of {:?} and {:?}",
            a.dims(),
            b.dims()
        )));
    }
    Ok(())
}

/// T-product `fold(circ(A) · unfold(B))` in quaternion arithmetic.
pub fn tprod_oracle(a: &QTensor, b: &QTensor) -> Result<QTensor> {
    check_product(a, b)?;
    let prod = circ(a).inner.try_mul(&unfold(b))?;
    fold(&prod, a.n3)
}

/// Conjugate transpose: slice 1 is conjugate-transposed, slices 2..n3 are
/// conjugate-transposed in reverse order.
pub fn t_conj_transpose(a: &QTensor) -> QTensor {
    let (n1, n2, n3) = a.dims();
    QTensor::from_fn(n2, n1, n3, |i, j, k| a.get(j, i, (n3 - k) % n3).conj())
}

/// `n × n × n3` identity: first slice `I_n`, the rest zero.
pub fn t_identity(n: usize, n3: usize) -> QTensor {
    QTensor::from_fn(n, n, n3, |i, j, k| {
        if k == 0 && i == j {
            Quaternion::ONE
        } else {
            Quaternion::ZERO
        }
    })
}

/// `k`-fold T-product with itself; `A⁰` is the identity.
pub fn t_power(a: &QTensor, k: usize) -> Result<QTensor> {
    if a.n1 != a.n2 {
        return Err(Error::DimensionMismatch(format!(
            "power of non-square tensor {:?}",
            a.dims()
        )));
    }
    let mut out = t_identity(a.n1, a.n3);
    for _ in 0..k {
        out = tprod_oracle(&out, a)?;
    }
    Ok(out)
}

pub fn t_fro_norm(a: &QTensor) -> f64 {
    a.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
}

/// Oracle product of a chain of tensors, left to right.
pub fn tprod_chain(factors: &[&QTensor]) -> Result<QTensor> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::DimensionMismatch("empty product".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, f| tprod_oracle(&acc, f))
}
