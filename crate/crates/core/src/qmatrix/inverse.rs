//! Rank, index and generalized inverses of quaternion matrices.


use crate::error::{Error, Result};

use super::{chi_embed, chi_project, default_rtol, qm_singular_values, qm_svd_with, QMatrix};

/// Relative residual bound for certifying an inverse along two matrices.
pub const INV_ALONG_TOL: f64 = 1e-8;

fn rtol_or_default(m: &QMatrix, rtol: Option<f64>) -> f64 {
    rtol.unwrap_or_else(|| default_rtol(m.rows(), m.cols()))
}

fn require_square(m: &QMatrix, what: &str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{what} needs a square matrix, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn rel(diff: &QMatrix, reference: &QMatrix) -> f64 {
    diff.fro_norm() / reference.fro_norm().max(1.0)
}

/// Count of singular values above `rtol · σ_max`.
pub fn qm_rank(m: &QMatrix, rtol: Option<f64>) -> Result<usize> {
    let rtol = rtol_or_default(m, rtol);
    let s = qm_singular_values(m)?;
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(s.iter().filter(|&&x| x > rtol * smax).count())
}

/// `V · diag(S†) · Uᴴ`.
pub fn qm_pinv(m: &QMatrix, rtol: Option<f64>) -> Result<QMatrix> {
    let rtol = rtol_or_default(m, rtol);
    let d = qm_svd_with(m, rtol)?;
    let smax = d.s.first().copied().unwrap_or(0.0);
    let inv: Vec<f64> = d
        .s
        .iter()
        .map(|&s| if smax > 0.0 && s > rtol * smax { 1.0 / s } else { 0.0 })
        .collect();
    let sigma = QMatrix::real_diagonal(m.cols(), m.rows(), &inv);
    Ok(&(&d.v * &sigma) * &d.u.adjoint())
}

/// Inverse of a square quaternion matrix through χ.
pub fn qm_inverse(m: &QMatrix, rtol: Option<f64>) -> Result<QMatrix> {
    require_square(m, "inverse")?;
    if qm_rank(m, rtol)? < m.rows() {
        return Err(Error::Singular { frequency: 0 });
    }
    let inv = chi_embed(m)
        .inner
        .try_inverse()
        .ok_or(Error::Singular { frequency: 0 })?;
    Ok(chi_project(&inv))
}

/// Smallest `k ≥ 0` with `rank(M^{k+1}) = rank(M^k)`.
pub fn qm_index(m: &QMatrix, rtol: Option<f64>) -> Result<usize> {
    require_square(m, "index")?;
    let n = m.rows();
    let mut prev = n;
    let mut pow = QMatrix::identity(n);
    for k in 0..=n {
        pow = &pow * m;
        let r = qm_rank(&pow, rtol)?;
        if r == prev {
            return Ok(k);
        }
        prev = r;
    }
    Ok(n)
}

/// `M^D = M^k (M^{2k+1})† M^k` with `k = ind(M)`.
pub fn qm_drazin(m: &QMatrix, rtol: Option<f64>) -> Result<QMatrix> {
    let k = qm_index(m, rtol)?;
    let mk = m.pow(k);
    let big = m.pow(2 * k + 1);
    let p = qm_pinv(&big, rtol)?;
    Ok(&(&mk * &p) * &mk)
}

/// Core-nilpotent split `(C_M, N_M)` with `C_M = M² M^D`, `N_M = M − C_M`.
pub fn qm_core_nilpotent(m: &QMatrix, rtol: Option<f64>) -> Result<(QMatrix, QMatrix)> {
    let d = qm_drazin(m, rtol)?;
    let core = &(m * m) * &d;
    let nil = m - &core;
    Ok((core, nil))
}

/// Full-rank factorization `M = F·G` with `F = U_r √S_r`, `G = √S_r V_rᴴ`.
#[derive(Debug, Clone)]
pub struct FullRankDecomp {
    pub f: QMatrix,
    pub g: QMatrix,
    pub rank: usize,
}

pub fn qm_frd(m: &QMatrix, rtol: Option<f64>) -> Result<FullRankDecomp> {
    let rtol = rtol_or_default(m, rtol);
    let d = qm_svd_with(m, rtol)?;
    let smax = d.s.first().copied().unwrap_or(0.0);
    let r = d.s.iter().filter(|&&s| smax > 0.0 && s > rtol * smax).count();
    if r == 0 {
        return Err(Error::RankZero);
    }
    let root: Vec<f64> = d.s[..r].iter().map(|s| s.sqrt()).collect();
    let sq = QMatrix::real_diagonal(r, r, &root);
    let f = &d.u.columns(0..r) * &sq;
    let g = &sq * &d.v.columns(0..r).adjoint();
    Ok(FullRankDecomp { f, g, rank: r })
}

fn check_dims(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(msg()))
    }
}

/// Right inverse of `A` along `(B, C)`: `B (C A B)† C`, certified by
/// `Z A B = B` and `C A Z = C`.
pub fn qm_inv_along_right(a: &QMatrix, b: &QMatrix, c: &QMatrix) -> Result<QMatrix> {
    check_dims(a.cols() == b.rows() && c.cols() == a.rows(), || {
        format!(
            "A {:?}, B {:?}, C {:?} not conformable for a right inverse along",
            a.shape(),
            b.shape(),
            c.shape()
        )
    })?;
    let cab = &(c * a) * b;
    let z = &(b * &qm_pinv(&cab, None)?) * c;
    let r1 = rel(&(&(&(&z * a) * b) - b), b);
    let r2 = rel(&(&(&(c * a) * &z) - c), c);
    certify(z, [r1, r2])
}

/// Left inverse of `A` along `(D, E)`: `E (D A E)† D`, certified by
/// `D A Z = D` and `Z A E = E`.
pub fn qm_inv_along_left(a: &QMatrix, d: &QMatrix, e: &QMatrix) -> Result<QMatrix> {
    check_dims(d.cols() == a.rows() && a.cols() == e.rows(), || {
        format!(
            "A {:?}, D {:?}, E {:?} not conformable for a left inverse along",
            a.shape(),
            d.shape(),
            e.shape()
        )
    })?;
    let dae = &(d * a) * e;
    let z = &(e * &qm_pinv(&dae, None)?) * d;
    let r1 = rel(&(&(&(d * a) * &z) - d), d);
    let r2 = rel(&(&(&(&z * a) * e) - e), e);
    certify(z, [r1, r2])
}

fn certify(z: QMatrix, residuals: [f64; 2]) -> Result<QMatrix> {
    if residuals.iter().all(|r| *r <= INV_ALONG_TOL) {
        Ok(z)
    } else {
        Err(Error::NotInvertibleAlong {
            residuals,
            tol: INV_ALONG_TOL,
        })
    }
}

/// Full-rank route `F̂ (G̃ A F̂)⁻¹ G̃` where `B = F̂ Ĝ` and `C = F̃ G̃`.
pub fn qm_inv_along_right_frd(
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    rtol: Option<f64>,
) -> Result<QMatrix> {
    check_dims(a.cols() == b.rows() && c.cols() == a.rows(), || {
        "A, B, C not conformable for a right inverse along".to_string()
    })?;
    let rb = qm_rank(b, rtol)?;
    let rc = qm_rank(c, rtol)?;
    if rb != rc {
        return Err(Error::RankMismatch { b: rb, c: rc });
    }
    if rb == 0 {
        return Ok(QMatrix::zeros(a.cols(), a.rows()));
    }
    let fb = qm_frd(b, rtol)?;
    let fc = qm_frd(c, rtol)?;
    let core = &(&fc.g * a) * &fb.f;
    let core_rtol = rtol.unwrap_or_else(|| default_rtol(rb, rb));
    if qm_rank(&core, Some(core_rtol))? < rb {
        return Err(Error::SingularCore);
    }
    let inv = qm_inverse(&core, Some(core_rtol)).map_err(|_| Error::SingularCore)?;
    Ok(&(&fb.f * &inv) * &fc.g)
}
