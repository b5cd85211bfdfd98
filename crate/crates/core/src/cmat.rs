//! Dense complex matrix helpers used by the frequency-domain kernels and by
//! the complex-adjoint route for quaternion matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// faer runs single-threaded here; parallelism lives at the frequency level.
static SEQUENTIAL: std::sync::Once = std::sync::Once::new();

/// Thin SVD with singular values sorted in descending order.
#[derive(Debug, Clone)]
pub struct CSvd {
    /// `rows × p` with `p = min(rows, cols)`.
    pub u: CMat,
    pub s: Vec<f64>,
    /// `cols × p`; the decomposition is `u · diag(s) · vᴴ`.
    pub v: CMat,
}

pub fn svd(m: &CMat) -> Result<CSvd> {
    let (rows, cols) = m.shape();
    let p = rows.min(cols);
    if p == 0 {
        return Ok(CSvd {
            u: CMat::zeros(rows, 0),
            s: Vec::new(),
            v: CMat::zeros(cols, 0),
        });
    }
    if m.iter().all(|z| *z == Complex64::ZERO) {
        return Ok(CSvd {
            u: CMat::identity(rows, p),
            s: vec![0.0; p],
            v: CMat::identity(cols, p),
        });
    }
    SEQUENTIAL.call_once(|| faer::set_global_parallelism(faer::Par::Seq));
    let fm = faer::Mat::<Complex64>::from_fn(rows, cols, |r, c| m[(r, c)]);
    let dec = fm.thin_svd().map_err(|_| Error::ConvergenceFailure)?;
    let s: Vec<f64> = dec.S().column_vector().iter().map(|z| z.re.max(0.0)).collect();
    if s.iter().any(|x| !x.is_finite()) {
        return Err(Error::ConvergenceFailure);
    }
    let (fu, fv) = (dec.U(), dec.V());
    let u = CMat::from_fn(rows, p, |r, c| fu[(r, c)]);
    let v = CMat::from_fn(cols, p, |r, c| fv[(r, c)]);
    Ok(CSvd { u, s, v })
}

pub fn singular_values(m: &CMat) -> Result<Vec<f64>> {
    Ok(svd(m)?.s)
}

pub fn spectral_norm(m: &CMat) -> Result<f64> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

/// Number of singular values strictly above `threshold`.
pub fn rank_above(m: &CMat, threshold: f64) -> Result<usize> {
    Ok(singular_values(m)?.iter().filter(|&&s| s > threshold).count())
}

/// Moore–Penrose inverse, dropping singular values at or below `threshold`.
pub fn pinv_with_threshold(m: &CMat, threshold: f64) -> Result<CMat> {
    let dec = svd(m)?;
    let (rows, cols) = m.shape();
    let mut out = CMat::zeros(cols, rows);
    for (t, &s) in dec.s.iter().enumerate() {
        if s > threshold {
            let vt = dec.v.column(t);
            let ut = dec.u.column(t);
            out += (vt * ut.adjoint()) * Complex64::new(1.0 / s, 0.0);
        }
    }
    Ok(out)
}

/// Square-matrix power by repeated multiplication; `m⁰ = I`.
pub fn power(m: &CMat, k: usize) -> CMat {
    let n = m.nrows();
    let mut out = CMat::identity(n, n);
    for _ in 0..k {
        out = &out * m;
    }
    out
}

/// Index of a square block: the smallest `k` with `rank(m^{k+1}) = rank(m^k)`.
/// `threshold_for` supplies the absolute rank threshold for the `k`-th power.
pub fn index_with(m: &CMat, mut threshold_for: impl FnMut(usize) -> f64) -> Result<usize> {
    let n = m.nrows();
    let mut prev_rank = n; // rank(m⁰) = rank(I)
    let mut pow = CMat::identity(n, n);
    for k in 0..=n {
        pow = &pow * m;
        let r = rank_above(&pow, threshold_for(k + 1))?;
        if r == prev_rank {
            return Ok(k);
        }
        prev_rank = r;
    }
    Ok(n)
}

/// Drazin inverse `m^k (m^{2k+1})† m^k`, evaluated through the factorization
/// `m^k = F·G` (`F = U_r S_r`, `G = V_rᴴ`) as `F (G m F)⁻¹ G`. Singular values
/// of `m^k` at or below `threshold` are dropped.
pub fn drazin_with(m: &CMat, k: usize, threshold: f64) -> Result<CMat> {
    let n = m.nrows();
    if k == 0 {
        return m.clone().try_inverse().ok_or(Error::Singular { frequency: 0 });
    }
    let d = svd(&power(m, k))?;
    let r = d.s.iter().filter(|&&s| s > threshold).count();
    if r == 0 {
        return Ok(CMat::zeros(n, n));
    }
    let mut f = d.u.columns(0, r).into_owned();
    for t in 0..r {
        f.column_mut(t).scale_mut(d.s[t]);
    }
    let g = d.v.columns(0, r).adjoint();
    let core = &g * m * &f;
    let lu = core.lu();
    let y = lu.solve(&g).ok_or(Error::Singular { frequency: 0 })?;
    Ok(f * y)
}

/// Applies `X ↦ J·conj(X)·J⁻¹` with `J = [[0, I], [−I, 0]]` on both sides.
///
/// Writing `X = [[A, B], [C, D]]` in `(rows/2, cols/2)` blocks the result is
/// `[[D̄, −C̄], [−B̄, Ā]]`. Complex-adjoint images are exactly its fixed points.
pub fn j_conj(x: &CMat) -> CMat {
    let (rows, cols) = x.shape();
    debug_assert!(rows % 2 == 0 && cols % 2 == 0);
    let (m, n) = (rows / 2, cols / 2);
    CMat::from_fn(rows, cols, |r, c| {
        let (top, left) = (r < m, c < n);
        let (rr, cc) = (if top { r + m } else { r - m }, if left { c + n } else { c - n });
        let v = x[(rr, cc)].conj();
        if top == left {
            v
        } else {
            -v
        }
    })
}

/// Antilinear map `ψ([x; y]) = [−ȳ; x̄]`, with `ψ² = −1`.
pub fn psi(v: &CVec) -> CVec {
    let n = v.len() / 2;
    CVec::from_fn(v.len(), |r, _| {
        if r < n {
            -v[r + n].conj()
        } else {
            v[r - n].conj()
        }
    })
}

pub fn fro_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Projects `v` off the span of orthonormal `basis` (two passes).
pub(crate) fn project_out(v: &mut CVec, basis: &[CVec]) {
    for _ in 0..2 {
        for b in basis {
            let coeff = b.dotc(v);
            v.axpy(-coeff, b, Complex64::new(1.0, 0.0));
        }
    }
}

/// Extends orthonormal columns to an orthonormal basis of `C^dim` by pivoted
/// Gram–Schmidt over the standard basis.
pub fn complete_unitary(mut cols: Vec<CVec>, dim: usize) -> CMat {
    let mut candidates: Vec<CVec> = (0..dim)
        .map(|i| {
            let mut e = CVec::zeros(dim);
            e[i] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    while cols.len() < dim {
        for c in candidates.iter_mut() {
            project_out(c, &cols);
        }
        let (best, _) = candidates
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.norm()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        let mut v = candidates.swap_remove(best);
        project_out(&mut v, &cols);
        let n = v.norm();
        v.unscale_mut(n);
        cols.push(v);
    }
    CMat::from_columns(&cols)
}
