//! Quaternion SVD recovered from the complex SVD of χ(M).
//!
//! Singular values of χ(M) come in equal pairs and every singular subspace
//! is invariant under the antilinear map `ψ([x; y]) = [−ȳ; x̄]`. Inside each
//! cluster of singular values we pick vectors `u` by pivoted Gram–Schmidt
//! against the accepted `{u, ψ(u)}` pairs; each `u` is one quaternion
//! singular vector. Right vectors follow from `v = χ(M)ᴴ u / σ`, and both
//! bases are completed symplectically over the standard basis.

use crate::cmat::{self, CVec};
use crate::error::Result;

use super::{chi_embed, columns_from_complex, default_rtol, QMatrix};

/// Two singular values closer than this (relative to `σ_max`) are treated
/// as one cluster. Roundoff splits true pairs by a few ulps of `σ_max`.
const CLUSTER_RTOL: f64 = 1.0 / (1u64 << 40) as f64;

#[derive(Debug, Clone)]
pub struct QMatSvd {
    /// `m × m` unitary.
    pub u: QMatrix,
    /// `min(m, n)` values, descending.
    pub s: Vec<f64>,
    /// `n × n` unitary.
    pub v: QMatrix,
}

impl QMatSvd {
    /// `U · diag(S) · Vᴴ`.
    pub fn reconstruct(&self) -> QMatrix {
        let sigma = QMatrix::real_diagonal(self.u.rows(), self.v.rows(), &self.s);
        &(&self.u * &sigma) * &self.v.adjoint()
    }
}

/// Quaternion singular values (one per χ pair), descending.
pub fn qm_singular_values(m: &QMatrix) -> Result<Vec<f64>> {
    let s = cmat::singular_values(&chi_embed(m).inner)?;
    Ok(s.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

pub fn qm_svd(m: &QMatrix) -> Result<QMatSvd> {
    qm_svd_with(m, default_rtol(m.rows(), m.cols()))
}

/// SVD with an explicit rank tolerance; values at or below `rtol · σ_max`
/// are treated as zero when building the bases.
pub fn qm_svd_with(m: &QMatrix, rtol: f64) -> Result<QMatSvd> {
    let (rows, cols) = m.shape();
    let chi = chi_embed(m).inner;
    let dec = cmat::svd(&chi)?;
    let p = rows.min(cols);
    let s: Vec<f64> = dec.s.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect();
    let smax = s.first().copied().unwrap_or(0.0);
    let rank = if smax > 0.0 {
        s.iter().filter(|&&x| x > rtol * smax).count()
    } else {
        0
    };

    let gap = rtol.max(CLUSTER_RTOL) * smax;
    let mut left: Vec<CVec> = Vec::with_capacity(rows);
    let mut left_basis: Vec<CVec> = Vec::with_capacity(2 * rows);
    let mut right: Vec<CVec> = Vec::with_capacity(cols);

    let mut start = 0;
    while start < rank {
        let mut end = start + 1;
        while end < rank && s[end - 1] - s[end] <= gap {
            end += 1;
        }
        let candidates: Vec<CVec> = (2 * start..2 * end)
            .map(|t| dec.u.column(t).into_owned())
            .collect();
        for (t, u) in (start..end).zip(symplectic_pick(candidates, &mut left_basis, end - start)) {
            let v = chi.adjoint() * &u / cmat_real(s[t]);
            left.push(u);
            right.push(v);
        }
        start = end;
    }

    let mut right_basis: Vec<CVec> = right.iter().flat_map(|v| [v.clone(), cmat::psi(v)]).collect();
    left.extend(symplectic_complete(&mut left_basis, rows - rank));
    right.extend(symplectic_complete(&mut right_basis, cols - rank));

    let mut sv = s;
    sv.truncate(p);
    for x in sv.iter_mut().skip(rank) {
        *x = 0.0;
    }
    Ok(QMatSvd {
        u: columns_from_complex(&left, rows),
        s: sv,
        v: columns_from_complex(&right, cols),
    })
}

fn cmat_real(x: f64) -> num_complex::Complex64 {
    num_complex::Complex64::new(x, 0.0)
}

/// Picks `count` vectors from `candidates`, each orthonormal to `basis` and to
/// the ψ-images of previous picks. Accepted `u, ψ(u)` are appended to `basis`.
fn symplectic_pick(mut candidates: Vec<CVec>, basis: &mut Vec<CVec>, count: usize) -> Vec<CVec> {
    let mut picked = Vec::with_capacity(count);
    for _ in 0..count {
        for c in candidates.iter_mut() {
            cmat::project_out(c, basis);
        }
        let best = candidates
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.norm()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc })
            .0;
        let mut u = candidates.swap_remove(best);
        cmat::project_out(&mut u, basis);
        let n = u.norm();
        u.unscale_mut(n);
        basis.push(u.clone());
        basis.push(cmat::psi(&u));
        picked.push(u);
    }
    picked
}

/// Adds `count` symplectic pairs drawn from the standard basis.
fn symplectic_complete(basis: &mut Vec<CVec>, count: usize) -> Vec<CVec> {
    if count == 0 {
        return Vec::new();
    }
    let dim = basis.first().map(|b| b.len()).unwrap_or(2 * count);
    let candidates = (0..dim)
        .map(|i| {
            let mut e = CVec::zeros(dim);
            e[i] = cmat_real(1.0);
            e
        })
        .collect();
    symplectic_pick(candidates, basis, count)
}
