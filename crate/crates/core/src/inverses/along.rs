//! Inverses along two tensors.
//!
//! The closed form `B*(C*A*B)†*C` is evaluated per frequency, and existence
//! is decided afterwards from the defining equations computed with the
//! reference product.

use crate::cmat::{self, CMat};
use crate::error::{Error, Result};
use crate::tensor::frequency::{default_tensor_rtol, half_len, map_half, max_spectral_norm};
use crate::tensor::{from_frequency, to_frequency, tprod_chain, FrequencyStack, QTensor};
use crate::verify::{rel_residual, INV_ALONG_TOL};

use rayon::prelude::*;

fn conformable(ok: bool, what: &str, dims: &[(usize, usize, usize)]) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("{what}: {dims:?}")))
    }
}

/// `outer * (mid)† * inner` per frequency, where `mid = inner·A·outer`.
fn sandwich_pinv(a: &FrequencyStack, outer: &FrequencyStack, inner: &FrequencyStack) -> Result<FrequencyStack> {
    let (n1, n2, n3) = a.dims();
    let h = half_len(n3);
    let mids: Vec<CMat> = (0..h)
        .into_par_iter()
        .map(|i| inner.block(i) * a.block(i) * outer.block(i))
        .collect();
    let (rows, cols) = (inner.dims().0, outer.dims().1);
    let threshold = default_tensor_rtol(rows, cols, n3) * max_spectral_norm(&mids)?;
    map_half(n2, n1, n3, |i| {
        let p = cmat::pinv_with_threshold(&mids[i], threshold)?;
        Ok(outer.block(i) * p * inner.block(i))
    })
}

/// Uncertified `B*(C*A*B)†*C`.
pub fn inv_along_right_formula(a: &QTensor, b: &QTensor, c: &QTensor) -> Result<QTensor> {
    let (n1, n2, n3) = a.dims();
    conformable(
        b.n1() == n2 && c.n2() == n1 && b.n3() == n3 && c.n3() == n3,
        "A, B, C not conformable for a right inverse along",
        &[a.dims(), b.dims(), c.dims()],
    )?;
    let z = sandwich_pinv(&to_frequency(a), &to_frequency(b), &to_frequency(c))?;
    from_frequency(&z)
}

/// Uncertified `E*(D*A*E)†*D`.
pub fn inv_along_left_formula(a: &QTensor, d: &QTensor, e: &QTensor) -> Result<QTensor> {
    let (n1, n2, n3) = a.dims();
    conformable(
        d.n2() == n1 && e.n1() == n2 && d.n3() == n3 && e.n3() == n3,
        "A, D, E not conformable for a left inverse along",
        &[a.dims(), d.dims(), e.dims()],
    )?;
    let z = sandwich_pinv(&to_frequency(a), &to_frequency(e), &to_frequency(d))?;
    from_frequency(&z)
}

fn certify(z: QTensor, residuals: [f64; 2]) -> Result<QTensor> {
    if residuals.iter().all(|r| *r <= INV_ALONG_TOL) {
        Ok(z)
    } else {
        Err(Error::NotInvertibleAlong {
            residuals,
            tol: INV_ALONG_TOL,
        })
    }
}

/// Right inverse along `(B, C)`, certified by `Z*A*B = B` and `C*A*Z = C`.
pub fn t_inv_along_right(a: &QTensor, b: &QTensor, c: &QTensor) -> Result<QTensor> {
    let z = inv_along_right_formula(a, b, c)?;
    let r1 = rel_residual(&tprod_chain(&[&z, a, b])?, b, b)?;
    let r2 = rel_residual(&tprod_chain(&[c, a, &z])?, c, c)?;
    certify(z, [r1, r2])
}

/// Left inverse along `(D, E)`, certified by `D*A*Z = D` and `Z*A*E = E`.
pub fn t_inv_along_left(a: &QTensor, d: &QTensor, e: &QTensor) -> Result<QTensor> {
    let z = inv_along_left_formula(a, d, e)?;
    let r1 = rel_residual(&tprod_chain(&[d, a, &z])?, d, d)?;
    let r2 = rel_residual(&tprod_chain(&[&z, a, e])?, e, e)?;
    certify(z, [r1, r2])
}

/// `(F, G)` with `M = F·G`, `F = U_r √S_r`, `G = √S_r V_rᴴ`.
fn block_frd(m: &CMat, r: usize) -> Result<(CMat, CMat)> {
    let d = cmat::svd(m)?;
    let mut f = d.u.columns(0, r).into_owned();
    let mut g = d.v.columns(0, r).adjoint();
    for t in 0..r {
        let root = d.s[t].sqrt();
        f.column_mut(t).scale_mut(root);
        g.row_mut(t).scale_mut(root);
    }
    Ok((f, g))
}

/// Common numerical rank of every half-spectrum block, if there is one.
fn uniform_rank(fs: &FrequencyStack, rtol: f64, name: &str) -> Result<usize> {
    let threshold = rtol * fs.spectral_norm()?;
    let ranks = fs
        .half()
        .par_iter()
        .map(|m| cmat::rank_above(m, threshold))
        .collect::<Result<Vec<_>>>()?;
    if ranks.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::NoFullRankDecomposition(format!(
            "frequency blocks of {name} have complex ranks {ranks:?}"
        )));
    }
    Ok(ranks[0])
}

/// Full-rank route `F̂*(G̃*A*F̂)⁻¹*G̃` with `B = F̂*Ĝ` and `C = F̃*G̃`,
/// evaluated per frequency.
pub fn t_inv_along_right_frd(
    a: &QTensor,
    b: &QTensor,
    c: &QTensor,
    rtol: Option<f64>,
) -> Result<QTensor> {
    let (n1, n2, n3) = a.dims();
    conformable(
        b.n1() == n2 && c.n2() == n1 && b.n3() == n3 && c.n3() == n3,
        "A, B, C not conformable for a right inverse along",
        &[a.dims(), b.dims(), c.dims()],
    )?;
    let (fa, fb, fc) = (to_frequency(a), to_frequency(b), to_frequency(c));
    let rb = uniform_rank(&fb, rtol.unwrap_or_else(|| default_tensor_rtol(b.n1(), b.n2(), n3)), "B")?;
    let rc = uniform_rank(&fc, rtol.unwrap_or_else(|| default_tensor_rtol(c.n1(), c.n2(), n3)), "C")?;
    if rb != rc {
        return Err(Error::NoFullRankDecomposition(format!(
            "B has complex block rank {rb}, C has {rc}"
        )));
    }
    let r = rb;
    if r == 0 {
        return Ok(QTensor::zeros(n2, n1, n3));
    }
    let core_rtol = rtol.unwrap_or_else(|| default_tensor_rtol(r, r, n3));
    let z = map_half(n2, n1, n3, |i| {
        let (f_hat, _) = block_frd(fb.block(i), r)?;
        let (_, g_tilde) = block_frd(fc.block(i), r)?;
        let core = &g_tilde * fa.block(i) * &f_hat;
        let sv = cmat::singular_values(&core)?;
        if sv[r - 1] <= core_rtol * sv[0] {
            return Err(Error::SingularCore);
        }
        let inv = core.try_inverse().ok_or(Error::SingularCore)?;
        Ok(f_hat * inv * g_tilde)
    })?;
    from_frequency(&z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverses::t_pinv;
    use crate::tensor::{t_identity, t_inverse, tprod_oracle};
    use crate::test_util::{random_tensor, seeded};
    use crate::verify::{inv_along_residuals, Side};

    fn rel_diff(a: &QTensor, b: &QTensor) -> f64 {
        (a - b).fro_norm() / b.fro_norm().max(1.0)
    }

    #[test]
    fn identity_pair_gives_inverse() {
        let mut rng = seeded(101);
        let a = random_tensor(&mut rng, 3, 3, 4);
        let id = t_identity(3, 4);
        let inv = t_inverse(&a).unwrap();
        assert!(rel_diff(&t_inv_along_right(&a, &id, &id).unwrap(), &inv) <= 1e-9);
        assert!(rel_diff(&t_inv_along_left(&a, &id, &id).unwrap(), &inv) <= 1e-9);
        assert!(rel_diff(&t_inv_along_right_frd(&a, &id, &id, None).unwrap(), &inv) <= 1e-9);
    }

    #[test]
    fn adjoint_pair_gives_pinv() {
        let mut rng = seeded(102);
        let a = random_tensor(&mut rng, 4, 3, 3);
        let ah = a.h();
        let x = t_pinv(&a, None).unwrap();
        assert!(rel_diff(&t_inv_along_right(&a, &ah, &ah).unwrap(), &x) <= 1e-9);
        assert!(rel_diff(&t_inv_along_left(&a, &ah, &ah).unwrap(), &x) <= 1e-9);
    }

    #[test]
    fn zero_is_not_invertible_along() {
        let a = QTensor::zeros(2, 2, 3);
        let id = t_identity(2, 3);
        assert!(matches!(
            t_inv_along_right(&a, &id, &id),
            Err(Error::NotInvertibleAlong { .. })
        ));
        assert!(matches!(
            t_inv_along_left(&a, &id, &id),
            Err(Error::NotInvertibleAlong { .. })
        ));
    }

    #[test]
    fn thin_factors_agree_across_formulas() {
        let mut rng = seeded(103);
        for _ in 0..5 {
            let a = random_tensor(&mut rng, 4, 5, 3);
            let b = tprod_oracle(&random_tensor(&mut rng, 5, 2, 3), &random_tensor(&mut rng, 2, 3, 3)).unwrap();
            let c = tprod_oracle(&random_tensor(&mut rng, 3, 2, 3), &random_tensor(&mut rng, 2, 4, 3)).unwrap();
            let z = t_inv_along_right(&a, &b, &c).unwrap();
            let zf = t_inv_along_right_frd(&a, &b, &c, None).unwrap();
            assert!(rel_diff(&zf, &z) <= 1e-8);
            assert!(inv_along_residuals(&a, &b, &c, &z, Side::Right, 1e-8).unwrap().pass);
        }
    }

    #[test]
    fn frequency_dependent_rank_rejected() {
        // Tube (1, 1) vanishes at frequency 1, so blocks have ranks 2 and 0.
        let one = crate::quaternion::Quaternion::ONE;
        let b = QTensor::from_entries(1, 1, 2, vec![one, one]).unwrap();
        let a = t_identity(1, 2);
        assert!(matches!(
            t_inv_along_right_frd(&a, &b, &b, None),
            Err(Error::NoFullRankDecomposition(_))
        ));
    }

    #[test]
    fn singular_core_detected() {
        let id = t_identity(2, 2);
        let a = QTensor::zeros(2, 2, 2);
        assert_eq!(t_inv_along_right_frd(&a, &id, &id, None), Err(Error::SingularCore));
    }
}
