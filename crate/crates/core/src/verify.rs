//! Residual reports for the defining equations of each generalized inverse.
//!
//! Every product here goes through [`tprod_oracle`], never the frequency
//! path, so these reports are an independent check on the fast kernels.
//! A residual is `‖lhs − rhs‖ / max(1, ‖ref‖)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::inverses::PenroseClass;
use crate::tensor::{t_identity, t_power, tprod_chain, tprod_oracle, QTensor};

pub const PENROSE_TOL: f64 = 1e-10;
pub const DRAZIN_TOL: f64 = 1e-8;
pub const INV_ALONG_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub names: Vec<String>,
    pub values: Vec<f64>,
    pub tol: f64,
    pub pass: bool,
}

impl ResidualReport {
    pub fn new(entries: Vec<(String, f64)>, tol: f64) -> Self {
        let (names, values): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        let pass = values.iter().all(|v| v.is_finite() && *v <= tol);
        Self {
            names,
            values,
            tol,
            pass,
        }
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.names.iter().position(|n| n == name).map(|i| self.values[i])
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, v) in self.names.iter().zip(&self.values) {
            let mark = if v.is_finite() && *v <= self.tol { "ok" } else { "FAIL" };
            writeln!(f, "{n:<18} {v:.3e}  {mark}")?;
        }
        write!(
            f,
            "{} (max {:.3e}, tol {:.1e})",
            if self.pass { "PASS" } else { "FAIL" },
            self.max(),
            self.tol
        )
    }
}

/// `‖lhs − rhs‖ / max(1, ‖reference‖)`.
pub fn rel_residual(lhs: &QTensor, rhs: &QTensor, reference: &QTensor) -> Result<f64> {
    Ok(lhs.try_sub(rhs)?.fro_norm() / reference.fro_norm().max(1.0))
}

fn expect_dims(t: &QTensor, dims: (usize, usize, usize), what: &str) -> Result<()> {
    if t.dims() != dims {
        return Err(Error::DimensionMismatch(format!(
            "{what} is {:?}, expected {:?}",
            t.dims(),
            dims
        )));
    }
    Ok(())
}

fn expect_square(a: &QTensor) -> Result<()> {
    if a.n1() != a.n2() {
        return Err(Error::DimensionMismatch(format!(
            "tensor {:?} is not square in its first two modes",
            a.dims()
        )));
    }
    Ok(())
}

/// Residuals of the Penrose equations selected by `class`.
fn penrose_subset(a: &QTensor, x: &QTensor, class: &PenroseClass, tol: f64) -> Result<ResidualReport> {
    let (n1, n2, n3) = a.dims();
    expect_dims(x, (n2, n1, n3), "X")?;
    let ax = tprod_oracle(a, x)?;
    let xa = tprod_oracle(x, a)?;
    let mut entries = Vec::new();
    for eq in class.equations() {
        let value = match eq {
            1 => rel_residual(&tprod_oracle(&ax, a)?, a, a)?,
            2 => rel_residual(&tprod_oracle(&xa, x)?, x, x)?,
            3 => rel_residual(&ax.h(), &ax, &ax)?,
            4 => rel_residual(&xa.h(), &xa, &xa)?,
            _ => unreachable!("PenroseClass holds equations 1..=4"),
        };
        let name = match eq {
            1 => "(1) A*X*A = A",
            2 => "(2) X*A*X = X",
            3 => "(3) (A*X)^H = A*X",
            _ => "(4) (X*A)^H = X*A",
        };
        entries.push((name.to_string(), value));
    }
    Ok(ResidualReport::new(entries, tol))
}

/// The four Penrose residuals of `X` as a candidate for `A†`.
pub fn penrose_residuals(a: &QTensor, x: &QTensor, tol: f64) -> Result<ResidualReport> {
    penrose_subset(a, x, &PenroseClass::full(), tol)
}

/// Residuals of exactly the equations named by `class`.
pub fn class_membership(
    a: &QTensor,
    x: &QTensor,
    class: &PenroseClass,
    tol: f64,
) -> Result<ResidualReport> {
    penrose_subset(a, x, class, tol)
}

/// Residuals of `A^{k+1}*X = A^k`, `X*A*X = X`, `A*X = X*A`.
pub fn drazin_residuals(a: &QTensor, x: &QTensor, k: usize, tol: f64) -> Result<ResidualReport> {
    expect_square(a)?;
    expect_dims(x, a.dims(), "X")?;
    let ak = t_power(a, k)?;
    let ak1 = tprod_oracle(&ak, a)?;
    let ax = tprod_oracle(a, x)?;
    let xa = tprod_oracle(x, a)?;
    let entries = vec![
        (
            "A^(k+1)*X = A^k".to_string(),
            rel_residual(&tprod_oracle(&ak1, x)?, &ak, &ak)?,
        ),
        (
            "X*A*X = X".to_string(),
            rel_residual(&tprod_oracle(&xa, x)?, x, x)?,
        ),
        ("A*X = X*A".to_string(), rel_residual(&ax, &xa, &ax)?),
    ];
    Ok(ResidualReport::new(entries, tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

impl std::str::FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "right" => Ok(Side::Right),
            "left" => Ok(Side::Left),
            other => Err(format!("expected `right` or `left`, got `{other}`")),
        }
    }
}

/// Defining equations of an inverse along two tensors, plus `Z*A*Z = Z`.
///
/// Right side: `Z*A*B = B`, `C*A*Z = C`. Left side, with `(b, c)` read as
/// `(D, E)`: `D*A*Z = D`, `Z*A*E = E`.
pub fn inv_along_residuals(
    a: &QTensor,
    b: &QTensor,
    c: &QTensor,
    z: &QTensor,
    side: Side,
    tol: f64,
) -> Result<ResidualReport> {
    let (n1, n2, n3) = a.dims();
    expect_dims(z, (n2, n1, n3), "Z")?;
    let za = tprod_oracle(z, a)?;
    let mut entries = match side {
        Side::Right => {
            let ca = tprod_oracle(c, a)?;
            vec![
                ("Z*A*B = B".to_string(), rel_residual(&tprod_oracle(&za, b)?, b, b)?),
                ("C*A*Z = C".to_string(), rel_residual(&tprod_oracle(&ca, z)?, c, c)?),
            ]
        }
        Side::Left => {
            let (d, e) = (b, c);
            let da = tprod_oracle(d, a)?;
            vec![
                ("D*A*Z = D".to_string(), rel_residual(&tprod_oracle(&da, z)?, d, d)?),
                ("Z*A*E = E".to_string(), rel_residual(&tprod_oracle(&za, e)?, e, e)?),
            ]
        }
    };
    entries.push((
        "Z*A*Z = Z".to_string(),
        rel_residual(&tprod_oracle(&za, z)?, z, z)?,
    ));
    Ok(ResidualReport::new(entries, tol))
}

/// `max(‖Qᴴ*Q − I‖, ‖Q*Qᴴ − I‖) / ‖I‖`.
pub fn orthogonality_residual(q: &QTensor) -> Result<f64> {
    expect_square(q)?;
    let id = t_identity(q.n1(), q.n3());
    let qh = q.h();
    let r1 = tprod_chain(&[&qh, q])?.try_sub(&id)?.fro_norm();
    let r2 = tprod_chain(&[q, &qh])?.try_sub(&id)?.fro_norm();
    Ok(r1.max(r2) / id.fro_norm())
}

/// Off-diagonal Frobenius mass over total mass, across all frontal slices.
pub fn f_diagonal_residual(s: &QTensor) -> f64 {
    let (n1, n2, n3) = s.dims();
    let mut off = 0.0;
    let mut total = 0.0;
    for k in 0..n3 {
        for i in 0..n1 {
            for j in 0..n2 {
                let m = s.get(i, j, k).norm_sqr();
                total += m;
                if i != j {
                    off += m;
                }
            }
        }
    }
    if total == 0.0 {
        0.0
    } else {
        (off / total).sqrt()
    }
}
