//! The sandwich equation `A*X*B = C` and parametrized families of
//! `{1}`-, `{1,3}`- and `{1,4}`-inverses, all built on `A†`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tensor::{t_identity, tprod_chain, tprod_fft, QTensor};
use crate::verify::{class_membership, rel_residual};

use super::t_pinv;

pub const SANDWICH_TOL: f64 = 1e-8;
pub const FAMILY_TOL: f64 = 1e-8;

/// A nonempty subset of the Penrose equations `{1, 2, 3, 4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PenroseClass {
    mask: u8,
}

impl PenroseClass {
    pub fn new(equations: &[u8]) -> Result<Self> {
        let mut mask = 0u8;
        for &e in equations {
            if !(1..=4).contains(&e) {
                return Err(Error::UnsupportedClass(format!(
                    "{equations:?}: equation {e} is not one of 1..=4"
                )));
            }
            mask |= 1 << (e - 1);
        }
        if mask == 0 {
            return Err(Error::UnsupportedClass("empty class".into()));
        }
        Ok(Self { mask })
    }

    pub fn full() -> Self {
        Self { mask: 0b1111 }
    }

    pub fn contains(&self, eq: u8) -> bool {
        (1..=4).contains(&eq) && self.mask & (1 << (eq - 1)) != 0
    }

    /// The equations in ascending order.
    pub fn equations(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=4).filter(move |&e| self.contains(e))
    }
}

impl fmt::Display for PenroseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.equations().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for PenroseClass {
    type Err = Error;

    /// Accepts `1,3`, `{1,3}` or `13`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut eqs = Vec::new();
        for ch in inner.chars().filter(|c| !c.is_whitespace() && *c != ',') {
            let d = ch
                .to_digit(10)
                .ok_or_else(|| Error::UnsupportedClass(format!("cannot parse `{s}`")))?;
            eqs.push(d as u8);
        }
        Self::new(&eqs)
    }
}

/// Solves `A*X*B = C` as `A†*C*B† + W − A†*A*W*B*B†` after checking
/// consistency `A*A†*C*B†*B = C`. `W` defaults to zero.
pub fn solve_sandwich(
    a: &QTensor,
    b: &QTensor,
    c: &QTensor,
    w: Option<&QTensor>,
    rtol: Option<f64>,
) -> Result<QTensor> {
    let (m, n, n3) = a.dims();
    let (p, q, _) = b.dims();
    if c.dims() != (m, q, n3) || b.n3() != n3 {
        return Err(Error::DimensionMismatch(format!(
            "A {:?}, B {:?}, C {:?} not conformable for A*X*B = C",
            a.dims(),
            b.dims(),
            c.dims()
        )));
    }
    let zero;
    let w = match w {
        Some(w) => {
            if w.dims() != (n, p, n3) {
                return Err(Error::DimensionMismatch(format!(
                    "W is {:?}, expected {:?}",
                    w.dims(),
                    (n, p, n3)
                )));
            }
            w
        }
        None => {
            zero = QTensor::zeros(n, p, n3);
            &zero
        }
    };

    let ap = t_pinv(a, rtol)?;
    let bp = t_pinv(b, rtol)?;
    let apcbp = tprod_fft(&tprod_fft(&ap, c)?, &bp)?;
    let residual = rel_residual(&tprod_chain(&[a, &apcbp, b])?, c, c)?;
    if residual.is_nan() || residual > SANDWICH_TOL {
        return Err(Error::Inconsistent {
            residual,
            tol: SANDWICH_TOL,
        });
    }
    let correction = tprod_fft(&tprod_fft(&tprod_fft(&ap, a)?, w)?, &tprod_fft(b, &bp)?)?;
    let x = apcbp.try_add(w)?.try_sub(&correction)?;
    let residual = rel_residual(&tprod_chain(&[a, &x, b])?, c, c)?;
    if residual.is_nan() || residual > SANDWICH_TOL {
        return Err(Error::Inconsistent {
            residual,
            tol: SANDWICH_TOL,
        });
    }
    Ok(x)
}

/// Member of the `{1}`, `{1,3}` or `{1,4}` family parametrized by `Z`:
///
/// - `{1}`: `A† + Z − A†*A*Z*A*A†`
/// - `{1,3}`: `A† + (I − A†*A)*Z`
/// - `{1,4}`: `A† + Z*(I − A*A†)`
pub fn gen_family(
    a: &QTensor,
    z: &QTensor,
    class: &PenroseClass,
    rtol: Option<f64>,
) -> Result<QTensor> {
    let (n1, n2, n3) = a.dims();
    let which: Vec<u8> = class.equations().collect();
    if !matches!(which.as_slice(), [1] | [1, 3] | [1, 4]) {
        return Err(Error::UnsupportedClass(class.to_string()));
    }
    if z.dims() != (n2, n1, n3) {
        return Err(Error::DimensionMismatch(format!(
            "Z is {:?}, expected {:?}",
            z.dims(),
            (n2, n1, n3)
        )));
    }
    let ap = t_pinv(a, rtol)?;
    let x = match which.as_slice() {
        [1] => {
            let pa = tprod_fft(&ap, a)?;
            let app = tprod_fft(a, &ap)?;
            let t = tprod_fft(&tprod_fft(&pa, z)?, &app)?;
            ap.try_add(z)?.try_sub(&t)?
        }
        [1, 3] => {
            let proj = t_identity(n2, n3).try_sub(&tprod_fft(&ap, a)?)?;
            ap.try_add(&tprod_fft(&proj, z)?)?
        }
        _ => {
            let proj = t_identity(n1, n3).try_sub(&tprod_fft(a, &ap)?)?;
            ap.try_add(&tprod_fft(z, &proj)?)?
        }
    };
    let report = class_membership(a, &x, class, FAMILY_TOL)?;
    if !report.pass {
        return Err(Error::CertificationFailed {
            residual: report.max(),
            tol: FAMILY_TOL,
        });
    }
    Ok(x)
}
