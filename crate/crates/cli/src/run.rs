use std::path::Path;

use anyhow::anyhow;
use qtgi::fixtures;
use qtgi::inverses::inv_along_right_formula;
use qtgi::io::{read_qt, write_qt, QtError};
use qtgi::verify::{
    class_membership, drazin_residuals, inv_along_residuals, penrose_residuals, Side,
    DRAZIN_TOL, INV_ALONG_TOL, PENROSE_TOL,
};
use qtgi::{
    gen_family, solve_sandwich, t_core_nilpotent, t_drazin, t_group, t_inv_along_left,
    t_inv_along_right, t_inv_along_right_frd, t_multi_index, t_pinv, t_svd,
    tprod_fft, tprod_oracle, Error, PenroseClass, QTensor, ResidualReport,
};

use crate::cli::{AlongMethod, Cli, Command, ExampleName, ProductMethod, SideArg, Verify};

pub enum Outcome {
    Pass,
    Fail,
}

pub struct CliError {
    pub code: u8,
    pub error: anyhow::Error,
}

impl From<QtError> for CliError {
    fn from(e: QtError) -> Self {
        CliError { code: 2, error: e.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionMismatch(_) | Error::UnsupportedClass(_) => 2,
            _ => 1,
        };
        CliError { code, error: e.into() }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { code: 2, error: anyhow!(msg.into()) }
}

type Res<T> = Result<T, CliError>;

fn load(p: &Path) -> Res<QTensor> {
    Ok(read_qt(p)?)
}

fn save(p: &Path, t: &QTensor) -> Res<()> {
    Ok(write_qt(p, t)?)
}

fn class_arg(s: &str) -> Res<PenroseClass> {
    s.parse().map_err(|e: Error| usage(e.to_string()))
}

fn side(s: SideArg) -> Side {
    match s {
        SideArg::Right => Side::Right,
        SideArg::Left => Side::Left,
    }
}

fn report(r: &ResidualReport) -> Outcome {
    eprintln!("{r}");
    if r.pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

pub fn run(cli: &Cli) -> Res<Outcome> {
    let rtol = cli.rtol;
    match &cli.command {
        Command::Tprod { a, b, out, method } => {
            let (a, b) = (load(a)?, load(b)?);
            let c = match method {
                ProductMethod::Fft => tprod_fft(&a, &b)?,
                ProductMethod::Oracle => tprod_oracle(&a, &b)?,
            };
            save(out, &c)?;
        }
        Command::Pinv { a, out } => save(out, &t_pinv(&load(a)?, rtol)?)?,
        Command::Inverse { a, out } => {
            save(out, &qtgi::tensor::t_inverse_with(&load(a)?, rtol)?)?
        }
        Command::Tsvd { a, out_u, out_s, out_v } => {
            let d = t_svd(&load(a)?)?;
            save(out_u, &d.u)?;
            save(out_s, &d.s)?;
            save(out_v, &d.v)?;
        }
        Command::Drazin { a, out } => save(out, &t_drazin(&load(a)?, rtol)?)?,
        Command::Group { a, out } => save(out, &t_group(&load(a)?, rtol)?)?,
        Command::CoreNilpotent { a, out_core, out_nil } => {
            let (c, n) = t_core_nilpotent(&load(a)?, rtol)?;
            save(out_core, &c)?;
            save(out_nil, &n)?;
        }
        Command::InvAlong { side, a, b, c, out, method } => {
            let (a, b, c) = (load(a)?, load(b)?, load(c)?);
            let z = match (side, method) {
                (SideArg::Right, AlongMethod::Pinv) => t_inv_along_right(&a, &b, &c)?,
                (SideArg::Left, AlongMethod::Pinv) => t_inv_along_left(&a, &b, &c)?,
                (SideArg::Right, AlongMethod::Frd) => t_inv_along_right_frd(&a, &b, &c, rtol)?,
                (SideArg::Left, AlongMethod::Frd) => {
                    return Err(usage("--method frd is available for the right side only"))
                }
            };
            save(out, &z)?;
        }
        Command::SolveSandwich { a, b, c, w, out } => {
            let w = w.as_deref().map(load).transpose()?;
            let x = solve_sandwich(&load(a)?, &load(b)?, &load(c)?, w.as_ref(), rtol)?;
            save(out, &x)?;
        }
        Command::Family { a, z, class, out } => {
            let x = gen_family(&load(a)?, &load(z)?, &class_arg(class)?, rtol)?;
            save(out, &x)?;
        }
        Command::Verify { what } => return verify(what, rtol),
        Command::Example { which } => return example(*which, rtol),
    }
    Ok(Outcome::Pass)
}

fn verify(what: &Verify, rtol: Option<f64>) -> Res<Outcome> {
    let r = match what {
        Verify::Pinv { a, x, tol } => {
            penrose_residuals(&load(a)?, &load(x)?, tol.tol.unwrap_or(PENROSE_TOL))?
        }
        Verify::Drazin { a, x, k, tol } => {
            let a = load(a)?;
            let k = match k {
                Some(k) => *k,
                None => t_multi_index(&a, rtol)?.k_max,
            };
            eprintln!("k = {k}");
            drazin_residuals(&a, &load(x)?, k, tol.tol.unwrap_or(DRAZIN_TOL))?
        }
        Verify::InvAlong { side: s, a, b, c, z, tol } => inv_along_residuals(
            &load(a)?,
            &load(b)?,
            &load(c)?,
            &load(z)?,
            side(*s),
            tol.tol.unwrap_or(INV_ALONG_TOL),
        )?,
        Verify::Class { a, x, class, tol } => class_membership(
            &load(a)?,
            &load(x)?,
            &class_arg(class)?,
            tol.tol.unwrap_or(PENROSE_TOL),
        )?,
    };
    Ok(report(&r))
}

/// Tolerance for comparing against values printed to four decimals.
const PRINTED_TOL: f64 = 5e-4;

fn example(which: ExampleName, rtol: Option<f64>) -> Res<Outcome> {
    let (ours, printed, ours_report, printed_report) = match which {
        ExampleName::Mp => {
            let a = fixtures::mp_input();
            let p = fixtures::mp_printed();
            let x = t_pinv(&a, rtol)?;
            let r = penrose_residuals(&a, &x, PENROSE_TOL)?;
            let rp = penrose_residuals(&a, &p, PRINTED_TOL)?;
            (x, p, r, rp)
        }
        ExampleName::Drazin => {
            let a = fixtures::drazin_input();
            let p = fixtures::drazin_printed();
            let k = t_multi_index(&a, rtol)?.k_max;
            eprintln!("multi-index k_max = {k}");
            let x = t_drazin(&a, rtol)?;
            let r = drazin_residuals(&a, &x, k, DRAZIN_TOL)?;
            let rp = drazin_residuals(&a, &p, k, PRINTED_TOL)?;
            (x, p, r, rp)
        }
        ExampleName::InvAlong => {
            let (a, b, c) = fixtures::along_inputs();
            let p = fixtures::along_printed();
            let z = inv_along_right_formula(&a, &b, &c)?;
            let r = inv_along_residuals(&a, &b, &c, &z, Side::Right, INV_ALONG_TOL)?;
            let rp = inv_along_residuals(&a, &b, &c, &p, Side::Right, PRINTED_TOL)?;
            (z, p, r, rp)
        }
    };
    eprintln!("computed result:\n{ours_report}\n");
    eprintln!("printed values:\n{printed_report}\n");
    eprintln!(
        "max |computed − printed| = {:.4e}",
        fixtures::max_abs_deviation(&ours, &printed)
    );
    eprintln!("computed (:,:,1) entry (1,1) = {}", ours.get(0, 0, 0));
    eprintln!("printed  (:,:,1) entry (1,1) = {}", printed.get(0, 0, 0));
    Ok(if ours_report.pass { Outcome::Pass } else { Outcome::Fail })
}
