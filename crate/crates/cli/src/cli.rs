use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qtgi", version, about = "T-product algebra and generalized inverses of quaternion tensors")]
pub struct Cli {
    /// Worker threads for the per-frequency kernels.
    #[arg(long, global = true, env = "QTGI_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,

    /// Relative rank tolerance (default: max(n1, n2)·n3·eps).
    #[arg(long, global = true)]
    pub rtol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// T-product C = A * B.
    Tprod {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = ProductMethod::Fft)]
        method: ProductMethod,
    },
    /// Moore–Penrose inverse.
    Pinv {
        a: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Inverse of a square tensor.
    Inverse {
        a: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// T-SVD A = U * S * V^H.
    Tsvd {
        a: PathBuf,
        #[arg(long)]
        out_u: PathBuf,
        #[arg(long)]
        out_s: PathBuf,
        #[arg(long)]
        out_v: PathBuf,
    },
    /// Drazin inverse.
    Drazin {
        a: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Group inverse (exits 1 if some block index exceeds one).
    Group {
        a: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Core and nilpotent parts.
    CoreNilpotent {
        a: PathBuf,
        #[arg(long)]
        out_core: PathBuf,
        #[arg(long)]
        out_nil: PathBuf,
    },
    /// Right or left inverse of A along two tensors.
    InvAlong {
        #[arg(value_enum)]
        side: SideArg,
        a: PathBuf,
        /// B (right) or D (left).
        b: PathBuf,
        /// C (right) or E (left).
        c: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = AlongMethod::Pinv)]
        method: AlongMethod,
    },
    /// Solve A * X * B = C.
    SolveSandwich {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        /// Free parameter W (default zero).
        #[arg(long)]
        w: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Member of the {1}, {1,3} or {1,4} family parametrized by Z.
    Family {
        a: PathBuf,
        z: PathBuf,
        /// Penrose class, e.g. `1,3`.
        #[arg(long)]
        class: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a residual report; exit 0 iff it passes.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Run an embedded worked example and compare against its printed values.
    Example {
        #[arg(value_enum)]
        which: ExampleName,
    },
}

#[derive(Args, Debug)]
pub struct Tol {
    /// Residual tolerance (default depends on the check).
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// The four Penrose equations.
    Pinv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[command(flatten)]
        tol: Tol,
    },
    /// Drazin equations with index k (default: computed k_max).
    Drazin {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        tol: Tol,
    },
    /// Defining equations of an inverse along two tensors.
    InvAlong {
        #[arg(value_enum)]
        side: SideArg,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        c: PathBuf,
        #[arg(long)]
        z: PathBuf,
        #[command(flatten)]
        tol: Tol,
    },
    /// Membership in a Penrose class.
    Class {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        class: String,
        #[command(flatten)]
        tol: Tol,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMethod {
    Fft,
    Oracle,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlongMethod {
    Pinv,
    Frd,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    Right,
    Left,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleName {
    Mp,
    Drazin,
    InvAlong,
}
