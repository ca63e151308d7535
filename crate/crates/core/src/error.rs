use std::path::PathBuf;

use num_complex::Complex64;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("no trap radius with g(r) <= {theta} exists in bracket [{lo}, {hi}]")]
    TrapInfeasible { theta: f64, lo: f64, hi: f64 },

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("derivative undefined at the pole or at infinity")]
    UndefinedDerivative,

    #[error("seed is not in the basin of {target} within {budget} iterations")]
    NotInBasin { target: &'static str, budget: usize },

    #[error("Boettcher product did not converge within {kmax} factors")]
    Convergence { kmax: usize, partial: Complex64 },

    #[error("parameter is outside the locus required by {kind}: {reason}")]
    Domain { kind: &'static str, reason: String },

    #[error("numeric underflow evaluating Q_{k}; use a smaller k")]
    Underflow { k: u32 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("size guard exceeded: m + n = {d} > {limit}")]
    SizeGuard { d: u32, limit: u32 },

    #[error("polynomial does not contain the variable {0}")]
    MissingVariable(&'static str),

    #[error("cannot parse polynomial: {0}")]
    Parse(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
