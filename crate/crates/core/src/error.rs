use num_complex::Complex64;
use thiserror::Error;

/// Which argument of a multi-argument function sits on a pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleArgument {
    Z,
    A,
    B,
    APlusB,
}

impl std::fmt::Display for PoleArgument {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PoleArgument::Z => "z",
            PoleArgument::A => "a",
            PoleArgument::B => "b",
            PoleArgument::APlusB => "a+b",
        })
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("argument {arg} = {at} lies on a pole (nearest pole {pole})")]
    Pole {
        arg: PoleArgument,
        at: Complex64,
        pole: Complex64,
    },

    #[error("|value| overflows double precision (log|value| = {log_abs:.6})")]
    Overflow { log_abs: f64 },

    #[error("branch point: 1 + lambda*t vanishes at t = {t}")]
    BranchPoint { t: Complex64 },

    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("lambda = {lambda} equals 1/{j}, so the factor 1 - {j}*lambda of (1)_(k+1,lambda) vanishes")]
    SingularParameter { lambda: f64, j: u32 },

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("s = {s} is outside the strip {condition}")]
    Strip { s: Complex64, condition: String },

    #[error("s = {s} is at or next to an integer, where 1/sin(pi*s) is singular")]
    IntegerArgument { s: Complex64 },

    #[error("no convergence: error estimate {estimate:.3e} exceeds tolerance {tolerance:.3e}")]
    Convergence { estimate: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
