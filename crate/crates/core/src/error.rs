use std::path::PathBuf;

use crate::material::Inequality;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("non-finite material parameter `{0}`")]
    NonFinite(&'static str),

    #[error("material parameters violate: {}", join(.0))]
    Violated(Vec<Inequality>),

    #[error("profile invalid at x = {x}: {}", join(.violated))]
    Profile { x: f64, violated: Vec<Inequality> },

    #[error("grid must be strictly increasing and uniform")]
    NonUniformGrid,

    #[error("wavenumber omega must be nonzero")]
    ZeroOmega,

    #[error("field length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("stencil needs at least {min} interior points, got {got}")]
    TooFewPoints { min: usize, got: usize },

    #[error("periodic ghosts must be requested on both sides")]
    OneSidedPeriodic,

    #[error("invalid step: {0}")]
    InvalidStep(String),

    #[error("numerical blow-up: non-finite value at t = {t}")]
    BlowUp { t: f64 },

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn join(v: &[Inequality]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}
