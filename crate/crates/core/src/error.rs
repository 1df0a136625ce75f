use thiserror::Error;

use crate::C64;

/// Errors raised by the numeric and symbolic routines of this crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: C64 },
    #[error("character is not principal")]
    NotPrincipal,
    #[error("character mod {modulus} is not primitive (conductor {conductor})")]
    NotPrimitive { modulus: u64, conductor: u64 },
    #[error("outside the region of convergence: {0}")]
    ConvergenceRegion(String),
    #[error("outside the conditional-convergence strip: {0}")]
    Strip(String),
    #[error("zero entry at position {0}")]
    ZeroEntry(usize),
    #[error("zero component at position {0}")]
    ZeroComponent(usize),
    #[error("normalization violated: {0}")]
    Normalization(String),
    #[error("tolerance not met: achieved error {achieved:e}, requested {requested:e}")]
    ToleranceNotMet { achieved: f64, requested: f64 },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(z: C64, what: &'static str) -> Result<C64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}
