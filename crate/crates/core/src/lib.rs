//! Dirichlet characters, Fourier coefficients of mirabolic Eisenstein
//! distributions, archimedean Γ-factor calculus and numerical checks of the
//! associated functional-equation scalars.

pub mod arith;
pub mod characters;
pub mod eisenstein;
pub mod fe_verify;
pub mod gamma_factors;
pub mod principal_series;
mod error;
pub mod special;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex64;
