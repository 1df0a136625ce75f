//! Γ-type functions, Hurwitz zeta and Dirichlet L-functions.

pub mod gamma;
pub mod zeta;

pub use gamma::{g_delta, gamma_c, gamma_complex, gamma_r, ln_gamma};
pub use zeta::{dirichlet_l, dirichlet_l_with, hurwitz_zeta, hurwitz_zeta_with, residue_l_at_1, ZetaConfig};
