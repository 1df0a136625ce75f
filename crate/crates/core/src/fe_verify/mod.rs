//! Functional-equation scalars and the quadrature checks of the integral
//! identities behind them.

pub mod betalike;
pub mod intertwine;
pub mod oscillatory;
pub mod quadrature;
pub mod scalars;

pub use betalike::{beta_like_closed, beta_like_quadrature, h_closed, h_integral, HData, HIntegral};
pub use intertwine::{
    decay_slope, intertwine_apply_n2, intertwine_composite_n2, intertwine_continued_n2, proportionality_probe, Bump,
    ProbeReport, TestFunction,
};
pub use oscillatory::{oscillatory_closed, oscillatory_integral, OscillatoryResult};
pub use quadrature::{Estimate, QuadratureConfig, Substitution};
pub use scalars::{
    eisfe_character_coefficients, eisfe_character_sum, eisfe_scalar, pairing_fe_gamma_product,
    pairing_fe_gamma_product_s, PairingData,
};
