//! Scalar factors in the functional equations of the mirabolic Eisenstein
//! distribution and of its pairing against a cusp form.

use num_rational::Rational64;

use crate::characters::{enumerate_characters, DirichletCharacter};
use crate::eisenstein::EisParams;
use crate::error::{finite, Error, Result};
use crate::special::g_delta;
use crate::C64;

fn real_pow(base: f64, w: C64) -> C64 {
    (w * base.ln()).exp()
}

fn sign(parity: u32) -> f64 {
    if parity.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `(-1)^ε τ_ψ N^{2ν-ν/n-1/2} G_ε(ν-n/2+1)` for primitive `ψ`.
pub fn eisfe_scalar(params: &EisParams) -> Result<C64> {
    let psi = params.psi();
    if !psi.is_primitive() {
        return Err(Error::NotPrimitive { modulus: psi.modulus(), conductor: psi.conductor() });
    }
    let n = params.n() as f64;
    let nu = params.nu();
    let eps = params.epsilon() as u32;
    let g = g_delta(nu - n / 2.0 + 1.0, eps)?;
    let level = real_pow(psi.modulus() as f64, nu * 2.0 - nu / n - 0.5);
    finite(psi.gauss_sum() * level * g * sign(eps), "eisfe scalar")
}

/// The coefficients `(1/φ(N)) Σ_a ψ̂(a) ξ̄(a)` attached to each character
/// `ξ` mod `N`, in enumeration order. For imprimitive `ψ` the functional
/// equation relates `E_{-ν,ψ}` to this combination of the `E_{ν,ξ}`.
pub fn eisfe_character_coefficients(psi: &DirichletCharacter) -> Vec<(DirichletCharacter, C64)> {
    let n = psi.modulus();
    let hat: Vec<C64> = (0..n as i64).map(|a| psi.finite_fourier(a)).collect();
    let chars = enumerate_characters(n);
    let phi = chars.len() as f64;
    chars
        .into_iter()
        .map(|xi| {
            let c: C64 = (0..n as i64).map(|a| hat[a as usize] * xi.evaluate(a).conj()).sum();
            (xi, c / phi)
        })
        .collect()
}

/// `(1/φ(N)) Σ_{a, ξ} ψ̂(a) ξ̄(a) ξ(d)`, evaluated as the literal double sum.
pub fn eisfe_character_sum(psi: &DirichletCharacter, d: i64) -> C64 {
    eisfe_character_coefficients(psi)
        .into_iter()
        .map(|(xi, c)| c * xi.evaluate(d))
        .sum()
}

/// Parameters of a cusp form on `GL(2n)` paired against `E_{ν,ψ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingData {
    pub lambda: Vec<C64>,
    pub delta: Vec<u8>,
    pub eta: u8,
    pub nu: C64,
    pub n: usize,
    pub level: u64,
    pub epsilon: u8,
}

pub const NORMALIZATION_TOL: f64 = 1e-9;

impl PairingData {
    /// `Σ λ = 0` and `Σ δ ≡ ε + nη (mod 2)`.
    pub fn check_normalization(&self) -> Result<()> {
        let n = self.n;
        if n == 0 || self.lambda.len() != 2 * n || self.delta.len() != 2 * n {
            return Err(Error::InvalidArgument(format!(
                "need 2n = {} entries in λ and δ, got {} and {}",
                2 * n,
                self.lambda.len(),
                self.delta.len()
            )));
        }
        if self.level == 0 {
            return Err(Error::InvalidArgument("level must be positive".into()));
        }
        let total: C64 = self.lambda.iter().sum();
        if total.norm() > NORMALIZATION_TOL {
            return Err(Error::Normalization(format!("Σλ = {total} is not zero")));
        }
        let dsum: u32 = self.delta.iter().map(|&d| d as u32).sum();
        let rhs = self.epsilon as u32 + n as u32 * self.eta as u32;
        if !(dsum + rhs).is_multiple_of(2) {
            return Err(Error::Normalization(format!(
                "Σδ = {dsum} is not congruent to ε + nη = {rhs} mod 2"
            )));
        }
        Ok(())
    }

    fn pair(&self, j: usize) -> (C64, u32) {
        // 1-based λ_{n+j} + λ_{n+1-j}
        let n = self.n;
        let (a, b) = (n + j - 1, n - j);
        (self.lambda[a] + self.lambda[b], (self.delta[a] + self.delta[b] + self.eta) as u32)
    }

    fn gamma_product(&self, shift: C64) -> Result<C64> {
        let mut acc = C64::new(1.0, 0.0);
        for j in 1..=self.n {
            let (l, d) = self.pair(j);
            acc *= g_delta(l + shift, d)?;
        }
        Ok(acc)
    }
}

/// `(-1)^{ε+δ_{n+1}+…+δ_{2n}} N^{2ν-ν/n-1/2} ∏_j G_{δ_{n+j}+δ_{n+1-j}+η}(λ_{n+j}+λ_{n+1-j}+ν/n+1/2)`.
pub fn pairing_fe_gamma_product(data: &PairingData) -> Result<C64> {
    data.check_normalization()?;
    let n = data.n as f64;
    let nu = data.nu;
    let parity = data.epsilon as u32 + data.delta[data.n..].iter().map(|&d| d as u32).sum::<u32>();
    let level = real_pow(data.level as f64, nu * 2.0 - nu / n - 0.5);
    let prod = data.gamma_product(nu / n + 0.5)?;
    finite(level * prod * sign(parity), "pairing functional equation factor")
}

/// The same factor in the variable `s`, `ν = n(s - 1/2)`:
/// `N^{2ns-s-n} ∏_j G_{δ_{n+j}+δ_{n+1-j}+η}(s+λ_{n+j}+λ_{n+1-j})`.
/// The sign `(-1)^{ε+δ_{n+1}+…+δ_{2n}}` is not part of this form.
pub fn pairing_fe_gamma_product_s(data: &PairingData, s: C64) -> Result<C64> {
    data.check_normalization()?;
    let n = data.n as f64;
    let level = real_pow(data.level as f64, s * (2.0 * n - 1.0) - n);
    let prod = data.gamma_product(s)?;
    finite(level * prod, "pairing functional equation factor")
}

/// The exponent of `N` as `(coefficient of s, constant)`, read off the
/// `ν`-form after substituting `ν = n s - n/2`.
pub fn level_exponent_from_nu_form(n: usize) -> (Rational64, Rational64) {
    let n = n as i64;
    // (2 - 1/n) ν - 1/2
    let a = Rational64::new(2 * n - 1, n);
    let (nu_s, nu_c) = (Rational64::from_integer(n), Rational64::new(-n, 2));
    (a * nu_s, a * nu_c - Rational64::new(1, 2))
}

/// The exponent of `N` in the `s`-form, `2ns - s - n`.
pub fn level_exponent_s_form(n: usize) -> (Rational64, Rational64) {
    let n = n as i64;
    (Rational64::from_integer(2 * n - 1), Rational64::from_integer(-n))
}
