//! Hurwitz zeta by Euler–Maclaurin summation and Dirichlet L-functions built
//! on top of it.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::gamma::{is_gamma_pole, ln_gamma};
use crate::characters::DirichletCharacter;
use crate::error::{finite, Error, Result};
use crate::{arith, C64};

const MAX_DEPTH: usize = 64;

/// Truncation knobs for the Euler–Maclaurin evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaConfig {
    /// Lower bound on the number of explicitly summed terms `M`.
    pub min_terms: usize,
    /// Number of Bernoulli correction terms, at most 64.
    pub bernoulli_depth: usize,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        ZetaConfig { min_terms: 16, bernoulli_depth: 24 }
    }
}

/// `B_{2j} / (2j)!` for `j = 1..=MAX_DEPTH`.
fn bernoulli_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_numbers(2 * MAX_DEPTH);
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(MAX_DEPTH);
        for m in 1..=2 * MAX_DEPTH {
            fact *= BigInt::from(m);
            if m % 2 == 0 {
                let v = &b[m] / BigRational::from_integer(fact.clone());
                out.push(v.to_f64().expect("finite"));
            }
        }
        out
    })
}

/// Exact Bernoulli numbers `B_0..=B_n` (Akiyama–Tanigawa, `B_1 = +1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
        }
        out.push(a[0].clone());
    }
    out
}

fn real_pow(base: f64, s: C64) -> C64 {
    (s * base.ln()).exp()
}

/// `(e^z - 1)/z`, accurate near zero.
fn exprel(z: C64) -> C64 {
    if z.norm() < 0.5 {
        let mut term = C64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..40 {
            term = term * z / k as f64;
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

/// Euler–Maclaurin split `ζ(s,a) = regular + x^{1-s}/(s-1)`.
struct HurwitzParts {
    regular: C64,
    x: f64,
}

fn hurwitz_parts(s: C64, a: f64, cfg: &ZetaConfig) -> HurwitzParts {
    let p = cfg.bernoulli_depth.clamp(1, MAX_DEPTH);
    let needed = ((s.norm() + 2.0 * p as f64) / PI).ceil() as usize;
    let m = cfg.min_terms.max(needed);
    let mut sum = C64::new(0.0, 0.0);
    for k in (0..m).rev() {
        sum += real_pow(k as f64 + a, -s);
    }
    let x = m as f64 + a;
    let x_neg_s = real_pow(x, -s);
    sum += 0.5 * x_neg_s;

    let table = bernoulli_table();
    let mut poch = s;
    let mut xpow = x_neg_s / x;
    let inv_x2 = 1.0 / (x * x);
    for (j, &b) in table.iter().enumerate().take(p) {
        let term = b * poch * xpow;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        let k = 2.0 * (j + 1) as f64;
        poch = poch * (s + (k - 1.0)) * (s + k);
        xpow *= inv_x2;
    }
    HurwitzParts { regular: sum, x }
}

pub fn hurwitz_zeta(s: C64, a: f64) -> Result<C64> {
    hurwitz_zeta_with(s, a, &ZetaConfig::default())
}

/// `ζ(s,a)` for `a ∈ (0,1]`.
///
/// Euler–Maclaurin for `Re s ≥ 0`, Hurwitz's formula below.
pub fn hurwitz_zeta_with(s: C64, a: f64, cfg: &ZetaConfig) -> Result<C64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidArgument(format!("Hurwitz parameter a={a} outside (0,1]")));
    }
    if s == C64::new(1.0, 0.0) {
        return Err(Error::Pole { function: "ζ(s,a)", at: s });
    }
    if s.re < 0.0 {
        return finite(hurwitz_reflected(s, a, cfg)?, "ζ(s,a)");
    }
    let parts = hurwitz_parts(s, a, cfg);
    let pole = real_pow(parts.x, C64::new(1.0, 0.0) - s) / (s - 1.0);
    finite(parts.regular + pole, "ζ(s,a)")
}

/// Left half-plane: Hurwitz's formula in terms of the periodic zeta
/// function `F(a,σ) = Σ_m e(ma) m^{-σ}`, `σ = 1 - s`. Direct Euler–Maclaurin
/// there would sum terms of size `x^{-Re s}`.
fn hurwitz_reflected(s: C64, a: f64, cfg: &ZetaConfig) -> Result<C64> {
    if s.im == 0.0 && s.re == s.re.round() {
        let k = (-s.re) as usize;
        return Ok(C64::new(-bernoulli_polynomial(k + 1, a) / (k + 1) as f64, 0.0));
    }
    let sigma = C64::new(1.0, 0.0) - s;
    let base = ln_gamma(sigma)? - sigma * (2.0 * PI).ln();
    let half = C64::i() * sigma * (PI / 2.0);
    let plus = (base - half).exp() * periodic_zeta(a, sigma, cfg)?;
    let minus = (base + half).exp() * periodic_zeta(-a, sigma, cfg)?;
    let v = plus + minus;
    Ok(if s.im == 0.0 { C64::new(v.re, 0.0) } else { v })
}

/// `Σ_{m≥1} e(ma) m^{-σ}` for `Re σ > 1` and non-integer `σ`, from the
/// expansion of the polylogarithm about `z = 1`.
fn periodic_zeta(a: f64, sigma: C64, cfg: &ZetaConfig) -> Result<C64> {
    let frac = a - a.round();
    if frac.abs() > 1.0 / 3.0 {
        // Li(z) + Li(-z) = 2^{1-σ} Li(z²) moves the expansion point closer to 1
        let doubled = (sigma - 1.0) * -std::f64::consts::LN_2;
        return Ok(doubled.exp() * periodic_zeta(2.0 * frac, sigma, cfg)?
            - periodic_zeta(frac + 0.5, sigma, cfg)?);
    }
    let riemann = DirichletCharacter::trivial(1);
    let mu = C64::new(0.0, 2.0 * PI * frac);
    let mut sum = if frac == 0.0 {
        C64::new(0.0, 0.0)
    } else {
        let ln_neg_mu = C64::new((2.0 * PI * frac.abs()).ln(), -PI / 2.0 * frac.signum());
        (ln_gamma(C64::new(1.0, 0.0) - sigma)? + (sigma - 1.0) * ln_neg_mu).exp()
    };
    let mut power = C64::new(1.0, 0.0);
    for k in 0..400 {
        let term = dirichlet_l_with(sigma - k as f64, &riemann, cfg)? * power;
        sum += term;
        if k > 4 && term.norm() < 1e-17 * sum.norm().max(1e-300) {
            break;
        }
        power = power * mu / (k + 1) as f64;
    }
    Ok(sum)
}

/// `B_n(x)` in floating point.
fn bernoulli_polynomial(n: usize, x: f64) -> f64 {
    let b = bernoulli_numbers(n);
    let mut binom = 1.0;
    let mut acc = 0.0;
    for (k, bk) in b.iter().enumerate() {
        // B_1 = -1/2 in this convention
        let bk = if k == 1 { -0.5 } else { bk.to_f64().expect("finite") };
        acc += binom * bk * x.powi((n - k) as i32);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    acc
}

pub fn dirichlet_l(s: C64, psi: &DirichletCharacter) -> Result<C64> {
    dirichlet_l_with(s, psi, &ZetaConfig::default())
}

/// `L(s,ψ)`, continued to all of ℂ.
///
/// Uses Hurwitz sums for `Re s ≥ 0` and the functional equation of the
/// inducing primitive character below that.
pub fn dirichlet_l_with(s: C64, psi: &DirichletCharacter, cfg: &ZetaConfig) -> Result<C64> {
    let principal = psi.is_principal();
    if principal && s == C64::new(1.0, 0.0) {
        return Err(Error::Pole { function: "L(s,ψ)", at: s });
    }
    if s.re < 0.0 {
        return l_reflected(s, psi, cfg);
    }
    let n = psi.modulus();
    let mut sum = C64::new(0.0, 0.0);
    for a in 1..=n {
        let chi = psi.evaluate(a as i64);
        if chi == C64::new(0.0, 0.0) {
            continue;
        }
        let parts = hurwitz_parts(s, a as f64 / n as f64, cfg);
        let pole = if principal {
            real_pow(parts.x, C64::new(1.0, 0.0) - s) / (s - 1.0)
        } else {
            // the 1/(s-1) pieces cancel in the character sum
            let lx = parts.x.ln();
            -lx * exprel((C64::new(1.0, 0.0) - s) * lx)
        };
        sum += chi * (parts.regular + pole);
    }
    finite(real_pow(n as f64, -s) * sum, "L(s,ψ)")
}

fn l_reflected(s: C64, psi: &DirichletCharacter, cfg: &ZetaConfig) -> Result<C64> {
    let chi = psi.primitive_inducing();
    let q = chi.modulus() as f64;
    let a = chi.parity() as f64;
    let one = C64::new(1.0, 0.0);
    if is_gamma_pole((s + a) / 2.0) {
        return Ok(C64::new(0.0, 0.0));
    }
    let root = chi.gauss_sum() / (C64::i().powf(a) * q.sqrt());
    let log_factor = (C64::new(0.5, 0.0) - s) * (q / PI).ln() + ln_gamma((one - s + a) / 2.0)?
        - ln_gamma((s + a) / 2.0)?;
    let dual = dirichlet_l_with(one - s, &chi.conj(), cfg)?;
    let mut value = root * log_factor.exp() * dual;
    for (p, _) in arith::factorize(psi.modulus()) {
        value *= one - chi.evaluate(p as i64) * real_pow(p as f64, -s);
    }
    finite(value, "L(s,ψ)")
}

/// Residue of `L(s,ψ)` at `s = 1` for principal `ψ`, namely `φ(N)/N`.
pub fn residue_l_at_1(psi: &DirichletCharacter) -> Result<f64> {
    if !psi.is_principal() {
        return Err(Error::NotPrincipal);
    }
    let n = psi.modulus();
    Ok(arith::euler_phi(n) as f64 / n as f64)
}
