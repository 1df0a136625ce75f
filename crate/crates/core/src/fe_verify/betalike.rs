//! The beta-like integral
//! `∫ |t - Σ t_j|^{β_0-1} sgn(t - Σ t_j)^{η_0} ∏ |t_j|^{β_j-1} sgn(t_j)^{η_j} dt`
//! and the integral `ℋ` that reduces to it.

use serde::{Deserialize, Serialize};

use super::quadrature::{abs_pow, integrate_line, Estimate, Point, QuadratureConfig, Singularity};
use crate::error::{finite, Error, Result};
use crate::special::g_delta;
use crate::C64;

fn sign_pow(s: f64, parity: u8) -> f64 {
    if parity % 2 == 1 && s < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// `∏ G_{η_j}(β_j) / G_{Ση}(Σβ) · |t|^{Σβ-1} (sgn t)^{Ση}`.
pub fn beta_like_closed(beta: &[C64], eta: &[u8], t: f64) -> Result<C64> {
    if beta.is_empty() || beta.len() != eta.len() {
        return Err(Error::InvalidArgument("β and η need equal positive lengths".into()));
    }
    if t == 0.0 || !t.is_finite() {
        return Err(Error::InvalidArgument("t must be finite and nonzero".into()));
    }
    let mut num = C64::new(1.0, 0.0);
    for (&b, &e) in beta.iter().zip(eta) {
        num *= g_delta(b, e as u32)?;
    }
    let total: C64 = beta.iter().sum();
    let parity: u32 = eta.iter().map(|&e| e as u32).sum();
    let den = g_delta(total, parity).map_err(|_| Error::Pole { function: "beta_like_closed", at: total })?;
    if den == C64::new(0.0, 0.0) {
        return Err(Error::Pole { function: "beta_like_closed", at: total });
    }
    let scale = abs_pow(t, total - 1.0) * sign_pow(t, (parity % 2) as u8);
    finite(num / den * scale, "beta_like_closed")
}

fn check_region(beta: &[C64]) -> Result<()> {
    if let Some(j) = beta.iter().position(|b| b.re <= 0.0) {
        return Err(Error::ConvergenceRegion(format!("Re β_{j} = {} is not positive", beta[j].re)));
    }
    let total: C64 = beta.iter().sum();
    if total.re >= 1.0 {
        return Err(Error::ConvergenceRegion(format!("Re Σβ = {} is not below 1", total.re)));
    }
    Ok(())
}

/// `|x|^{β-1} sgn(x)^η` with `x` given as sign and magnitude.
fn factor(side: f64, dist: f64, beta: C64, eta: u8) -> C64 {
    abs_pow(dist, beta - 1.0) * sign_pow(side, eta)
}

/// The one-dimensional integral `∫ |t - x|^{β_0-1} sgn(t-x)^{η_0} |x|^{β_1-1} sgn(x)^{η_1} dx`
/// where `t` is passed as the signed offset `c`.
fn inner_line(c: f64, b0: C64, e0: u8, b1: C64, e1: u8, cfg: &QuadratureConfig) -> Result<Estimate> {
    let f = |p: Point| {
        // t - x = -(x - c)
        Ok(factor(-p.side(c), p.dist(c), b0, e0) * factor(p.side(0.0), p.dist(0.0), b1, e1))
    };
    let sings = [Singularity { at: 0.0, order: b1.re }, Singularity { at: c, order: b0.re }];
    integrate_line(&f, &sings, 1.0 - (b0 + b1).re, cfg)
}

/// Adaptive quadrature of the beta-like integral for `n = 2, 3`.
pub fn beta_like_quadrature(beta: &[C64], eta: &[u8], t: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    if beta.len() != eta.len() || !(2..=3).contains(&beta.len()) {
        return Err(Error::InvalidArgument("quadrature supports n = 2 and n = 3".into()));
    }
    if t == 0.0 || !t.is_finite() {
        return Err(Error::InvalidArgument("t must be finite and nonzero".into()));
    }
    check_region(beta)?;
    if beta.len() == 2 {
        return inner_line(t, beta[0], eta[0], beta[1], eta[1], cfg);
    }
    let (b0, b1, b2) = (beta[0], beta[1], beta[2]);
    // The inner integral over t_2 at offset c equals |c|^{β_0+β_2-1} times its
    // value at c = sgn(c) (substitute t_2 = |c| u), so it is computed at unit
    // scale once per sign.
    let inner_cfg = cfg.tightened(0.1);
    let unit = [
        inner_line(1.0, b0, eta[0], b2, eta[2], &inner_cfg)?,
        inner_line(-1.0, b0, eta[0], b2, eta[2], &inner_cfg)?,
    ];
    let inner_rel = unit.iter().map(|e| e.error / e.value.norm().max(f64::MIN_POSITIVE)).fold(0.0, f64::max);
    let outer = |p: Point| -> Result<C64> {
        // t - t_1, accurate near t_1 = t
        let c = -p.offset(t);
        let inner = if c > 0.0 { unit[0].value } else { unit[1].value };
        Ok(inner * abs_pow(c, b0 + b2 - 1.0) * factor(p.side(0.0), p.dist(0.0), b1, eta[1]))
    };
    let sings = [Singularity { at: 0.0, order: b1.re }, Singularity { at: t, order: (b0 + b2).re }];
    let est = integrate_line(&outer, &sings, 1.0 - (b0 + b1 + b2).re, cfg)?;
    Estimate { value: est.value, error: est.error + inner_rel * est.value.norm() }.check(cfg)
}

/// Inputs of `ℋ`: a cusp form with parameters `(λ, δ)` on `GL(2n)` and the
/// Eisenstein data `(ν, ε)` twisted by `sgn^η`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HData {
    pub lambda: Vec<C64>,
    pub delta: Vec<u8>,
    pub nu: C64,
    pub n: usize,
    pub epsilon: u8,
    pub eta: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HIntegral {
    pub closed: C64,
    /// `None` when the quadrature was skipped (`n ≠ 2` or outside the region of convergence).
    pub quadrature: Option<Estimate>,
}

impl HData {
    fn check(&self) -> Result<()> {
        if self.n < 2 || self.lambda.len() != 2 * self.n || self.delta.len() != 2 * self.n {
            return Err(Error::InvalidArgument(format!(
                "need n ≥ 2 and 2n entries in λ and δ (n = {})",
                self.n
            )));
        }
        Ok(())
    }

    /// `(β_j, η_j)` for `j = 1, …, n-1` in the substituted integral.
    pub fn exponents(&self) -> Vec<(C64, u8)> {
        let n = self.n;
        (1..n)
            .map(|j| {
                let (a, b) = (n + j - 1, n - j);
                let beta = -self.lambda[a] - self.lambda[b] - self.nu / n as f64 + 0.5;
                (beta, (self.delta[a] + self.delta[b] + self.eta) % 2)
            })
            .collect()
    }

    /// `(β_0, η_0) = (ν - n/2 + 1, ε)`.
    pub fn base_exponent(&self) -> (C64, u8) {
        (self.nu - self.n as f64 / 2.0 + 1.0, self.epsilon % 2)
    }
}

/// Closed form of `ℋ` as a ratio of `G_δ` factors with sign
/// `(-1)^{δ_2+…+δ_{2n-1}+(n-1)η}`.
pub fn h_closed(data: &HData) -> Result<C64> {
    data.check()?;
    let n = data.n;
    let nf = n as f64;
    let inner: u32 = data.delta[1..2 * n - 1].iter().map(|&d| d as u32).sum::<u32>() + (n as u32 - 1) * data.eta as u32;
    let mut num = g_delta(data.nu - nf / 2.0 + 1.0, data.epsilon as u32)?;
    for j in 1..n {
        let (a, b) = (n + j - 1, n - j);
        let d = (data.delta[a] + data.delta[b] + data.eta) as u32;
        num *= g_delta(-data.lambda[a] - data.lambda[b] - data.nu / nf + 0.5, d)?;
    }
    let lam_inner: C64 = data.lambda[1..2 * n - 1].iter().sum();
    let den_arg = data.nu - nf / 2.0 + 1.0 - lam_inner - data.nu * ((nf - 1.0) / nf) + (nf - 1.0) / 2.0;
    let den_parity = data.epsilon as u32 + inner;
    let den = g_delta(den_arg, den_parity).map_err(|_| Error::Pole { function: "ℋ", at: den_arg })?;
    if den == C64::new(0.0, 0.0) {
        return Err(Error::Pole { function: "ℋ", at: den_arg });
    }
    let sign = if inner.is_multiple_of(2) { 1.0 } else { -1.0 };
    finite(num / den * sign, "ℋ")
}

/// `ℋ` in closed form, and for `n = 2` also by direct quadrature of
/// `∫ |1+x|^{ν-1} sgn(1+x)^ε |x|^{β_1-1} sgn(x)^{η_1} dx`.
pub fn h_integral(data: &HData, cfg: &QuadratureConfig) -> Result<HIntegral> {
    let closed = h_closed(data)?;
    if data.n != 2 {
        return Ok(HIntegral { closed, quadrature: None });
    }
    let (b0, e0) = data.base_exponent();
    let (b1, e1) = data.exponents()[0];
    if b0.re <= 0.0 || b1.re <= 0.0 || (b0 + b1).re >= 1.0 {
        return Ok(HIntegral { closed, quadrature: None });
    }
    let f = |p: Point| Ok(factor(p.side(-1.0), p.dist(-1.0), b0, e0) * factor(p.side(0.0), p.dist(0.0), b1, e1));
    let sings = [Singularity { at: -1.0, order: b0.re }, Singularity { at: 0.0, order: b1.re }];
    let quad = integrate_line(&f, &sings, 1.0 - (b0 + b1).re, cfg)?;
    Ok(HIntegral { closed, quadrature: Some(quad) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn closed_form_example() {
        let v = beta_like_closed(&[c(0.3, 0.0), c(0.4, 0.0)], &[0, 0], 1.0).unwrap();
        let want = g_delta(c(0.3, 0.0), 0).unwrap() * g_delta(c(0.4, 0.0), 0).unwrap() / g_delta(c(0.7, 0.0), 0).unwrap();
        assert!(rel(v, want) < 1e-15);
        assert!(matches!(
            beta_like_closed(&[c(0.5, 0.0), c(0.5, 0.0)], &[0, 0], 1.0),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn homogeneity() {
        let beta = [c(0.2, 0.3), c(0.1, -0.2), c(0.25, 0.0)];
        let eta = [1, 0, 1];
        let one = beta_like_closed(&beta, &eta, 1.0).unwrap();
        for t in [-3.5, -0.2, 0.7, 9.0] {
            let v = beta_like_closed(&beta, &eta, t).unwrap();
            let total: C64 = beta.iter().sum();
            let want = one * abs_pow(t, total - 1.0);
            assert!(rel(v, want) < 1e-13, "t={t}");
        }
    }

    #[test]
    fn quadrature_n2() {
        let cfg = QuadratureConfig::default();
        for eta in [[0, 0], [1, 1], [0, 1], [1, 0]] {
            for t in [1.0, -2.0] {
                let beta = [c(0.3, 0.0), c(0.4, 0.0)];
                let q = beta_like_quadrature(&beta, &eta, t, &cfg).unwrap();
                let closed = beta_like_closed(&beta, &eta, t).unwrap();
                assert!(rel(q.value, closed) < 1e-8, "{eta:?} t={t}: {} vs {closed}", q.value);
            }
        }
    }

    #[test]
    fn quadrature_n2_near_nonintegrable() {
        // exponents -0.95 at both singular points
        let cfg = QuadratureConfig::default().with_tolerance(1e-11);
        let beta = [c(0.05, 0.0), c(0.05, 0.0)];
        let q = beta_like_quadrature(&beta, &[0, 0], -0.2, &cfg).unwrap();
        let closed = beta_like_closed(&beta, &[0, 0], -0.2).unwrap();
        assert!((q.value - closed).norm() <= 2e-11 * closed.norm(), "{} vs {closed}", q.value);
    }

    #[test]
    fn quadrature_n2_power_substitution() {
        let cfg = QuadratureConfig {
            singularity_substitution: super::super::quadrature::Substitution::Power,
            ..QuadratureConfig::default()
        }
        .with_tolerance(1e-9);
        let beta = [c(0.15, 0.0), c(0.25, 0.0)];
        let q = beta_like_quadrature(&beta, &[1, 0], 1.0, &cfg).unwrap();
        let closed = beta_like_closed(&beta, &[1, 0], 1.0).unwrap();
        assert!(rel(q.value, closed) < 1e-6, "{} vs {closed}", q.value);
    }

    #[test]
    fn quadrature_n3() {
        let cfg = QuadratureConfig::default().with_tolerance(1e-7);
        let beta = [c(0.2, 0.0), c(0.3, 0.0), c(0.3, 0.0)];
        let q = beta_like_quadrature(&beta, &[0, 0, 0], 1.0, &cfg).unwrap();
        let closed = beta_like_closed(&beta, &[0, 0, 0], 1.0).unwrap();
        assert!(rel(q.value, closed) < 1e-4, "{} vs {closed}", q.value);
    }

    #[test]
    fn region_enforced() {
        let cfg = QuadratureConfig::default();
        assert!(matches!(
            beta_like_quadrature(&[c(0.6, 0.0), c(0.5, 0.0)], &[0, 0], 1.0, &cfg),
            Err(Error::ConvergenceRegion(_))
        ));
        assert!(matches!(
            beta_like_quadrature(&[c(-0.1, 0.0), c(0.5, 0.0)], &[0, 0], 1.0, &cfg),
            Err(Error::ConvergenceRegion(_))
        ));
    }

    fn h_data(nu: C64, eps: u8, eta: u8, lambda: Vec<C64>, delta: Vec<u8>) -> HData {
        let n = lambda.len() / 2;
        HData { lambda, delta, nu, n, epsilon: eps, eta }
    }

    #[test]
    fn h_matches_lemma_and_quadrature() {
        let cfg = QuadratureConfig::default();
        let lam = vec![c(0.05, 0.1), c(-0.1, 0.0), c(0.02, -0.3), c(0.03, 0.2)];
        for (eps, eta, delta) in [(0u8, 0u8, vec![0u8, 0, 0, 0]), (1, 0, vec![1, 0, 0, 0]), (0, 1, vec![0, 1, 0, 0]), (1, 1, vec![1, 1, 1, 0])] {
            let d = h_data(c(0.35, 0.2), eps, eta, lam.clone(), delta);
            let h = h_integral(&d, &cfg).unwrap();
            let (b0, e0) = d.base_exponent();
            let (b1, e1) = d.exponents()[0];
            let lemma = beta_like_closed(&[b0, b1], &[e0, e1], 1.0).unwrap() * if e1 == 1 { -1.0 } else { 1.0 };
            assert!(rel(h.closed, lemma) < 1e-12);
            let q = h.quadrature.expect("in region");
            assert!(rel(q.value, h.closed) < 1e-7, "{} vs {}", q.value, h.closed);
        }
    }

    #[test]
    fn h_pair_sum_invariance() {
        let d1 = h_data(c(0.8, 0.1), 0, 1, vec![c(0.1, 0.0), c(0.2, 0.0), c(-0.4, 0.0), c(0.3, 0.0), c(-0.1, 0.5), c(-0.1, -0.5)], vec![0, 1, 0, 1, 1, 0]);
        // swap λ_{n+1} with λ_n (their pair sum is unchanged), together with δ
        let mut d2 = d1.clone();
        d2.lambda.swap(2, 3);
        d2.delta.swap(2, 3);
        assert!(rel(h_closed(&d1).unwrap(), h_closed(&d2).unwrap()) < 1e-14);
        assert!(h_integral(&d1, &QuadratureConfig::default()).unwrap().quadrature.is_none());
    }

    #[test]
    fn h_sign_trivial() {
        let d = h_data(c(0.4, 0.0), 0, 0, vec![c(0.0, 0.0); 4], vec![0; 4]);
        let (b0, _) = d.base_exponent();
        let (b1, _) = d.exponents()[0];
        let want = beta_like_closed(&[b0, b1], &[0, 0], 1.0).unwrap();
        assert!(rel(h_closed(&d).unwrap(), want) < 1e-14);
    }
}
