//! `∫_ℝ |x|^{ν-n/2} sgn(-x)^ε e(dkx) dx`, convergent only conditionally.
//!
//! The first `cutoff` periods are integrated directly. Beyond them two
//! integrations by parts leave an absolutely convergent remainder, which is
//! integrated period by period and closed off by its asymptotic expansion.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::quadrature::{integrate, Bound, Estimate, Point, QuadratureConfig, Singularity};
use crate::error::{finite, Error, Result};
use crate::special::g_delta;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatoryResult {
    pub quadrature: Estimate,
    pub closed: C64,
}

const REMAINDER_PERIODS: f64 = 40.0;
const CLOSING_TERMS: usize = 6;

fn pow(x: f64, w: C64) -> C64 {
    (w * x.ln()).exp()
}

/// `∫_Y^∞ x^a e^{κx} dx` by repeated integration by parts, with a bound on
/// the neglected remainder.
fn asymptotic_tail(a: C64, kappa: C64, y: f64) -> (C64, f64) {
    let e = (kappa * y).exp();
    let mut coeff = C64::new(1.0, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    for j in 0..CLOSING_TERMS {
        // -(-1)^j a(a-1)…(a-j+1) Y^{a-j} / κ^{j+1}
        sum -= coeff * pow(y, a - j as f64) / kappa.powu(j as u32 + 1);
        coeff *= -(a - j as f64);
    }
    let jn = CLOSING_TERMS as f64;
    let bound = coeff.norm() / kappa.norm().powf(jn) * y.powf(a.re - jn + 1.0) / (jn - 1.0 - a.re);
    (sum * e, bound)
}

/// `∫_0^∞ x^{s-1} e(ωx) dx` for `0 < Re s < 1`, `ω ≠ 0`.
fn half_line(s: C64, omega: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let period = 1.0 / omega.abs();
    let kappa = C64::new(0.0, 2.0 * PI * omega);
    let cutoff = cfg.oscillatory_cutoff.ceil();
    let x_cut = cutoff * period;
    let inner = cfg.tightened(0.1);

    let direct = |p: Point| {
        let x = p.dist(0.0);
        Ok(pow(x, s - 1.0) * (kappa * p.x).exp())
    };
    let mut splits = vec![Singularity { at: 0.0, order: s.re }];
    splits.extend((1..cutoff as usize).map(|k| Singularity { at: k as f64 * period, order: 1.0 }));
    let head = integrate(&direct, Bound::Finite(0.0), Bound::Finite(x_cut), &splits, 1.0, &inner)?;

    // e^{κX} = 1 at a whole number of periods, but keep it general.
    let ex = (kappa * x_cut).exp();
    let boundary = -pow(x_cut, s - 1.0) * ex / kappa + (s - 1.0) * pow(x_cut, s - 2.0) * ex / (kappa * kappa);

    let remainder_fn = |p: Point| Ok(pow(p.x, s - 3.0) * (kappa * p.x).exp());
    let y_end = x_cut + REMAINDER_PERIODS * period;
    let splits: Vec<Singularity> = (1..REMAINDER_PERIODS as usize)
        .map(|k| Singularity { at: x_cut + k as f64 * period, order: 1.0 })
        .collect();
    let middle = integrate(&remainder_fn, Bound::Finite(x_cut), Bound::Finite(y_end), &splits, 1.0, &inner)?;
    let (closing, closing_err) = asymptotic_tail(s - 3.0, kappa, y_end);
    let factor = (s - 1.0) * (s - 2.0) / (kappa * kappa);
    let remainder = Estimate { value: middle.value + closing, error: middle.error + closing_err };

    Ok(Estimate {
        value: head.value + boundary + factor * remainder.value,
        error: head.error + factor.norm() * remainder.error,
    })
}

/// `(-sgn(dk))^ε |dk|^{n/2-ν-1} G_ε(ν-n/2+1)`.
pub fn oscillatory_closed(nu: C64, n: usize, epsilon: u8, d: u64, k: i64) -> Result<C64> {
    if d == 0 || k == 0 {
        return Err(Error::InvalidArgument("d and k must be nonzero".into()));
    }
    let s = nu - n as f64 / 2.0 + 1.0;
    let c = d as f64 * k as f64;
    let sign = if epsilon % 2 == 1 && c > 0.0 { -1.0 } else { 1.0 };
    finite(pow(c.abs(), -s) * g_delta(s, epsilon as u32)? * sign, "oscillatory closed form")
}

/// Regularized quadrature of `∫_ℝ |x|^{ν-n/2} sgn(-x)^ε e(dkx) dx` with the
/// closed form alongside.
pub fn oscillatory_integral(
    nu: C64,
    n: usize,
    epsilon: u8,
    d: u64,
    k: i64,
    cfg: &QuadratureConfig,
) -> Result<OscillatoryResult> {
    cfg.validate()?;
    let s = nu - n as f64 / 2.0 + 1.0;
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(Error::Strip(format!("Re(ν - n/2 + 1) = {} is outside (0, 1)", s.re)));
    }
    let closed = oscillatory_closed(nu, n, epsilon, d, k)?;
    let c = d as f64 * k as f64;
    // x > 0 contributes sgn(-x)^ε e(cx); x < 0 contributes e(-c|x|).
    let pos = half_line(s, c, cfg)?;
    let neg = half_line(s, -c, cfg)?;
    let sign = if epsilon % 2 == 1 { -1.0 } else { 1.0 };
    let quadrature = Estimate { value: pos.value * sign + neg.value, error: pos.error + neg.error }.check(cfg)?;
    Ok(OscillatoryResult { quadrature, closed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn unit_frequency() {
        let cfg = QuadratureConfig::default().with_tolerance(1e-9);
        let r = oscillatory_integral(c(0.5, 0.0), 2, 0, 1, 1, &cfg).unwrap();
        assert!((r.closed - 1.0).norm() < 1e-14);
        assert!((r.quadrature.value - 1.0).norm() < 1e-8, "{:?}", r.quadrature);
    }

    #[test]
    fn scaling_in_d() {
        let cfg = QuadratureConfig::default().with_tolerance(1e-9);
        let r = oscillatory_integral(c(0.5, 0.0), 2, 0, 2, 1, &cfg).unwrap();
        assert!((r.closed - 2f64.powf(-0.5)).norm() < 1e-14);
        assert!((r.quadrature.value - r.closed).norm() < 1e-8);
    }

    #[test]
    fn odd_parity_and_negative_frequency() {
        let cfg = QuadratureConfig::default().with_tolerance(1e-9);
        for (nu, n) in [(c(0.3, 0.7), 2), (c(1.2, -0.4), 3), (c(1.9, 0.0), 4)] {
            for k in [1, -2, 3] {
                let r = oscillatory_integral(nu, n, 1, 1, k, &cfg).unwrap();
                let rel = (r.quadrature.value - r.closed).norm() / r.closed.norm();
                assert!(rel < 1e-7, "ν={nu} n={n} k={k}: {} vs {}", r.quadrature.value, r.closed);
            }
        }
        let plus = oscillatory_closed(c(0.3, 0.0), 2, 1, 1, 1).unwrap();
        let g1 = g_delta(c(0.3, 0.0), 1).unwrap();
        assert!((plus + g1).norm() < 1e-15);
    }

    #[test]
    fn strip_enforced() {
        let cfg = QuadratureConfig::default();
        assert!(matches!(oscillatory_integral(c(1.1, 0.0), 2, 0, 1, 1, &cfg), Err(Error::Strip(_))));
        assert!(matches!(oscillatory_integral(c(-0.1, 0.0), 2, 0, 1, 1, &cfg), Err(Error::Strip(_))));
    }
}
