//! Principal-series parameters `(λ, δ)` and the transforms of abelian
//! Fourier coefficients attached to them.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::C64;

/// Sparse coefficient family indexed by rational vectors in `ℚ^{n-1}`.
pub type CoeffMap = BTreeMap<Vec<Rational64>, C64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PSParams {
    lambda: Vec<C64>,
    delta: Vec<u8>,
}

impl PSParams {
    pub fn new(lambda: Vec<C64>, delta: Vec<u8>) -> Result<Self> {
        if lambda.is_empty() || lambda.len() != delta.len() {
            return Err(Error::InvalidArgument(format!(
                "λ has {} entries and δ has {}; need equal positive lengths",
                lambda.len(),
                delta.len()
            )));
        }
        if lambda.iter().any(|l| !(l.re.is_finite() && l.im.is_finite())) {
            return Err(Error::NonFinite("λ"));
        }
        Ok(PSParams { lambda, delta: delta.into_iter().map(|d| d % 2).collect() })
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[C64] {
        &self.lambda
    }

    pub fn delta(&self) -> &[u8] {
        &self.delta
    }
}

/// `((n-1)/2, (n-3)/2, …, (1-n)/2)`.
pub fn rho(n: usize) -> Vec<f64> {
    (0..n).map(|j| (n as f64 - 1.0) / 2.0 - j as f64).collect()
}

fn abs_pow(x: f64, z: C64) -> C64 {
    if z == C64::new(0.0, 0.0) {
        return C64::new(1.0, 0.0);
    }
    (z * x.abs().ln()).exp()
}

/// `χ_{λ,δ}(b) = ∏ (sgn b_j)^{δ_j} |b_j|^{λ_j}`.
pub fn chi_eval(ps: &PSParams, b: &[f64]) -> Result<C64> {
    if b.len() != ps.n() {
        return Err(Error::InvalidArgument(format!("expected {} entries, got {}", ps.n(), b.len())));
    }
    let mut acc = C64::new(1.0, 0.0);
    for (j, ((&bj, &lj), &dj)) in b.iter().zip(&ps.lambda).zip(&ps.delta).enumerate() {
        if bj == 0.0 {
            return Err(Error::ZeroEntry(j));
        }
        let sign = if bj < 0.0 && dj == 1 { -1.0 } else { 1.0 };
        acc *= abs_pow(bj, lj) * sign;
    }
    finite(acc, "χ_{λ,δ}")
}

/// `a_r = ∏_j (sgn r_j)^{δ_1+…+δ_j} |r_j|^{λ_1+…+λ_j} c_r`.
pub fn renormalize_coeffs(c: &CoeffMap, ps: &PSParams) -> Result<CoeffMap> {
    let n = ps.n();
    let mut lam_partial = Vec::with_capacity(n);
    let mut del_partial = Vec::with_capacity(n);
    let (mut l, mut d) = (C64::new(0.0, 0.0), 0u8);
    for j in 0..n {
        l += ps.lambda[j];
        d ^= ps.delta[j];
        lam_partial.push(l);
        del_partial.push(d);
    }
    let mut out = CoeffMap::new();
    for (r, &value) in c {
        if r.len() + 1 != n {
            return Err(Error::InvalidArgument(format!("index of length {} for n={n}", r.len())));
        }
        let mut factor = C64::new(1.0, 0.0);
        for (j, rj) in r.iter().enumerate() {
            if rj.is_zero() {
                return Err(Error::ZeroComponent(j));
            }
            let x = rj.to_f64().expect("finite rational");
            let sign = if rj.is_negative() && del_partial[j] == 1 { -1.0 } else { 1.0 };
            factor *= abs_pow(x, lam_partial[j]) * sign;
        }
        out.insert(r.clone(), finite(factor * value, "renormalized coefficient")?);
    }
    Ok(out)
}

/// `|∏_j k_j^{j(n-j)/2}|`.
pub fn whittaker_d_factor(k: &[i64], n: usize) -> Result<f64> {
    if k.len() + 1 != n {
        return Err(Error::InvalidArgument(format!("index of length {} for n={n}", k.len())));
    }
    let mut log = 0.0;
    for (i, &kj) in k.iter().enumerate() {
        if kj == 0 {
            return Err(Error::ZeroComponent(i));
        }
        let j = (i + 1) as f64;
        log += j * (n as f64 - j) / 2.0 * (kj.unsigned_abs() as f64).ln();
    }
    Ok(log.exp())
}

/// `λ ↦ (-λ_n, …, -λ_1)`, `δ ↦ (δ_n, …, δ_1)`, `c̃_k = c_{(-k_{n-1}, …, -k_1)}`.
pub fn contragredient(ps: &PSParams, c: &CoeffMap) -> (PSParams, CoeffMap) {
    let lambda = ps.lambda.iter().rev().map(|l| -l).collect();
    let delta = ps.delta.iter().rev().copied().collect();
    let coeffs = c
        .iter()
        .map(|(k, &v)| (k.iter().rev().map(|x| -x).collect(), v))
        .collect();
    (PSParams { lambda, delta }, coeffs)
}
