//! Oracles shared by the integration tests. They are written directly from
//! the defining sums and do not call the library's evaluation routines.

#![allow(dead_code)]

use mirabolic::characters::DirichletCharacter;
use mirabolic::C64;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Bernoulli numbers `B_2, B_4, …, B_16`.
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// `Σ_{n ≥ 1} ψ(n) n^{-s}` for `Re s > 1`: the first `K` terms of each
/// residue class summed directly, the rest by Euler–Maclaurin applied to
/// `x ↦ (a + xN)^{-s}`.
pub fn l_series(s: C64, psi: &DirichletCharacter) -> C64 {
    const K: usize = 60;
    let n = psi.modulus();
    let nf = n as f64;
    let mut total = c(0.0, 0.0);
    for a in 1..=n {
        let chi = psi.evaluate(a as i64);
        if chi.norm() == 0.0 {
            continue;
        }
        let af = a as f64;
        let f = |x: f64, m: u32| -> C64 {
            // m-th derivative of (a + xN)^{-s}
            let mut coef = c(1.0, 0.0);
            for j in 0..m {
                coef *= (-s - j as f64) * nf;
            }
            coef * (-(s + m as f64) * (af + x * nf).ln()).exp()
        };
        let mut sum: C64 = (0..K).map(|k| f(k as f64, 0)).sum();
        let x0 = K as f64;
        // ∫_K^∞ (a + xN)^{-s} dx
        sum += (-(s - 1.0) * (af + x0 * nf).ln()).exp() / ((s - 1.0) * nf);
        sum += f(x0, 0) * 0.5;
        let mut fact = 2.0;
        for (j, b) in BERNOULLI.iter().enumerate() {
            let k = 2 * (j + 1);
            if j > 0 {
                fact *= (k - 1) as f64 * k as f64;
            }
            sum -= f(x0, k as u32 - 1) * (b / fact);
        }
        total += chi * sum;
    }
    total
}

/// Richardson extrapolation of samples `y_k` taken at `h_k = 10^{-k}` to `h → 0`.
pub fn richardson(hs: &[f64], ys: &[C64]) -> C64 {
    // Neville's scheme for the interpolating polynomial at 0.
    let mut p: Vec<C64> = ys.to_vec();
    let m = hs.len();
    for level in 1..m {
        for i in 0..m - level {
            let (h0, h1) = (hs[i], hs[i + level]);
            p[i] = (p[i + 1] * h0 - p[i] * h1) / (h0 - h1);
        }
    }
    p[0]
}
