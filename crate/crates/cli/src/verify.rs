//! The `verify` suites: every numerical oracle next to its closed form.

use mirabolic::arith::gcd_all;
use mirabolic::characters::enumerate_characters;
use mirabolic::eisenstein::EisParams;
use mirabolic::fe_verify::{
    beta_like_closed, beta_like_quadrature, decay_slope, eisfe_character_sum, eisfe_scalar, h_integral,
    intertwine_composite_n2, oscillatory_integral, pairing_fe_gamma_product, pairing_fe_gamma_product_s, Bump,
    Estimate, HData, PairingData, QuadratureConfig, TestFunction,
};
use mirabolic::special::g_delta;
use mirabolic::{Error, Result, C64};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{cx, error_json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Betalike,
    Oscillatory,
    Fe,
    Intertwine,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Betalike => "betalike",
            Suite::Oscillatory => "oscillatory",
            Suite::Fe => "fe",
            Suite::Intertwine => "intertwine",
            Suite::All => "all",
        }
    }
}

/// How a case is judged once both sides are available.
#[derive(Debug, Clone, Copy)]
enum Rule {
    /// Within the configured tolerance of the closed form.
    Configured,
    /// Within a fixed relative error, for fitted quantities.
    Relative(f64),
}

/// One deferred comparison.
struct Case {
    inputs: Value,
    rule: Rule,
    run: Box<dyn Fn(&QuadratureConfig) -> Result<(C64, Estimate)> + Send + Sync>,
}

fn case<F>(inputs: Value, rule: Rule, run: F) -> Case
where
    F: Fn(&QuadratureConfig) -> Result<(C64, Estimate)> + Send + Sync + 'static,
{
    Case { inputs, rule, run: Box::new(run) }
}

fn exact(z: C64) -> Estimate {
    Estimate { value: z, error: 0.0 }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn betalike_cases() -> Vec<Case> {
    let mut out = Vec::new();
    let b0s = [c(0.2, 0.0), c(0.35, 0.1), c(0.5, 0.0)];
    let b1s = [c(0.15, 0.0), c(0.3, -0.2), c(0.45, 0.0)];
    for b0 in b0s {
        for b1 in b1s {
            for eta in [[0u8, 0], [0, 1], [1, 0], [1, 1]] {
                let beta = vec![b0, b1];
                let inputs = json!({ "n": 2, "beta": [cx(b0), cx(b1)], "eta": eta, "t": 1.0 });
                out.push(case(inputs, Rule::Configured, move |cfg| {
                    Ok((beta_like_closed(&beta, &eta, 1.0)?, beta_like_quadrature(&beta, &eta, 1.0, cfg)?))
                }));
            }
        }
    }
    let triples: [([C64; 3], [u8; 3], f64); 4] = [
        ([c(0.2, 0.0), c(0.3, 0.0), c(0.3, 0.0)], [0, 0, 0], 1.0),
        ([c(0.25, 0.0), c(0.2, 0.0), c(0.3, 0.0)], [1, 0, 1], 1.0),
        ([c(0.3, 0.0), c(0.25, 0.0), c(0.2, 0.0)], [0, 1, 1], -2.0),
        ([c(0.2, 0.1), c(0.3, 0.0), c(0.25, -0.1)], [1, 1, 0], 1.5),
    ];
    for (beta, eta, t) in triples {
        let inputs = json!({ "n": 3, "beta": beta.iter().map(|&z| cx(z)).collect::<Vec<_>>(), "eta": eta, "t": t });
        out.push(case(inputs, Rule::Configured, move |cfg| {
            Ok((beta_like_closed(&beta, &eta, t)?, beta_like_quadrature(&beta, &eta, t, cfg)?))
        }));
    }
    out
}

fn oscillatory_cases() -> Vec<Case> {
    let nus = [(c(0.25, 0.0), 2), (c(0.5, 0.0), 2), (c(0.7, 0.4), 2), (c(0.8, -0.3), 3), (c(1.3, 0.0), 3)];
    let mut out = Vec::new();
    for (nu, n) in nus {
        for eps in [0u8, 1] {
            for d in 1..=3u64 {
                for k in 1..=3i64 {
                    let inputs = json!({ "nu": cx(nu), "n": n, "epsilon": eps, "d": d, "k": k });
                    out.push(case(inputs, Rule::Configured, move |cfg| {
                        let r = oscillatory_integral(nu, n, eps, d, k, cfg)?;
                        Ok((r.closed, r.quadrature))
                    }));
                }
            }
        }
    }
    out
}

fn fe_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for modulus in 1..=30u64 {
        for (index, psi) in enumerate_characters(modulus).into_iter().enumerate() {
            if !psi.is_primitive() {
                continue;
            }
            let inputs = json!({ "check": "gauss_modulus", "modulus": modulus, "index": index });
            out.push(case(inputs, Rule::Configured, move |_| {
                Ok((c(modulus as f64, 0.0), exact(c(psi.gauss_sum().norm_sqr(), 0.0))))
            }));
        }
    }
    for modulus in [8u64, 12, 15] {
        for (index, psi) in enumerate_characters(modulus).into_iter().enumerate() {
            let inputs = json!({ "check": "orthogonality", "modulus": modulus, "index": index, "d_max": 2 * modulus });
            out.push(case(inputs, Rule::Configured, move |_| {
                // Worst deviation over d, folded into one comparison against 0.
                let worst = (1..=2 * modulus as i64)
                    .map(|d| {
                        let want =
                            if gcd_all(&[d, modulus as i64]) == 1 { psi.finite_fourier(d) } else { c(0.0, 0.0) };
                        eisfe_character_sum(&psi, d) - want
                    })
                    .fold(c(0.0, 0.0), |acc, z| if z.norm() > acc.norm() { z } else { acc });
                Ok((c(0.0, 0.0), exact(worst)))
            }));
        }
    }
    for (modulus, n, nu) in [(5u64, 2usize, c(0.3, 0.7)), (7, 3, c(0.31, -0.8)), (8, 4, c(1.1, 0.25))] {
        for (index, psi) in enumerate_characters(modulus).into_iter().enumerate() {
            if !psi.is_primitive() {
                continue;
            }
            let inputs = json!({ "check": "scalar_reflection", "modulus": modulus, "index": index, "n": n, "nu": cx(nu) });
            out.push(case(inputs, Rule::Configured, move |_| {
                let nf = n as f64;
                let nu2 = c(nf - 1.0, 0.0) - nu;
                let a = eisfe_scalar(&EisParams::new(n, nu, psi.clone())?)?;
                let b = eisfe_scalar(&EisParams::new(n, nu2, psi.conj())?)?;
                // τ_ψ τ_ψ̄ = ψ(-1) N and G_ε(s) G_ε(1-s) = (-1)^ε cancel to N^{…}·N.
                let level = ((nu + nu2) * (2.0 - 1.0 / nf) - 1.0) * (modulus as f64).ln();
                Ok((level.exp() * modulus as f64, exact(a * b)))
            }));
        }
    }
    let h_cases = [
        (vec![c(0.1, 0.0), c(-0.05, 0.0), c(0.02, 0.0), c(-0.07, 0.0)], vec![0u8, 0, 0, 0], c(0.4, 0.0), 0u8, 0u8),
        (vec![c(0.05, 0.1), c(0.0, -0.1), c(-0.1, 0.0), c(0.05, 0.0)], vec![1, 0, 0, 1], c(0.3, 0.2), 0, 0),
        (vec![c(0.0, 0.0), c(0.1, 0.0), c(-0.1, 0.0), c(0.0, 0.0)], vec![0, 1, 0, 0], c(0.5, 0.0), 1, 0),
    ];
    for (lambda, delta, nu, epsilon, eta) in h_cases {
        let inputs = json!({
            "check": "h_integral", "n": 2, "lambda": lambda.iter().map(|&z| cx(z)).collect::<Vec<_>>(),
            "delta": delta, "nu": cx(nu), "epsilon": epsilon, "eta": eta,
        });
        let data = HData { lambda, delta, nu, n: 2, epsilon, eta };
        out.push(case(inputs, Rule::Configured, move |cfg| {
            let h = h_integral(&data, cfg)?;
            let q = h.quadrature.ok_or_else(|| Error::ConvergenceRegion("quadrature skipped".into()))?;
            Ok((h.closed, q))
        }));
    }
    for (n, level) in [(2usize, 3u64), (3, 5)] {
        let mut lambda: Vec<C64> = (0..2 * n).map(|j| c(0.07 * j as f64, 0.03 * (j % 3) as f64)).collect();
        let mean = lambda.iter().sum::<C64>() / (2 * n) as f64;
        lambda.iter_mut().for_each(|l| *l -= mean);
        let delta: Vec<u8> = (0..2 * n).map(|j| (j % 2) as u8).collect();
        let data = PairingData { lambda, delta, eta: (n % 2) as u8, nu: c(0.4, 0.3), n, level, epsilon: 0 };
        let inputs = json!({ "check": "pairing_s_form", "n": n, "level": level, "nu": cx(data.nu) });
        out.push(case(inputs, Rule::Configured, move |_| {
            let parity = data.epsilon as usize + data.delta[n..].iter().map(|&d| d as usize).sum::<usize>();
            let sign = if parity % 2 == 1 { -1.0 } else { 1.0 };
            let s = data.nu / n as f64 + 0.5;
            Ok((pairing_fe_gamma_product(&data)?, exact(pairing_fe_gamma_product_s(&data, s)? * sign)))
        }));
    }
    out
}

fn intertwine_cases() -> Vec<Case> {
    let mut out = Vec::new();
    let bumps = [(0.0, 1.0), (0.3, 1.5)];
    for (nu, eps) in [(c(0.6, 0.0), 0u8), (c(0.8, 0.5), 1)] {
        for (center, radius) in bumps {
            let f = Bump::new(center, radius).expect("valid bump");
            for t in [0.3, 0.5, 0.65] {
                let y = center - radius + 2.0 * radius * t;
                let inputs = json!({ "check": "composite", "nu": cx(nu), "epsilon": eps, "bump": [center, radius], "y": y });
                let f = f.clone();
                out.push(case(inputs, Rule::Configured, move |cfg| {
                    let sign = if eps == 1 { -1.0 } else { 1.0 };
                    let constant = g_delta(nu, eps as u32)? * g_delta(-nu, eps as u32)? * sign;
                    let h = intertwine_composite_n2(&f, nu, eps, &[y], cfg)?;
                    Ok((constant * f.value(y), h[0]))
                }));
            }
        }
        let inputs = json!({ "check": "decay_slope", "nu": cx(nu), "epsilon": eps, "bump": [0.0, 1.0] });
        out.push(case(inputs, Rule::Relative(0.1), move |cfg| {
            let f = Bump::new(0.0, 1.0)?;
            let slope = decay_slope(&f, nu, eps, &[20.0, 40.0, 80.0, 160.0], cfg)?;
            Ok((c(nu.re - 1.0, 0.0), exact(c(slope, 0.0))))
        }));
    }
    out
}

fn cases(suite: Suite) -> Vec<Case> {
    match suite {
        Suite::Betalike => betalike_cases(),
        Suite::Oscillatory => oscillatory_cases(),
        Suite::Fe => fe_cases(),
        Suite::Intertwine => intertwine_cases(),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn judge(case: &Case, cfg: &QuadratureConfig) -> (Value, bool) {
    let mut v = json!({ "inputs": case.inputs });
    match (case.run)(cfg) {
        Ok((closed, q)) => {
            let abs_err = (q.value - closed).norm();
            let rel_err = if closed.norm() > 0.0 { abs_err / closed.norm() } else { abs_err };
            let pass = match case.rule {
                Rule::Configured => abs_err <= 2.0 * cfg.abs_tol.max(cfg.rel_tol * closed.norm()),
                Rule::Relative(r) => rel_err <= r,
            };
            v["closed"] = cx(closed);
            v["quadrature"] = cx(q.value);
            v["error_estimate"] = json!(q.error);
            v["abs_err"] = json!(abs_err);
            v["rel_err"] = json!(rel_err);
            v["pass"] = json!(pass);
            (v, pass)
        }
        Err(e) => {
            v["closed"] = Value::Null;
            v["quadrature"] = Value::Null;
            v["error_estimate"] = Value::Null;
            v["abs_err"] = Value::Null;
            v["rel_err"] = Value::Null;
            v["pass"] = json!(false);
            v["error"] = error_json(&e);
            (v, false)
        }
    }
}

/// Runs one suite, or all of them in order. Returns the reports and whether
/// every case passed.
pub fn run(suite: Suite, cfg: &QuadratureConfig) -> (Vec<Value>, bool) {
    let suites = match suite {
        Suite::All => vec![Suite::Betalike, Suite::Oscillatory, Suite::Fe, Suite::Intertwine],
        s => vec![s],
    };
    let mut all_pass = true;
    let reports = suites
        .into_iter()
        .map(|s| {
            let judged: Vec<(Value, bool)> = cases(s).par_iter().map(|c| judge(c, cfg)).collect();
            let passed = judged.iter().filter(|(_, p)| *p).count();
            all_pass &= passed == judged.len();
            json!({
                "suite": s.name(),
                "passed": passed,
                "total": judged.len(),
                "cases": judged.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
            })
        })
        .collect();
    (reports, all_pass)
}
