//! Complex Γ, Γ_ℝ, Γ_ℂ and the oscillatory factor `G_δ`, all evaluated in
//! log space so that ratios of large Γ values never overflow.

use std::f64::consts::PI;

use crate::error::{finite, Error, Result};
use crate::C64;

// Lanczos coefficients, g = 7, n = 9
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_2PI: f64 = 1.837_877_066_409_345_5;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// True when `z` is one of `0, -1, -2, ...`.
pub fn is_gamma_pole(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `log Γ(z)` up to an additive multiple of `2πi`.
pub fn ln_gamma(z: C64) -> Result<C64> {
    if is_gamma_pole(z) {
        return Err(Error::Pole { function: "Γ", at: z });
    }
    let v = if z.re < 0.5 {
        C64::new(LN_PI, 0.0) - ln_sin_pi(z) - ln_gamma_right(C64::new(1.0, 0.0) - z)
    } else {
        ln_gamma_right(z)
    };
    finite(v, "ln Γ")
}

fn ln_gamma_right(z: C64) -> C64 {
    let z = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * LN_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// `log sin(πz)`, stable for large `|Im z|`.
fn ln_sin_pi(z: C64) -> C64 {
    // sin(πz) has period 2 in z
    let shift = 2.0 * (z.re / 2.0).round();
    let w = (z - shift) * PI;
    if w.im > 3.0 {
        let i = C64::i();
        -i * w + (C64::new(1.0, 0.0) - (2.0 * i * w).exp()).ln() + C64::new(0.5, 0.0).ln() + i * (PI / 2.0)
    } else if w.im < -3.0 {
        let i = C64::i();
        i * w + (C64::new(1.0, 0.0) - (-2.0 * i * w).exp()).ln() + C64::new(0.5, 0.0).ln() - i * (PI / 2.0)
    } else {
        w.sin().ln()
    }
}

fn clean_real(z: C64, input: C64) -> C64 {
    if input.im == 0.0 {
        C64::new(z.re, 0.0)
    } else {
        z
    }
}

pub fn gamma_complex(s: C64) -> Result<C64> {
    let v = ln_gamma(s)?.exp();
    finite(clean_real(v, s), "Γ")
}

/// `log Γ_ℝ(s) = -(s/2) log π + log Γ(s/2)`.
pub fn ln_gamma_r(s: C64) -> Result<C64> {
    if is_gamma_pole(s / 2.0) {
        return Err(Error::Pole { function: "Γ_ℝ", at: s });
    }
    Ok(-s / 2.0 * LN_PI + ln_gamma(s / 2.0)?)
}

/// `log Γ_ℂ(s) = log 2 - s log 2π + log Γ(s)`.
pub fn ln_gamma_c(s: C64) -> Result<C64> {
    if is_gamma_pole(s) {
        return Err(Error::Pole { function: "Γ_ℂ", at: s });
    }
    Ok(std::f64::consts::LN_2 - s * LN_2PI + ln_gamma(s)?)
}

pub fn gamma_r(s: C64) -> Result<C64> {
    finite(clean_real(ln_gamma_r(s)?.exp(), s), "Γ_ℝ")
}

pub fn gamma_c(s: C64) -> Result<C64> {
    finite(clean_real(ln_gamma_c(s)?.exp(), s), "Γ_ℂ")
}

/// `G_δ(s) = i^δ Γ_ℝ(s+δ) / Γ_ℝ(1-s+δ)`; `δ` is read modulo 2.
///
/// Zero where the denominator has a pole; `Error::Pole` where the numerator does.
pub fn g_delta(s: C64, delta: u32) -> Result<C64> {
    let d = (delta % 2) as f64;
    let num_arg = s + d;
    let den_arg = C64::new(1.0 + d, 0.0) - s;
    if is_gamma_pole(num_arg / 2.0) {
        return Err(Error::Pole { function: "G_δ", at: s });
    }
    if is_gamma_pole(den_arg / 2.0) {
        return Ok(C64::new(0.0, 0.0));
    }
    let ratio = (ln_gamma_r(num_arg)? - ln_gamma_r(den_arg)?).exp();
    let v = if delta.is_multiple_of(2) {
        clean_real(ratio, s)
    } else {
        let v = C64::i() * ratio;
        if s.im == 0.0 {
            C64::new(0.0, v.im)
        } else {
            v
        }
    };
    finite(v, "G_δ")
}

/// `Γ_ℂ(s) cos(πs/2)` for δ even, `i Γ_ℂ(s) sin(πs/2)` for δ odd.
/// Same function as [`g_delta`] by the duplication formula.
pub fn g_delta_cos_sin(s: C64, delta: u32) -> Result<C64> {
    let base = gamma_c(s)?;
    let half = s * (PI / 2.0);
    Ok(if delta.is_multiple_of(2) { base * half.cos() } else { C64::i() * base * half.sin() })
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
    fn gamma_small_values() {
        assert!(rel(gamma_complex(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-15);
        assert!(rel(gamma_complex(c(5.0, 0.0)).unwrap(), c(24.0, 0.0)) < 1e-14);
        assert!(rel(gamma_complex(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-14);
        assert!(rel(gamma_complex(c(-0.5, 0.0)).unwrap(), c(-2.0 * PI.sqrt(), 0.0)) < 1e-14);
    }

    #[test]
    fn gamma_poles() {
        for k in 0..5 {
            assert!(matches!(gamma_complex(c(-k as f64, 0.0)), Err(Error::Pole { .. })));
        }
        assert!(gamma_r(c(-2.0, 0.0)).is_err());
        assert!(gamma_r(c(-1.0, 0.0)).is_ok());
        assert!(gamma_c(c(-1.0, 0.0)).is_err());
    }

    // reference values from an arbitrary-precision evaluation
    #[test]
    fn gamma_reference_values() {
        let cases = [
            (c(4.0, 10.0), c(7.715_342_942_399_662_6e-4, -1.019_082_799_041_712_4e-3)),
            (c(-3.3, 2.1), c(-1.551_497_760_113_521_1e-3, -6.434_683_478_834_940_6e-4)),
            (c(20.5, -30.0), c(-10_979_079_558.975_664, -2_006_287_968.239_613_7)),
            (c(-40.3, 0.7), c(2.809_176_669_177_338_3e-49, 2.003_601_531_996_461_9e-50)),
            (c(0.2, 150.0), c(-1.234_505_047_655_716_7e-103, -2.309_117_048_658_809e-103)),
        ];
        for (z, want) in cases {
            let got = gamma_complex(z).unwrap();
            assert!(rel(got, want) < 1e-12, "{z}: {got} vs {want}");
        }
    }

    #[test]
    fn gamma_r_and_c_basics() {
        assert!(rel(gamma_r(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-15);
        assert!(rel(gamma_c(c(1.0, 0.0)).unwrap(), c(1.0 / PI, 0.0)) < 1e-15);
        let s = c(0.7, 0.3);
        let lhs = gamma_c(s).unwrap();
        let rhs = gamma_r(s).unwrap() * gamma_r(s + 1.0).unwrap();
        assert!(rel(lhs, rhs) < 1e-13);
    }

    #[test]
    fn g_delta_at_half() {
        assert!((g_delta(c(0.5, 0.0), 0).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((g_delta(c(0.5, 0.0), 1).unwrap() - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn g_delta_reflection() {
        let s = c(0.3, 0.8);
        for d in 0..2 {
            let prod = g_delta(s, d).unwrap() * g_delta(c(1.0, 0.0) - s, d).unwrap();
            let want = if d == 0 { 1.0 } else { -1.0 };
            assert!((prod - c(want, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn g_delta_zero_and_pole() {
        assert_eq!(g_delta(c(1.0, 0.0), 0).unwrap(), c(0.0, 0.0));
        assert!(g_delta(c(0.0, 0.0), 0).is_err());
        assert!(g_delta(c(-1.0, 0.0), 1).is_err());
        assert!(g_delta(c(-2.0, 0.0), 0).is_err());
        assert_eq!(g_delta(c(2.0, 0.0), 1).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn g_delta_matches_cos_sin_form_up_to_phase() {
        for &s in &[c(0.25, 0.0), c(0.4, 1.3), c(-1.7, -2.2), c(2.6, 4.0)] {
            for d in 0..2 {
                let a = g_delta(s, d).unwrap();
                let b = g_delta_cos_sin(s, d).unwrap();
                assert!(rel(a, b) < 1e-12, "s={s} δ={d}: {a} vs {b}");
            }
        }
    }
}
