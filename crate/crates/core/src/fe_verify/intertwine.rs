//! The `n = 2` intertwining operator
//! `(I_ν f)(y) = ∫ f(z) |-y-z|^{ν-1} sgn(-y-z)^ε dz`
//! applied to smooth compactly supported test functions.
//!
//! Near the kernel singularity the integrand is replaced by its Taylor
//! expansion, integrated in closed form. This also gives the meromorphic
//! continuation in `ν`, which the composite `I_{-ν} ∘ Ĩ_ν` needs.

use serde::{Deserialize, Serialize};

use super::quadrature::{abs_pow, integrate, Bound, Estimate, Point, QuadratureConfig, Singularity};
use crate::error::{Error, Result};
use crate::C64;

/// A smooth function on `ℝ` with compact support and computable derivatives.
pub trait TestFunction: Sync {
    /// `(lo, hi)`; the function vanishes outside.
    fn support(&self) -> (f64, f64);
    /// The `m`-th derivative at `x`.
    fn derivative(&self, x: f64, m: usize) -> f64;

    fn value(&self, x: f64) -> f64 {
        self.derivative(x, 0)
    }
}

/// `exp(-1/(1-t²))` with `t = (x - center)/radius`.
#[derive(Debug, Clone)]
pub struct Bump {
    center: f64,
    radius: f64,
    // φ^{(k)}(t) = p_k(t) q^{-2k} φ(t), q = 1 - t²
    polys: Vec<Vec<f64>>,
}

fn poly_eval(p: &[f64], t: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

fn poly_deriv(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect()
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

impl Bump {
    pub const MAX_ORDER: usize = 16;

    pub fn new(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && center.is_finite()) {
            return Err(Error::InvalidArgument("bump needs a finite center and positive radius".into()));
        }
        let q = [1.0, 0.0, -1.0];
        let q2 = poly_mul(&q, &q);
        let mut polys = vec![vec![1.0]];
        for k in 0..Self::MAX_ORDER {
            let p = &polys[k];
            let a = poly_mul(&poly_deriv(p), &q2);
            let b = poly_mul(p, &[0.0, 4.0 * k as f64]);
            let b = poly_mul(&b, &q);
            let c = poly_mul(p, &[0.0, -2.0]);
            let next = poly_add(&poly_add(&a, &b), &c);
            polys.push(next);
        }
        Ok(Bump { center, radius, polys })
    }
}

impl TestFunction for Bump {
    fn support(&self) -> (f64, f64) {
        (self.center - self.radius, self.center + self.radius)
    }

    fn derivative(&self, x: f64, m: usize) -> f64 {
        assert!(m <= Self::MAX_ORDER, "bump derivatives are tabulated up to order {}", Self::MAX_ORDER);
        let t = (x - self.center) / self.radius;
        if t.abs() >= 1.0 {
            return 0.0;
        }
        let q = 1.0 - t * t;
        let env = (-1.0 / q - 2.0 * m as f64 * q.ln()).exp();
        poly_eval(&self.polys[m], t) * env * self.radius.powi(-(m as i32))
    }
}

/// Number of Taylor terms used inside the window around the singularity.
const TAYLOR_TERMS: usize = 6;
/// Half-width of the Taylor window as a fraction of the source length scale.
const WINDOW: f64 = 0.005;

/// Something the kernel can be applied to: the test function itself, or
/// its image under the operator.
trait Source: Sync {
    fn range(&self) -> (Bound, Bound);
    fn derivative(&self, x: f64, m: usize, cfg: &QuadratureConfig) -> Result<Estimate>;
    /// Length scale for the Taylor window.
    fn scale(&self) -> f64;
    /// Points where the integrand changes character, used to split the range.
    fn features(&self) -> Vec<f64>;
    /// Whether derivatives are exact and cost no quadrature.
    fn cheap_derivatives(&self) -> bool {
        false
    }
}

struct Plain<'a>(&'a dyn TestFunction);

impl Source for Plain<'_> {
    fn range(&self) -> (Bound, Bound) {
        let (lo, hi) = self.0.support();
        (Bound::Finite(lo), Bound::Finite(hi))
    }

    fn derivative(&self, x: f64, m: usize, _: &QuadratureConfig) -> Result<Estimate> {
        Ok(Estimate { value: C64::new(self.0.derivative(x, m), 0.0), error: 0.0 })
    }

    fn scale(&self) -> f64 {
        let (lo, hi) = self.0.support();
        hi - lo
    }

    fn features(&self) -> Vec<f64> {
        let (lo, hi) = self.0.support();
        vec![lo, 0.5 * (lo + hi), hi]
    }

    fn cheap_derivatives(&self) -> bool {
        true
    }
}

/// `x ↦ (I_ν f)(x)` as a new source.
struct Image<'a> {
    f: &'a dyn TestFunction,
    nu: C64,
    epsilon: u8,
}

impl Source for Image<'_> {
    fn range(&self) -> (Bound, Bound) {
        (Bound::NegInf, Bound::PosInf)
    }

    fn derivative(&self, x: f64, m: usize, cfg: &QuadratureConfig) -> Result<Estimate> {
        // d/dx ∫ f(z) k(-x-z) dz = -∫ f'(z) k(-x-z) dz
        let v = apply(&Plain(self.f), m, self.nu, self.epsilon, x, cfg)?;
        Ok(if m % 2 == 1 { v.scale(C64::new(-1.0, 0.0)) } else { v })
    }

    fn scale(&self) -> f64 {
        let (lo, hi) = self.f.support();
        hi - lo
    }

    fn features(&self) -> Vec<f64> {
        let (lo, hi) = self.f.support();
        vec![-hi, -0.5 * (lo + hi), -lo]
    }
}

fn parity_sign(p: usize) -> f64 {
    if p.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Smallest Taylor order past the window with a nonvanishing moment.
fn first_omitted(eps: usize) -> usize {
    if TAYLOR_TERMS % 2 == eps {
        TAYLOR_TERMS
    } else {
        TAYLOR_TERMS + 1
    }
}

/// Taylor-window part `∫_{|u|<δ}`, with the size of the first omitted term.
fn window(src: &dyn Source, order: usize, nu: C64, eps: usize, w: f64, delta: f64, cfg: &QuadratureConfig) -> Result<(Estimate, f64)> {
    // ∫_{-δ}^{δ} |u|^{ν-1} sgn(-u)^ε u^m du = ((-1)^ε + (-1)^m) δ^{ν+m}/(ν+m)
    // Each derivative only needs the accuracy that survives its (often tiny)
    // moment, measured against the part of the window already summed.
    let term = |m: usize, factorial: f64, so_far: C64| -> Result<Option<Estimate>> {
        let weight = parity_sign(eps) + parity_sign(m);
        if weight == 0.0 {
            return Ok(None);
        }
        let denom = nu + m as f64;
        if denom.norm() < 1e-12 {
            return Err(Error::Pole { function: "I_ν", at: nu });
        }
        let coef = abs_pow(delta, denom) / denom * weight / factorial;
        let allowed = cfg.target(so_far) / (coef.norm() * TAYLOR_TERMS as f64);
        let local = QuadratureConfig { abs_tol: cfg.abs_tol.max(allowed), ..*cfg };
        let d = src.derivative(w, order + m, &local)?;
        Ok(Some(d.scale(coef)))
    };
    let mut near = Estimate::zero();
    let mut sizes = Vec::new();
    let mut factorial = 1.0;
    for m in 0..TAYLOR_TERMS {
        if m > 0 {
            factorial *= m as f64;
        }
        if let Some(t) = term(m, factorial, near.value)? {
            sizes.push(t.value.norm());
            near = near.add(t);
        }
    }
    let omitted = if src.cheap_derivatives() {
        let next = first_omitted(eps);
        let factorial: f64 = (1..=next).map(|k| k as f64).product();
        term(next, factorial, near.value)?.map_or(0.0, |t| t.value.norm())
    } else {
        // Extrapolate geometrically from the last two terms.
        match sizes.as_slice() {
            [.., prev, last] if *prev > 0.0 => last * (last / prev).min(1.0),
            [.., last] => *last,
            [] => 0.0,
        }
    };
    Ok((near, omitted))
}

/// `∫ src^{(order)}(z) |-y-z|^{ν-1} sgn(-y-z)^ε dz`.
fn apply(src: &dyn Source, order: usize, nu: C64, epsilon: u8, y: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let w = -y;
    let eps = epsilon as usize % 2;
    let delta = WINDOW * src.scale();
    let (near, omitted) = window(src, order, nu, eps, w, delta, cfg)?;
    // Near and far parts partly cancel, so the far part gets a tighter target.
    let far = far_part(src, order, nu, eps, w, delta, &cfg.tightened(0.5))?;
    // The window is the same for every y, so the result stays smooth in y;
    // the first omitted Taylor term is reported as part of the error.
    Ok(Estimate { value: near.value + far.value, error: near.error + far.error + omitted })
}

/// The part outside the window, where the kernel is bounded.
fn far_part(src: &dyn Source, order: usize, nu: C64, eps: usize, w: f64, delta: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let kernel = |p: Point| -> Result<C64> {
        let u = p.offset(w);
        let k = abs_pow(u, nu - 1.0) * if eps == 1 && u > 0.0 { -1.0 } else { 1.0 };
        Ok(src.derivative(p.x, order, cfg)?.value * k)
    };
    let (lo, hi) = src.range();
    let mut splits: Vec<Singularity> = src.features().into_iter().map(|at| Singularity { at, order: 1.0 }).collect();
    splits.push(Singularity { at: w - delta, order: 1.0 });
    splits.push(Singularity { at: w + delta, order: 1.0 });
    let left_end = match lo {
        Bound::Finite(a) => a,
        _ => f64::NEG_INFINITY,
    };
    let right_end = match hi {
        Bound::Finite(b) => b,
        _ => f64::INFINITY,
    };
    let mut far = Estimate::zero();
    if left_end < w - delta {
        let top = (w - delta).min(right_end);
        far = far.add(integrate(&kernel, lo, Bound::Finite(top), &splits, 1.0, cfg)?);
    }
    if right_end > w + delta {
        let bottom = (w + delta).max(left_end);
        far = far.add(integrate(&kernel, Bound::Finite(bottom), hi, &splits, 1.0, cfg)?);
    }
    Ok(far)
}

/// `(I_ν f)(y)` on a grid of `y`, for `Re ν > 0`.
pub fn intertwine_apply_n2(
    f: &dyn TestFunction,
    nu: C64,
    epsilon: u8,
    y_grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<Estimate>> {
    if nu.re <= 0.0 {
        return Err(Error::ConvergenceRegion(format!("Re ν = {} must be positive", nu.re)));
    }
    intertwine_continued_n2(f, nu, epsilon, y_grid, cfg)
}

/// The meromorphic continuation of [`intertwine_apply_n2`] to all `ν`
/// outside `{0, -1, -2, …}`.
pub fn intertwine_continued_n2(
    f: &dyn TestFunction,
    nu: C64,
    epsilon: u8,
    y_grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<Estimate>> {
    cfg.validate()?;
    y_grid
        .iter()
        .map(|&y| apply(&Plain(f), 0, nu, epsilon, y, cfg)?.check(cfg))
        .collect()
}

/// `(I_{-ν} ∘ Ĩ_ν f)(y)` on a grid, for `0 < Re ν < 1`.
pub fn intertwine_composite_n2(
    f: &dyn TestFunction,
    nu: C64,
    epsilon: u8,
    y_grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<Estimate>> {
    cfg.validate()?;
    if !(nu.re > 0.0 && nu.re < 1.0) {
        return Err(Error::ConvergenceRegion(format!("Re ν = {} must lie in (0, 1)", nu.re)));
    }
    let image = Image { f, nu, epsilon };
    y_grid
        .iter()
        .map(|&y| {
            let e = apply(&ImageWith { image: &image, factor: 0.01 }, 0, -nu, epsilon, y, cfg)?;
            e.check(cfg)
        })
        .collect()
}

/// Evaluates the image with tolerances tightened by `factor`.
struct ImageWith<'a> {
    image: &'a Image<'a>,
    factor: f64,
}

impl Source for ImageWith<'_> {
    fn range(&self) -> (Bound, Bound) {
        self.image.range()
    }

    fn derivative(&self, x: f64, m: usize, cfg: &QuadratureConfig) -> Result<Estimate> {
        self.image.derivative(x, m, &cfg.tightened(self.factor))
    }

    fn scale(&self) -> f64 {
        self.image.scale()
    }

    fn features(&self) -> Vec<f64> {
        self.image.features()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    /// `(I_{-ν} Ĩ_ν f)(y) / f(y)`, one row per test function.
    pub ratios: Vec<Vec<C64>>,
    /// Largest `|r - r_0| / |r_0|` over all ratios, `r_0` the first one.
    pub spread: f64,
}

/// Ratio of the composite to the original at points where `f` is not small.
pub fn proportionality_probe(
    fs: &[&dyn TestFunction],
    nu: C64,
    epsilon: u8,
    cfg: &QuadratureConfig,
) -> Result<ProbeReport> {
    let mut ratios = Vec::with_capacity(fs.len());
    for f in fs {
        let (lo, hi) = f.support();
        let ys: Vec<f64> = [0.3, 0.5, 0.65].iter().map(|t| lo + t * (hi - lo)).collect();
        let h = intertwine_composite_n2(*f, nu, epsilon, &ys, cfg)?;
        ratios.push(ys.iter().zip(&h).map(|(&y, e)| e.value / f.value(y)).collect::<Vec<C64>>());
    }
    let r0 = ratios.first().and_then(|r| r.first()).copied().ok_or_else(|| {
        Error::InvalidArgument("probe needs at least one test function".into())
    })?;
    let spread = ratios.iter().flatten().map(|r| (r - r0).norm() / r0.norm()).fold(0.0, f64::max);
    Ok(ProbeReport { ratios, spread })
}

/// Least-squares slope of `log |I_ν f(y)|` against `log y`.
pub fn decay_slope(f: &dyn TestFunction, nu: C64, epsilon: u8, ys: &[f64], cfg: &QuadratureConfig) -> Result<f64> {
    if ys.len() < 2 || ys.iter().any(|&y| y <= 0.0) {
        return Err(Error::InvalidArgument("need at least two positive abscissae".into()));
    }
    let vals = intertwine_apply_n2(f, nu, epsilon, ys, cfg)?;
    let xs: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let zs: Vec<f64> = vals.iter().map(|v| v.value.norm().ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let mz = zs.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(&zs).map(|(x, z)| (x - mx) * (z - mz)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(num / den)
}
