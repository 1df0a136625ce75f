//! Archimedean Γ-factor calculus on isobaric sums of twisted blocks
//! `triv[s]`, `sgn[s]` and `D_k[s]`.

mod parse;
mod shift;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

pub use parse::parse_isobaric;
pub use shift::{LinearShift, Shift};

use crate::error::{finite, Error, Result};
use crate::principal_series::PSParams;
use crate::special::gamma::{is_gamma_pole, ln_gamma_c, ln_gamma_r};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SigmaKind {
    Triv,
    Sgn,
    /// Discrete series `D_k`, `k ≥ 2`.
    Discrete(u32),
}

impl SigmaKind {
    pub fn dimension(self) -> usize {
        match self {
            SigmaKind::Triv | SigmaKind::Sgn => 1,
            SigmaKind::Discrete(_) => 2,
        }
    }

    fn sgn_power(e: u32) -> SigmaKind {
        if e.is_multiple_of(2) {
            SigmaKind::Triv
        } else {
            SigmaKind::Sgn
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaBlock<S> {
    pub kind: SigmaKind,
    pub shift: S,
}

impl<S: Shift> SigmaBlock<S> {
    fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.kind.cmp(&other.kind).then_with(|| self.shift.canonical_cmp(&other.shift))
    }
}

/// A formal `⊞`-sum of blocks. Equality is multiset equality.
#[derive(Debug, Clone)]
pub struct IsobaricSum<S> {
    blocks: Vec<SigmaBlock<S>>,
}

impl<S: Shift> PartialEq for IsobaricSum<S> {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_blocks() == other.canonical_blocks()
    }
}

impl<S: Shift> Default for IsobaricSum<S> {
    fn default() -> Self {
        IsobaricSum { blocks: Vec::new() }
    }
}

impl<S: Shift> IsobaricSum<S> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn triv(shift: S) -> Self {
        IsobaricSum { blocks: vec![SigmaBlock { kind: SigmaKind::Triv, shift }] }
    }

    pub fn sgn(shift: S) -> Self {
        IsobaricSum { blocks: vec![SigmaBlock { kind: SigmaKind::Sgn, shift }] }
    }

    pub fn sgn_power(e: u32, shift: S) -> Self {
        IsobaricSum { blocks: vec![SigmaBlock { kind: SigmaKind::sgn_power(e), shift }] }
    }

    /// `D_k[shift]`; `D_1` becomes `triv ⊞ sgn`.
    pub fn discrete(k: u32, shift: S) -> Result<Self> {
        match k {
            0 => Err(Error::InvalidArgument("discrete series weight must be positive".into())),
            1 => Ok(Self::triv(shift.clone()).boxplus(&Self::sgn(shift))),
            _ => Ok(IsobaricSum { blocks: vec![SigmaBlock { kind: SigmaKind::Discrete(k), shift }] }),
        }
    }

    pub fn blocks(&self) -> &[SigmaBlock<S>] {
        &self.blocks
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.kind.dimension()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn canonical_blocks(&self) -> Vec<SigmaBlock<S>> {
        let mut v = self.blocks.clone();
        v.sort_by(|a, b| a.cmp_canonical(b));
        v
    }

    pub fn boxplus(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        IsobaricSum { blocks }
    }

    pub fn twist(&self, s: &S) -> Self {
        IsobaricSum {
            blocks: self
                .blocks
                .iter()
                .map(|b| SigmaBlock { kind: b.kind, shift: b.shift.add(s) })
                .collect(),
        }
    }

    /// Rankin–Selberg product.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::empty();
        for a in &self.blocks {
            for b in &other.blocks {
                out = out.boxplus(&tensor_blocks(a, b));
            }
        }
        out
    }

    pub fn ext2(&self) -> Self {
        self.square(ext2_block)
    }

    pub fn sym2(&self) -> Self {
        self.square(sym2_block)
    }

    fn square(&self, on_block: fn(&SigmaBlock<S>) -> Self) -> Self {
        let mut out = Self::empty();
        for (j, a) in self.blocks.iter().enumerate() {
            out = out.boxplus(&on_block(a));
            for b in &self.blocks[j + 1..] {
                out = out.boxplus(&tensor_blocks(a, b));
            }
        }
        out
    }

    /// `Π ⊗ sgn^η`.
    pub fn sgn_twist(&self, eta: u32) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let kind = match (b.kind, eta % 2) {
                    (SigmaKind::Triv, 1) => SigmaKind::Sgn,
                    (SigmaKind::Sgn, 1) => SigmaKind::Triv,
                    (k, _) => k,
                };
                SigmaBlock { kind, shift: b.shift.clone() }
            })
            .collect();
        IsobaricSum { blocks }
    }

    /// `L(s, Π)` as a product of `Γ_ℝ` and `Γ_ℂ` factors.
    pub fn l_factors(&self) -> GammaProduct<S> {
        let factors = self
            .blocks
            .iter()
            .map(|b| match b.kind {
                SigmaKind::Triv => GammaFactor { kind: GammaKind::R, shift: b.shift.clone() },
                SigmaKind::Sgn => GammaFactor { kind: GammaKind::R, shift: b.shift.add_half_integer(2) },
                SigmaKind::Discrete(k) => GammaFactor {
                    kind: GammaKind::C,
                    shift: b.shift.add_half_integer(k as i64 - 1),
                },
            })
            .collect();
        GammaProduct { factors }
    }
}

fn tensor_blocks<S: Shift>(a: &SigmaBlock<S>, b: &SigmaBlock<S>) -> IsobaricSum<S> {
    use SigmaKind::*;
    let shift = a.shift.add(&b.shift);
    let single = |kind| IsobaricSum { blocks: vec![SigmaBlock { kind, shift: shift.clone() }] };
    match (a.kind, b.kind) {
        (Triv, x) | (x, Triv) => single(x),
        (Sgn, Sgn) => single(Triv),
        (Sgn, Discrete(k)) | (Discrete(k), Sgn) => single(Discrete(k)),
        (Discrete(k), Discrete(l)) => {
            let top = single(Discrete(k + l - 1));
            let bottom = IsobaricSum::discrete(k.abs_diff(l) + 1, shift.clone()).expect("weight ≥ 1");
            top.boxplus(&bottom)
        }
    }
}

fn ext2_block<S: Shift>(b: &SigmaBlock<S>) -> IsobaricSum<S> {
    match b.kind {
        SigmaKind::Triv | SigmaKind::Sgn => IsobaricSum::empty(),
        SigmaKind::Discrete(k) => IsobaricSum::sgn_power(k, b.shift.double()),
    }
}

fn sym2_block<S: Shift>(b: &SigmaBlock<S>) -> IsobaricSum<S> {
    let s2 = b.shift.double();
    match b.kind {
        SigmaKind::Triv | SigmaKind::Sgn => IsobaricSum::triv(s2),
        SigmaKind::Discrete(k) => IsobaricSum::discrete(2 * k - 1, s2.clone())
            .expect("weight ≥ 3")
            .boxplus(&IsobaricSum::sgn_power(k + 1, s2)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GammaKind {
    R,
    C,
}

/// `Γ_ℝ(s + shift)` or `Γ_ℂ(s + shift)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaFactor<S> {
    pub kind: GammaKind,
    pub shift: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaProduct<S> {
    pub factors: Vec<GammaFactor<S>>,
}

impl<S: Shift> GammaProduct<S> {
    /// Every `Γ_ℂ(x)` rewritten as `Γ_ℝ(x) Γ_ℝ(x+1)`, then sorted.
    pub fn canonicalize(&self) -> Self {
        let mut factors = Vec::with_capacity(2 * self.factors.len());
        for f in &self.factors {
            match f.kind {
                GammaKind::R => factors.push(f.clone()),
                GammaKind::C => {
                    factors.push(GammaFactor { kind: GammaKind::R, shift: f.shift.clone() });
                    factors.push(GammaFactor { kind: GammaKind::R, shift: f.shift.add_half_integer(2) });
                }
            }
        }
        factors.sort_by(|a, b| a.kind.cmp(&b.kind).then_with(|| a.shift.canonical_cmp(&b.shift)));
        GammaProduct { factors }
    }

    /// Number of `Γ_ℝ` factors after expansion, i.e. the degree.
    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|f| match f.kind {
                GammaKind::R => 1,
                GammaKind::C => 2,
            })
            .sum()
    }
}

impl GammaProduct<C64> {
    /// `∏ Γ_ℝ(s+a) ∏ Γ_ℂ(s+b)`, accumulated in log space.
    pub fn evaluate(&self, s: C64) -> Result<C64> {
        let mut log = C64::new(0.0, 0.0);
        for f in &self.factors {
            let x = s + f.shift;
            log += match f.kind {
                GammaKind::R => {
                    if is_gamma_pole(x / 2.0) {
                        return Err(Error::Pole { function: "Γ_ℝ factor", at: x });
                    }
                    ln_gamma_r(x)?
                }
                GammaKind::C => {
                    if is_gamma_pole(x) {
                        return Err(Error::Pole { function: "Γ_ℂ factor", at: x });
                    }
                    ln_gamma_c(x)?
                }
            };
        }
        let v = log.exp();
        let all_real = s.im == 0.0 && self.factors.iter().all(|f| f.shift.im == 0.0);
        finite(if all_real { C64::new(v.re, 0.0) } else { v }, "Γ-product")
    }

    /// Multiset equality of canonical forms with shifts matched within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let a = self.canonicalize().factors;
        let b = other.canonicalize().factors;
        a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x.shift - y.shift).norm() <= tol)
    }
}

pub fn evaluate_gamma_product(g: &GammaProduct<C64>, s: C64) -> Result<C64> {
    g.evaluate(s)
}

/// Principal-series parameters of the dual representation, block by block.
///
/// `alternative` selects `δ = (k+1, 1)` instead of `δ = (k, 0)` for discrete blocks.
pub fn embedding_params(pi: &IsobaricSum<C64>, alternative: bool) -> Result<PSParams> {
    let mut lambda = Vec::new();
    let mut delta = Vec::new();
    for b in &pi.blocks {
        match b.kind {
            SigmaKind::Triv | SigmaKind::Sgn => {
                lambda.push(-b.shift);
                delta.push(u8::from(b.kind == SigmaKind::Sgn));
            }
            SigmaKind::Discrete(k) => {
                let half = (k as f64 - 1.0) / 2.0;
                lambda.push(-b.shift - half);
                lambda.push(-b.shift + half);
                let (d1, d2) = if alternative { ((k + 1) % 2, 1) } else { (k % 2, 0) };
                delta.push(d1 as u8);
                delta.push(d2);
            }
        }
    }
    PSParams::new(lambda, delta)
}

/// A failed condition in [`validate_generic_unitary`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    /// No block `σ[-s̄]` matches this block.
    NotSelfDual { block: usize },
    /// `|Re s| ≥ 1/2`.
    UnitaryBound { block: usize, re: f64 },
}

/// Necessary conditions for a generic unitary archimedean component.
pub fn validate_generic_unitary(pi: &IsobaricSum<C64>, tol: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut used = vec![false; pi.blocks.len()];
    for (i, b) in pi.blocks.iter().enumerate() {
        let target = -b.shift.conj();
        let partner = pi
            .blocks
            .iter()
            .enumerate()
            .filter(|(j, c)| !used[*j] && c.kind == b.kind && (c.shift - target).norm() <= tol)
            .min_by(|x, y| (x.1.shift - target).norm().total_cmp(&(y.1.shift - target).norm()))
            .map(|(j, _)| j);
        match partner {
            Some(j) => used[j] = true,
            None => out.push(Violation::NotSelfDual { block: i }),
        }
    }
    for (i, b) in pi.blocks.iter().enumerate() {
        if b.shift.re.abs() >= 0.5 {
            out.push(Violation::UnitaryBound { block: i, re: b.shift.re });
        }
    }
    out
}
