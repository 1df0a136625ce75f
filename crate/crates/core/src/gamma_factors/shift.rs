//! Twist parameters: floating complex numbers, or exact linear forms in
//! symbolic variables `s_1, s_2, …` plus a rational constant.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;

use crate::C64;

/// What a block shift must support for the Γ-factor calculus.
pub trait Shift: Clone + fmt::Debug + PartialEq {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    /// Adds `twice / 2`.
    fn add_half_integer(&self, twice: i64) -> Self;
    fn double(&self) -> Self;
    /// A total order used to sort multisets into canonical form.
    fn canonical_cmp(&self, other: &Self) -> Ordering;
}

impl Shift for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn add_half_integer(&self, twice: i64) -> Self {
        self + twice as f64 / 2.0
    }

    fn double(&self) -> Self {
        self * 2.0
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.re.total_cmp(&other.re).then(self.im.total_cmp(&other.im))
    }
}

/// `Σ_i c_i s_i + q` with integer `c_i` and rational `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearShift {
    coeffs: BTreeMap<u32, i64>,
    constant: Rational64,
}

impl LinearShift {
    pub fn symbol(index: u32) -> Self {
        LinearShift { coeffs: BTreeMap::from([(index, 1)]), constant: Rational64::zero() }
    }

    pub fn constant(q: Rational64) -> Self {
        LinearShift { coeffs: BTreeMap::new(), constant: q }
    }

    pub fn coefficient(&self, index: u32) -> i64 {
        self.coeffs.get(&index).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rational64 {
        self.constant
    }

    /// Substitutes numeric values for the symbols.
    pub fn evaluate(&self, values: &dyn Fn(u32) -> C64) -> C64 {
        let q = *self.constant.numer() as f64 / *self.constant.denom() as f64;
        self.coeffs
            .iter()
            .fold(C64::new(q, 0.0), |acc, (&i, &c)| acc + values(i) * c as f64)
    }
}

impl Shift for LinearShift {
    fn zero() -> Self {
        LinearShift::default()
    }

    fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (&i, &c) in &other.coeffs {
            let e = coeffs.entry(i).or_insert(0);
            *e += c;
            if *e == 0 {
                coeffs.remove(&i);
            }
        }
        LinearShift { coeffs, constant: self.constant + other.constant }
    }

    fn add_half_integer(&self, twice: i64) -> Self {
        LinearShift { coeffs: self.coeffs.clone(), constant: self.constant + Rational64::new(twice, 2) }
    }

    fn double(&self) -> Self {
        LinearShift {
            coeffs: self.coeffs.iter().map(|(&i, &c)| (i, 2 * c)).collect(),
            constant: self.constant * 2,
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

impl fmt::Display for LinearShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&i, &c) in &self.coeffs {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}s{i}")?;
            } else {
                write!(f, "{sign}{mag}s{i}")?;
            }
            first = false;
        }
        let q = self.constant;
        if first {
            write!(f, "{q}")
        } else if q > Rational64::zero() {
            write!(f, "+{q}")
        } else if q < Rational64::zero() {
            write!(f, "{q}")
        } else {
            Ok(())
        }
    }
}

impl From<Rational64> for LinearShift {
    fn from(q: Rational64) -> Self {
        LinearShift::constant(q)
    }
}
