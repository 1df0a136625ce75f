//! Dirichlet characters modulo `N`, stored exactly.
//!
//! A character is a table of exponents `k` with common denominator `den`;
//! the value at a unit `a` is the root of unity `e(k/den) = exp(2πi k/den)`.
//! Non-units carry no exponent and evaluate to zero. All group-level
//! operations (products, inverses, Fourier sums) run on the exponent table
//! and only the final reduction produces floating-point complex numbers.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::{self, carmichael_lambda, divisors, euler_phi, factorize, rem_euclid_u};
use crate::C64;

/// `e(k/n)` with exact values on the quarter points.
pub fn root_of_unity(k: i64, n: u64) -> C64 {
    let n_i = n as i64;
    let k = k.rem_euclid(n_i);
    let g = (k as u64).gcd(&n).max(1);
    let (k, n) = (k as u64 / g, n / g);
    match (k, n) {
        (0, _) => C64::new(1.0, 0.0),
        (1, 2) => C64::new(-1.0, 0.0),
        (1, 4) => C64::new(0.0, 1.0),
        (3, 4) => C64::new(0.0, -1.0),
        _ => {
            // fold into (-1/2, 1/2] before scaling by 2π
            let (k, n) = (k as i64, n as i64);
            let k = if 2 * k > n { k - n } else { k };
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
            let (s, c) = theta.sin_cos();
            C64::new(c, s)
        }
    }
}

/// Sums `Σ counts[k] e(k/len)` after exact aggregation of phases.
fn phase_histogram_sum(counts: &[i64]) -> C64 {
    let n = counts.len() as u64;
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| root_of_unity(k as i64, n) * c as f64)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    modulus: u64,
    den: u64,
    exps: Vec<Option<u64>>,
}

struct LocalGroup {
    modulus: u64,
    /// generator orders; a residue's discrete logs are read from `logs`.
    orders: Vec<u64>,
    logs: Vec<Option<Vec<u64>>>,
}

impl LocalGroup {
    fn new(p: u64, e: u32) -> Self {
        let q = p.pow(e);
        let gens: Vec<(u64, u64)> = if p == 2 {
            match e {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(q - 1, 2), (5, 1 << (e - 2))],
            }
        } else {
            vec![(arith::smallest_primitive_root(p, e), (p - 1) * p.pow(e - 1))]
        };
        let mut logs: Vec<Option<Vec<u64>>> = vec![None; q as usize];
        if gens.is_empty() {
            logs[1 % q as usize] = Some(vec![]);
        }
        // enumerate all products g_1^t_1 g_2^t_2 ...
        let mut stack = vec![(1 % q, Vec::<u64>::new())];
        while let Some((val, ts)) = stack.pop() {
            if ts.len() == gens.len() {
                logs[val as usize] = Some(ts);
                continue;
            }
            let (g, ord) = gens[ts.len()];
            let mut cur = val;
            for t in 0..ord {
                let mut next = ts.clone();
                next.push(t);
                stack.push((cur, next));
                cur = cur * g % q;
            }
        }
        LocalGroup {
            modulus: q,
            orders: gens.iter().map(|g| g.1).collect(),
            logs,
        }
    }
}

/// All `φ(N)` characters modulo `N`, principal first.
///
/// Generators: the smallest primitive root for odd prime powers, `-1` for
/// `4`, and `(-1, 5)` for `2^k` with `k ≥ 3`. The enumeration index is the
/// mixed-radix number whose digits are the exponents assigned to the
/// generators, first generator least significant.
pub fn enumerate_characters(modulus: u64) -> Vec<DirichletCharacter> {
    assert!(modulus >= 1, "modulus must be positive");
    let locals: Vec<LocalGroup> = factorize(modulus)
        .into_iter()
        .map(|(p, e)| LocalGroup::new(p, e))
        .collect();
    let orders: Vec<u64> = locals.iter().flat_map(|l| l.orders.clone()).collect();
    let den = carmichael_lambda(modulus);
    let count: u64 = orders.iter().product();
    debug_assert_eq!(count, euler_phi(modulus));

    // per residue: the concatenated discrete logs, or None for non-units
    let logs: Vec<Option<Vec<u64>>> = (0..modulus)
        .map(|a| {
            let mut out = Vec::with_capacity(orders.len());
            for l in &locals {
                out.extend(l.logs[(a % l.modulus) as usize].clone()?);
            }
            Some(out)
        })
        .collect();

    (0..count)
        .map(|index| {
            let mut digits = Vec::with_capacity(orders.len());
            let mut rest = index;
            for &m in &orders {
                digits.push(rest % m);
                rest /= m;
            }
            let exps = logs
                .iter()
                .map(|log| {
                    log.as_ref().map(|ts| {
                        ts.iter()
                            .zip(&digits)
                            .zip(&orders)
                            .map(|((&t, &j), &m)| t * j % m * (den / m))
                            .sum::<u64>()
                            % den
                    })
                })
                .collect();
            DirichletCharacter { modulus, den, exps }.reduced()
        })
        .collect()
}

impl DirichletCharacter {
    pub fn trivial(modulus: u64) -> Self {
        enumerate_characters(modulus).swap_remove(0)
    }

    /// Builds a character from exponents `k_a/den`; validates multiplicativity.
    pub fn from_exponents(modulus: u64, den: u64, exps: Vec<Option<u64>>) -> crate::Result<Self> {
        let err = |m: &str| crate::Error::InvalidArgument(m.to_string());
        if modulus == 0 || den == 0 || exps.len() != modulus as usize {
            return Err(err("exponent table must have one entry per residue"));
        }
        for (a, e) in exps.iter().enumerate() {
            if e.is_some() != ((a as u64).gcd(&modulus) == 1) {
                return Err(err("exponents must be given exactly on the units"));
            }
        }
        let chi = DirichletCharacter { modulus, den, exps: exps.iter().map(|e| e.map(|k| k % den)).collect() };
        for a in 0..modulus {
            for b in 0..modulus {
                if let (Some(x), Some(y), Some(z)) = (chi.exps[a as usize], chi.exps[b as usize], chi.exps[(a * b % modulus) as usize]) {
                    if (x + y) % den != z {
                        return Err(err("table is not multiplicative"));
                    }
                }
            }
        }
        Ok(chi.reduced())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Exponent `q` with `ψ(a) = e(q)`, or `None` off the units.
    pub fn exponent(&self, a: i64) -> Option<Ratio<u64>> {
        self.exps[rem_euclid_u(a, self.modulus) as usize].map(|k| Ratio::new(k, self.den))
    }

    pub fn evaluate(&self, a: i64) -> C64 {
        match self.exps[rem_euclid_u(a, self.modulus) as usize] {
            Some(k) => root_of_unity(k as i64, self.den),
            None => C64::new(0.0, 0.0),
        }
    }

    pub fn is_unit(&self, a: i64) -> bool {
        self.exps[rem_euclid_u(a, self.modulus) as usize].is_some()
    }

    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|e| e.is_none_or(|k| k == 0))
    }

    /// `ε` with `ψ(-1) = (-1)^ε`.
    pub fn parity(&self) -> u8 {
        let k = self.exps[(self.modulus - 1) as usize].expect("-1 is a unit");
        if k == 0 {
            0
        } else {
            debug_assert_eq!(2 * k, self.den);
            1
        }
    }

    /// The order of `ψ` in the character group.
    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .flatten()
            .fold(1u64, |acc, &k| acc.lcm(&(self.den / k.gcd(&self.den))))
    }

    pub fn conj(&self) -> Self {
        DirichletCharacter {
            modulus: self.modulus,
            den: self.den,
            exps: self.exps.iter().map(|e| e.map(|k| (self.den - k) % self.den)).collect(),
        }
        .reduced()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "characters must share a modulus");
        let den = self.den.lcm(&other.den);
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => Some((x * (den / self.den) + y * (den / other.den)) % den),
                _ => None,
            })
            .collect();
        DirichletCharacter { modulus: self.modulus, den, exps }.reduced()
    }

    fn reduced(mut self) -> Self {
        let g = self.exps.iter().flatten().fold(self.den, |g, &k| g.gcd(&k));
        // keep the denominator a divisor of the group exponent
        let g = g.max(1);
        self.den /= g;
        for e in self.exps.iter_mut().flatten() {
            *e /= g;
        }
        self
    }

    /// Denominator of the stored exponents.
    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// `ψ̂(m) = Σ_{a mod N} ψ(a) e(am/N)`, with phases aggregated exactly.
    pub fn finite_fourier(&self, m: i64) -> C64 {
        let n = self.modulus;
        let len = self.den.lcm(&n);
        let mut counts = vec![0i64; len as usize];
        let m_red = rem_euclid_u(m, n);
        for (a, e) in self.exps.iter().enumerate() {
            if let Some(k) = e {
                let phase = (k * (len / self.den) + (a as u64 * m_red % n) * (len / n)) % len;
                counts[phase as usize] += 1;
            }
        }
        phase_histogram_sum(&counts)
    }

    /// `τ_ψ = ψ̂(1)`.
    pub fn gauss_sum(&self) -> C64 {
        self.finite_fourier(1)
    }

    /// Smallest `f | N` such that `ψ` is trivial on units `≡ 1 (mod f)`.
    pub fn conductor(&self) -> u64 {
        let n = self.modulus;
        divisors(n)
            .into_iter()
            .find(|&f| {
                (0..n)
                    .filter(|a| a % f == 1 % f)
                    .all(|a| self.exps[a as usize].is_none_or(|k| k == 0))
            })
            .unwrap_or(n)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The primitive character modulo the conductor that induces `ψ`.
    pub fn primitive_inducing(&self) -> DirichletCharacter {
        let f = self.conductor();
        let n = self.modulus;
        let exps = (0..f)
            .map(|b| {
                if b.gcd(&f) != 1 {
                    return None;
                }
                // any lift of b to a unit modulo N; all lifts agree on ψ
                let lift = (0..n / f)
                    .map(|t| b + t * f)
                    .find(|a| a.gcd(&n) == 1)
                    .expect("units lift along N -> f");
                self.exps[lift as usize]
            })
            .collect();
        DirichletCharacter { modulus: f, den: self.den, exps }.reduced()
    }

    /// Ramification exponent at `p`: the power of `p` in the conductor.
    pub fn ramification_degree(&self, p: u64) -> u32 {
        let mut f = self.conductor();
        let mut e = 0;
        while f.is_multiple_of(p) {
            f /= p;
            e += 1;
        }
        e
    }

    pub fn to_record(&self) -> CharacterRecord {
        CharacterRecord {
            modulus: self.modulus,
            exponents: self
                .exps
                .iter()
                .enumerate()
                .filter_map(|(a, e)| {
                    e.map(|k| {
                        let r = Ratio::new(k, self.den);
                        (a as u64, format!("{}/{}", r.numer(), r.denom()))
                    })
                })
                .collect(),
            parity: self.parity(),
        }
    }
}

/// Serialized form: exponent table keyed by residue, exponents as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRecord {
    pub modulus: u64,
    pub exponents: BTreeMap<u64, String>,
    pub parity: u8,
}

impl TryFrom<&CharacterRecord> for DirichletCharacter {
    type Error = crate::Error;

    fn try_from(rec: &CharacterRecord) -> crate::Result<Self> {
        let bad = |m: String| crate::Error::InvalidArgument(m);
        let mut fracs = vec![None; rec.modulus as usize];
        let mut den = 1u64;
        for (&a, s) in &rec.exponents {
            let (p, q) = s.split_once('/').ok_or_else(|| bad(format!("exponent {s:?} is not p/q")))?;
            let p: u64 = p.trim().parse().map_err(|_| bad(format!("bad numerator in {s:?}")))?;
            let q: u64 = q.trim().parse().map_err(|_| bad(format!("bad denominator in {s:?}")))?;
            if q == 0 || a >= rec.modulus {
                return Err(bad(format!("invalid entry {a}: {s:?}")));
            }
            den = den.lcm(&q);
            fracs[a as usize] = Some((p, q));
        }
        let exps = fracs.into_iter().map(|f| f.map(|(p, q)| p * (den / q))).collect();
        let chi = DirichletCharacter::from_exponents(rec.modulus, den, exps)?;
        if chi.parity() != rec.parity {
            return Err(bad("parity does not match ψ(-1)".into()));
        }
        Ok(chi)
    }
}
