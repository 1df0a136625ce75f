//! Fourier coefficients, δ-atom expansions, poles and local Euler factors of
//! the mirabolic Eisenstein distributions attached to `(n, ν, ψ)`.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, euler_phi, gcd_all, rem_euclid_u};
use crate::characters::{root_of_unity, DirichletCharacter};
use crate::error::{finite, Error, Result};
use crate::special::{dirichlet_l, hurwitz_zeta};
use crate::C64;

/// Parameters `(n, ν, ψ, ε)` of an Eisenstein distribution; `ε` is the parity of `ψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct EisParams {
    n: usize,
    nu: C64,
    psi: DirichletCharacter,
    epsilon: u8,
}

impl EisParams {
    pub fn new(n: usize, nu: C64, psi: DirichletCharacter) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("rank n={n} must be at least 2")));
        }
        if !(nu.re.is_finite() && nu.im.is_finite()) {
            return Err(Error::NonFinite("ν"));
        }
        let epsilon = psi.parity();
        Ok(EisParams { n, nu, psi, epsilon })
    }

    /// Like [`EisParams::new`] but rejects an `ε` inconsistent with `ψ(-1)`.
    pub fn with_epsilon(n: usize, nu: C64, psi: DirichletCharacter, epsilon: u8) -> Result<Self> {
        let p = Self::new(n, nu, psi)?;
        if p.epsilon != epsilon % 2 {
            return Err(Error::InvalidArgument(format!(
                "ε={epsilon} disagrees with ψ(-1)=(-1)^{}",
                p.epsilon
            )));
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> C64 {
        self.nu
    }

    pub fn psi(&self) -> &DirichletCharacter {
        &self.psi
    }

    pub fn epsilon(&self) -> u8 {
        self.epsilon
    }

    pub fn level(&self) -> u64 {
        self.psi.modulus()
    }

    pub fn rho_mir(&self) -> f64 {
        self.n as f64 / 2.0
    }

    pub fn with_nu(&self, nu: C64) -> Self {
        EisParams { nu, ..self.clone() }
    }

    fn check_len(&self, r: &[i64]) -> Result<()> {
        if r.len() + 1 != self.n {
            return Err(Error::InvalidArgument(format!(
                "frequency vector has length {}, expected {}",
                r.len(),
                self.n - 1
            )));
        }
        Ok(())
    }

    /// `ν - n/2 + 1`, the argument of the L-value in `c_0`.
    fn shifted(&self) -> C64 {
        self.nu - self.rho_mir() + 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cell {
    Big,
    Wlong,
}

fn real_pow(base: f64, z: C64) -> C64 {
    (z * base.ln()).exp()
}

/// Coefficient `a_r` on the big cell.
pub fn coeff_big_cell(params: &EisParams, r: &[i64]) -> Result<C64> {
    params.check_len(r)?;
    let n = params.n as f64;
    let level = params.level() as f64;
    let nu = params.nu;
    let prefactor = real_pow(level, -nu - n / 2.0);
    let g = gcd_all(r);
    if g == 0 {
        if !params.psi.is_principal() {
            return Ok(C64::new(0.0, 0.0));
        }
        let zeta = hurwitz_zeta(params.shifted(), 1.0).map_err(|e| pole_at_nu(e, nu))?;
        let count = euler_phi(params.level()) as f64;
        return finite(prefactor * count * zeta, "a_0");
    }
    let sum: C64 = divisors(g)
        .into_iter()
        .map(|d| real_pow(d as f64, -nu + n / 2.0 - 1.0) * params.psi.finite_fourier(-r[0] / d as i64))
        .sum();
    finite(prefactor * sum, "a_r")
}

/// Coefficient `c_r` on the cell of the long Weyl element.
pub fn coeff_wlong_cell(params: &EisParams, r: &[i64]) -> Result<C64> {
    params.check_len(r)?;
    let n = params.n as f64;
    let nu = params.nu;
    let prefactor = real_pow(params.level() as f64, 1.0 - C64::new(n, 0.0));
    let g = gcd_all(r);
    if g == 0 {
        let l = dirichlet_l(params.shifted(), &params.psi).map_err(|e| pole_at_nu(e, nu))?;
        return finite(prefactor * l, "c_0");
    }
    let sum: C64 = divisors(g)
        .into_iter()
        .filter(|&d| params.psi.is_unit(d as i64))
        .map(|d| params.psi.evaluate(d as i64) * real_pow(d as f64, -nu + n / 2.0 - 1.0))
        .sum();
    finite(prefactor * sum, "c_r")
}

fn pole_at_nu(e: Error, nu: C64) -> Error {
    match e {
        Error::Pole { .. } => Error::Pole { function: "constant term", at: nu },
        other => other,
    }
}

/// Evaluates many coefficients of one cell in parallel.
pub fn coefficient_grid(params: &EisParams, cell: Cell, rs: &[Vec<i64>]) -> Vec<Result<C64>> {
    rs.par_iter()
        .map(|r| match cell {
            Cell::Big => coeff_big_cell(params, r),
            Cell::Wlong => coeff_wlong_cell(params, r),
        })
        .collect()
}

/// Direct evaluation of `c_r` from the exponential sums before they collapse.
///
/// The inner sums `Σ_{v ∈ (ℤ/d)^{n-1}} e(r·v/d)` are formed by exact phase
/// counting; no divisibility shortcut is used. Only `ν` enters
/// [`BruteForceOracle::evaluate`], so one oracle serves many parameter sets.
#[derive(Debug, Clone)]
pub struct BruteForceOracle {
    r: Vec<i64>,
    inner: Vec<C64>,
}

impl BruteForceOracle {
    pub fn new(r: &[i64], d_max: u64) -> Self {
        let inner = (1..=d_max).map(|d| exponential_sum(r, d)).collect();
        BruteForceOracle { r: r.to_vec(), inner }
    }

    pub fn evaluate(&self, params: &EisParams) -> Result<C64> {
        params.check_len(&self.r)?;
        let n = params.n as f64;
        let mut sum = C64::new(0.0, 0.0);
        for (i, &inner) in self.inner.iter().enumerate() {
            let d = (i + 1) as i64;
            if inner == C64::new(0.0, 0.0) || !params.psi.is_unit(d) {
                continue;
            }
            sum += params.psi.evaluate(d) * real_pow(d as f64, -params.nu - n / 2.0) * inner;
        }
        let prefactor = real_pow(params.level() as f64, C64::new(1.0 - n, 0.0));
        finite(prefactor * sum, "brute-force c_r")
    }
}

/// `Σ_{v ∈ (ℤ/d)^{k}} e(Σ r_i v_i / d)`.
///
/// Counts how many `v` land on each residue of `r·v mod d` by convolving the
/// per-coordinate distributions, then sums the roots of unity once.
pub fn exponential_sum(r: &[i64], d: u64) -> C64 {
    let d_us = d as usize;
    let mut counts = vec![0u64; d_us];
    counts[0] = 1;
    for &ri in r {
        let step = rem_euclid_u(ri, d) as usize;
        let mut next = vec![0u64; d_us];
        for (phase, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for v in 0..d_us {
                next[(phase + step * v) % d_us] += c;
            }
        }
        counts = next;
    }
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| root_of_unity(k as i64, d) * c as f64)
        .sum()
}

pub fn brute_force_c_r(params: &EisParams, r: &[i64], d_max: u64) -> Result<C64> {
    if gcd_all(r) == 0 {
        return Err(Error::InvalidArgument("brute-force oracle needs r ≠ 0".into()));
    }
    BruteForceOracle::new(r, d_max).evaluate(params)
}

/// A weighted point mass `weight · δ_location` on `ℚ^{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaAtom {
    pub location: Vec<Ratio<i64>>,
    pub weight: C64,
    /// The lattice vector `v ∈ ℤ^n` the atom comes from.
    pub lattice: Vec<i64>,
}

impl DeltaAtom {
    pub fn location_strings(&self) -> Vec<String> {
        self.location.iter().map(|q| format!("{}/{}", q.numer(), q.denom())).collect()
    }
}

/// Atoms of the δ-expansion with every coordinate at most `height_cutoff`.
///
/// The cell coordinate (`v_1` on the big cell, `v_n` on the `w_long` cell)
/// runs over `1..=H`, the remaining ones over `0..=H`, and `v_1, …, v_{n-1}`
/// are multiples of `N`. Atoms with `ψ(v_n) = 0` are dropped.
pub fn delta_atom_sum(params: &EisParams, cell: Cell, height_cutoff: u64) -> Result<Vec<DeltaAtom>> {
    let n = params.n;
    let half = params.rho_mir();
    if params.nu.re <= half {
        return Err(Error::ConvergenceRegion(format!(
            "δ-expansion needs Re ν > {half}, got {}",
            params.nu.re
        )));
    }
    let h = height_cutoff as i64;
    let level = params.level() as i64;
    let exponent = -params.nu - half;
    let mut atoms = Vec::new();
    let mut v = vec![0i64; n];
    let mut ranges: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let divisible = i + 1 < n;
            let lo = match (cell, i) {
                (Cell::Big, 0) => 1,
                (Cell::Wlong, j) if j + 1 == n => 1,
                _ => 0,
            };
            (lo..=h).filter(|x| !divisible || x % level == 0).collect()
        })
        .collect();
    if cell == Cell::Big && ranges[0].is_empty() {
        return Ok(atoms);
    }
    ranges[n - 1].retain(|&x| params.psi.is_unit(x));
    let mut idx = vec![0usize; n];
    if ranges.iter().any(|r| r.is_empty()) {
        return Ok(atoms);
    }
    loop {
        for i in 0..n {
            v[i] = ranges[i][idx[i]];
        }
        let (denominator, location) = match cell {
            Cell::Wlong => (v[n - 1], v[..n - 1].to_vec()),
            Cell::Big => (v[0], v[1..].iter().rev().copied().collect::<Vec<_>>()),
        };
        let weight = params.psi.evaluate(v[n - 1]) * real_pow(denominator as f64, exponent);
        atoms.push(DeltaAtom {
            location: location.iter().map(|&x| Ratio::new(x, denominator)).collect(),
            weight,
            lattice: v.clone(),
        });
        // odometer over the ranges
        let mut i = 0;
        loop {
            idx[i] += 1;
            if idx[i] < ranges[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
            if i == n {
                return Ok(atoms);
            }
        }
    }
}

/// Fourier coefficient of a truncated atom list over one period, with the
/// bound on the neglected tail.
///
/// Only complete shells of the cell coordinate are used (shells in which
/// every atom of the fundamental domain is present), so the difference from
/// the exact coefficient is at most the returned bound.
pub fn fourier_from_atoms(params: &EisParams, cell: Cell, atoms: &[DeltaAtom], r: &[i64], height_cutoff: u64) -> Result<(C64, f64)> {
    params.check_len(r)?;
    let n = params.n;
    let level = params.level() as i64;
    let h = height_cutoff as i64;
    let (period, complete) = match cell {
        // v_i < N v_n must fit under the cutoff
        Cell::Wlong => (level, (h / level + 1).min(h)),
        Cell::Big => (1, h),
    };
    let mut sum = C64::new(0.0, 0.0);
    for atom in atoms {
        let shell = match cell {
            Cell::Wlong => atom.lattice[n - 1],
            Cell::Big => atom.lattice[0],
        };
        if shell > complete || atom.location.iter().any(|q| *q >= Ratio::from_integer(period)) {
            continue;
        }
        // phase r·loc / period as an exact rational, reduced mod 1
        let phase = atom
            .location
            .iter()
            .zip(r)
            .fold(Ratio::from_integer(0i64), |acc, (q, &ri)| acc + *q * ri);
        let phase = phase / period;
        let frac = phase - phase.floor();
        sum += atom.weight * root_of_unity(-*frac.numer(), *frac.denom() as u64);
    }
    let excess = params.nu.re - params.rho_mir();
    let (value, scale, shells) = match cell {
        Cell::Wlong => {
            let scale = (level as f64).powf(1.0 - n as f64);
            (sum * scale, scale, complete)
        }
        // shells are indexed by m = v_1 / N
        Cell::Big => (sum, (level as f64).powf(1.0 - params.nu.re - params.rho_mir()), h / level),
    };
    let tail = if shells == 0 {
        f64::INFINITY
    } else {
        scale * (shells as f64).powf(-excess) / excess
    };
    Ok((value, tail))
}

/// Whether `c_0(ν)` has a pole at `ν = n/2`, and its residue there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleData {
    pub is_polar: bool,
    pub residue_c0: C64,
}

pub fn pole_data(params: &EisParams) -> PoleData {
    if !params.psi.is_principal() {
        return PoleData { is_polar: false, residue_c0: C64::new(0.0, 0.0) };
    }
    let level = params.level();
    let residue = (level as f64).powf(1.0 - params.n as f64) * euler_phi(level) as f64 / level as f64;
    PoleData { is_polar: true, residue_c0: C64::new(residue, 0.0) }
}

/// `ν = n(s - 1/2)`.
pub fn nu_from_s(n: usize, s: C64) -> C64 {
    (s - 0.5) * n as f64
}

pub fn s_from_nu(n: usize, nu: C64) -> C64 {
    nu / n as f64 + 0.5
}

/// Local behaviour of `ψ` at a prime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalCharacter {
    Unramified(C64),
    Ramified { degree: u32 },
}

impl LocalCharacter {
    pub fn of(psi: &DirichletCharacter, p: u64) -> Self {
        match psi.ramification_degree(p) {
            0 => LocalCharacter::Unramified(psi.primitive_inducing().evaluate(p as i64)),
            degree => LocalCharacter::Ramified { degree },
        }
    }
}

/// Value of the local Tate-type integral at `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EulerFactor {
    Value(C64),
    Zero,
    /// A constant, not determined here, times `ψ(v_n)`.
    ConstantTimesPsi,
}

pub fn local_euler_factor(p: u64, s: C64, n: usize, psi_at_p: LocalCharacter, n_p: u32) -> Result<EulerFactor> {
    if !crate::arith::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let degree = match psi_at_p {
        LocalCharacter::Unramified(_) => 0,
        LocalCharacter::Ramified { degree } => degree,
    };
    if n_p >= 1 {
        return Ok(if degree > n_p { EulerFactor::Zero } else { EulerFactor::ConstantTimesPsi });
    }
    match psi_at_p {
        LocalCharacter::Ramified { .. } => Ok(EulerFactor::Zero),
        LocalCharacter::Unramified(chi) => {
            let denom = C64::new(1.0, 0.0) - chi * real_pow(p as f64, -s * n as f64);
            if denom == C64::new(0.0, 0.0) {
                return Err(Error::Pole { function: "local Euler factor", at: s });
            }
            Ok(EulerFactor::Value(finite(denom.inv(), "local Euler factor")?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn odd_mod4() -> DirichletCharacter {
        enumerate_characters(4).pop().unwrap()
    }

    #[test]
    fn big_cell_examples() {
        let p = EisParams::new(2, c(0.0, 0.0), DirichletCharacter::trivial(1)).unwrap();
        assert!((coeff_big_cell(&p, &[6]).unwrap() - c(4.0, 0.0)).norm() < 1e-14);
        let q = EisParams::new(2, c(0.0, 0.0), odd_mod4()).unwrap();
        assert!((coeff_big_cell(&q, &[1]).unwrap() - c(0.0, -0.5)).norm() < 1e-14);
        assert_eq!(coeff_big_cell(&q, &[0]).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn wlong_examples() {
        let p = EisParams::new(2, c(0.0, 0.0), DirichletCharacter::trivial(1)).unwrap();
        assert!((coeff_wlong_cell(&p, &[4]).unwrap() - c(3.0, 0.0)).norm() < 1e-14);
        let q = EisParams::new(3, c(0.7, -0.2), odd_mod4()).unwrap();
        assert!((coeff_wlong_cell(&q, &[2, 2]).unwrap() - c(1.0 / 16.0, 0.0)).norm() < 1e-15);
        let z = EisParams::new(2, c(2.0, 0.0), DirichletCharacter::trivial(1)).unwrap();
        let c0 = coeff_wlong_cell(&z, &[0]).unwrap();
        assert!((c0 - c(std::f64::consts::PI.powi(2) / 6.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn poles() {
        let p = EisParams::new(3, c(1.5, 0.0), DirichletCharacter::trivial(6)).unwrap();
        assert!(matches!(coeff_wlong_cell(&p, &[0, 0]), Err(Error::Pole { .. })));
        assert!(matches!(coeff_big_cell(&p, &[0, 0]), Err(Error::Pole { .. })));
        let d = pole_data(&p);
        assert!(d.is_polar);
        assert!((d.residue_c0.re - 1.0 / 108.0).abs() < 1e-16);
        let q = EisParams::new(2, c(1.0, 0.0), odd_mod4()).unwrap();
        assert_eq!(pole_data(&q), PoleData { is_polar: false, residue_c0: c(0.0, 0.0) });
        let one = EisParams::new(2, c(1.0, 0.0), DirichletCharacter::trivial(1)).unwrap();
        assert_eq!(pole_data(&one).residue_c0, c(1.0, 0.0));
    }

    #[test]
    fn inner_sums() {
        assert!(exponential_sum(&[1], 3).norm() < 1e-15);
        assert_eq!(exponential_sum(&[3], 3), c(3.0, 0.0));
        assert_eq!(exponential_sum(&[2, 4], 2), c(4.0, 0.0));
        assert!(exponential_sum(&[2, 3], 4).norm() < 1e-14);
    }

    #[test]
    fn brute_force_example() {
        let p = EisParams::new(2, c(1.3, 0.0), DirichletCharacter::trivial(1)).unwrap();
        let a = coeff_wlong_cell(&p, &[12]).unwrap();
        let b = brute_force_c_r(&p, &[12], 12).unwrap();
        assert!((a - b).norm() < 1e-13 * a.norm());
    }

    #[test]
    fn atoms_small() {
        let p = EisParams::new(2, c(3.0, 0.0), DirichletCharacter::trivial(1)).unwrap();
        let atoms = delta_atom_sum(&p, Cell::Wlong, 1).unwrap();
        let locs: Vec<_> = atoms.iter().map(|a| a.location_strings()).collect();
        assert_eq!(locs, vec![vec!["0/1".to_string()], vec!["1/1".to_string()]]);
        assert!(atoms.iter().all(|a| a.weight == c(1.0, 0.0)));
        let low = EisParams::new(2, c(1.0, 0.0), DirichletCharacter::trivial(1)).unwrap();
        assert!(matches!(delta_atom_sum(&low, Cell::Big, 3), Err(Error::ConvergenceRegion(_))));
    }

    #[test]
    fn atoms_skip_nonunits() {
        let p = EisParams::new(2, c(2.0, 0.0), odd_mod4()).unwrap();
        let atoms = delta_atom_sum(&p, Cell::Wlong, 12).unwrap();
        assert!(atoms.iter().all(|a| a.lattice[1] % 2 == 1 && a.lattice[0] % 4 == 0));
    }

    #[test]
    fn atom_fourier_recovery() {
        let p = EisParams::new(2, c(4.0, 0.0), DirichletCharacter::trivial(1)).unwrap();
        let h = 40;
        let atoms = delta_atom_sum(&p, Cell::Wlong, h).unwrap();
        let (got, tail) = fourier_from_atoms(&p, Cell::Wlong, &atoms, &[1], h).unwrap();
        let want = coeff_wlong_cell(&p, &[1]).unwrap();
        assert!((got - want).norm() <= tail, "{got} vs {want}, tail {tail}");
        let q = EisParams::new(3, c(3.5, 0.0), enumerate_characters(3).pop().unwrap()).unwrap();
        for cell in [Cell::Wlong, Cell::Big] {
            let atoms = delta_atom_sum(&q, cell, 30).unwrap();
            let (got, tail) = fourier_from_atoms(&q, cell, &atoms, &[2, -1], 30).unwrap();
            let want = match cell {
                Cell::Wlong => coeff_wlong_cell(&q, &[2, -1]).unwrap(),
                Cell::Big => coeff_big_cell(&q, &[2, -1]).unwrap(),
            };
            assert!((got - want).norm() <= tail, "{cell:?}: {got} vs {want}, tail {tail}");
        }
    }

    #[test]
    fn nu_s_maps() {
        assert_eq!(nu_from_s(3, c(0.5, 0.0)), c(0.0, 0.0));
        assert_eq!(nu_from_s(4, c(1.0, 0.0)), c(2.0, 0.0));
        let s = c(0.3, 1.7);
        assert!((s_from_nu(5, nu_from_s(5, s)) - s).norm() < 1e-15);
    }

    #[test]
    fn euler_factors() {
        let s = c(0.8, 0.1);
        let v = local_euler_factor(5, s, 2, LocalCharacter::Unramified(c(1.0, 0.0)), 0).unwrap();
        let want = (c(1.0, 0.0) - (-2.0 * s * 5f64.ln()).exp()).inv();
        match v {
            EulerFactor::Value(x) => assert!((x - want).norm() < 1e-15),
            other => panic!("{other:?}"),
        }
        let ram = LocalCharacter::Ramified { degree: 2 };
        assert_eq!(local_euler_factor(3, s, 2, ram, 0).unwrap(), EulerFactor::Zero);
        assert_eq!(local_euler_factor(3, s, 2, ram, 1).unwrap(), EulerFactor::Zero);
        assert_eq!(local_euler_factor(3, s, 2, ram, 2).unwrap(), EulerFactor::ConstantTimesPsi);
        assert!(local_euler_factor(4, s, 2, ram, 2).is_err());
        assert_eq!(LocalCharacter::of(&odd_mod4(), 2), LocalCharacter::Ramified { degree: 2 });
    }
}
