//! Small integer helpers: factorization, totients, divisors, primitive roots.

use num_integer::Integer;

/// Prime factorization by trial division, as `(p, e)` pairs with `p` increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Exponent of the unit group `(Z/n)^*`.
pub fn carmichael_lambda(n: u64) -> u64 {
    factorize(n).into_iter().fold(1, |acc, (p, e)| {
        let l = if p == 2 {
            match e {
                1 => 1,
                2 => 2,
                _ => 1 << (e - 2),
            }
        } else {
            (p - 1) * p.pow(e - 1)
        };
        acc.lcm(&l)
    })
}

/// Positive divisors in increasing order. `divisors(0)` is empty.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `m`; `a` must be a unit.
pub fn mult_order(a: u64, m: u64) -> u64 {
    let lambda = carmichael_lambda(m);
    divisors(lambda)
        .into_iter()
        .find(|&d| mod_pow(a, d, m) == 1 % m)
        .unwrap_or(lambda)
}

/// Smallest primitive root modulo an odd prime power `p^e`.
pub fn smallest_primitive_root(p: u64, e: u32) -> u64 {
    let m = p.pow(e);
    let phi = (p - 1) * p.pow(e - 1);
    (2..m)
        .find(|&g| g.gcd(&p) == 1 && mult_order(g, m) == phi)
        .expect("odd prime powers are cyclic")
}

/// gcd of the absolute values; `gcd_all(&[]) == 0` and `gcd_all(&[0, 0]) == 0`.
pub fn gcd_all(values: &[i64]) -> u64 {
    values
        .iter()
        .fold(0u64, |g, &v| g.gcd(&v.unsigned_abs()))
}

pub fn rem_euclid_u(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_phi() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(49), 42);
    }

    #[test]
    fn lambda_values() {
        assert_eq!(carmichael_lambda(8), 2);
        assert_eq!(carmichael_lambda(16), 4);
        assert_eq!(carmichael_lambda(15), 4);
        assert_eq!(carmichael_lambda(1), 1);
    }

    #[test]
    fn roots_and_divisors() {
        assert_eq!(smallest_primitive_root(3, 1), 2);
        assert_eq!(smallest_primitive_root(7, 1), 3);
        assert_eq!(smallest_primitive_root(3, 2), 2);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(0), Vec::<u64>::new());
        assert_eq!(gcd_all(&[0, -6, 9]), 3);
        assert_eq!(gcd_all(&[0, 0]), 0);
    }
}
