//! Exact arithmetic with sums of roots of unity.
//!
//! A sum sum_k c_k zeta_N^{e_k} (c_k integers) vanishes exactly when the
//! corresponding polynomial reduces to zero modulo the N-th cyclotomic
//! polynomial. Reduction stays in Z[x] because the cyclotomic polynomial is
//! monic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest root-of-unity order accepted before rejecting with a diagnostic.
pub const MAX_ORDER: u64 = 1_000_000;

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Euler totient.
pub fn totient(n: u64) -> u64 {
    let mut result = n;
    for p in distinct_prime_factors(n) {
        result = result / p * (p - 1);
    }
    result
}

fn poly_trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
}

/// Substitute x -> x^k.
fn poly_inflate(p: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); (p.len() - 1) * k + 1];
    for (i, c) in p.iter().enumerate() {
        out[i * k] = c.clone();
    }
    out
}

/// Exact polynomial division; panics if the division leaves a remainder,
/// which cannot happen for the cyclotomic recurrences used here.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dlead = den.last().expect("empty divisor");
    let dn = den.len();
    assert!(rem.len() >= dn);
    let mut quot = vec![BigInt::zero(); rem.len() - dn + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dn - 1] / dlead;
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                let t = &c * dj;
                rem[k + j] -= t;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    poly_trim(&mut quot);
    quot
}

/// Coefficients of the N-th cyclotomic polynomial, ascending degree.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<BigInt>> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::CyclotomicOverflow { n, bound: MAX_ORDER });
    }
    // Phi_1 = x - 1
    let mut f = vec![-BigInt::one(), BigInt::one()];
    let primes = distinct_prime_factors(n);
    let mut rad = 1u64;
    for &p in &primes {
        rad *= p;
        // Phi_{mp}(x) = Phi_m(x^p) / Phi_m(x) for p not dividing m
        let inflated = poly_inflate(&f, p as usize);
        f = poly_div_exact(&inflated, &f);
    }
    if rad < n {
        f = poly_inflate(&f, (n / rad) as usize);
    }
    Ok(f)
}

/// Reduce sum_k c_k x^{e_k mod n} modulo Phi_n. The result has length
/// totient(n); the sum of roots of unity vanishes iff every entry is zero.
pub fn reduce_root_sum(n: u64, terms: &[(u64, BigInt)]) -> Result<Vec<BigInt>> {
    let phi = cyclotomic_polynomial(n)?;
    let deg = phi.len() - 1;
    let mut dense = vec![BigInt::zero(); n as usize];
    for (e, c) in terms {
        dense[(e % n) as usize] += c;
    }
    // long division by the monic Phi_n
    for k in (deg..n as usize).rev() {
        if dense[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut dense[k], BigInt::zero());
        for (j, pj) in phi.iter().enumerate().take(deg) {
            let t = &c * pj;
            dense[k - deg + j] -= t;
        }
    }
    dense.truncate(deg.max(1));
    Ok(dense)
}

/// Exact test: does sum_k c_k zeta_n^{e_k} equal zero?
pub fn root_sum_vanishes(n: u64, terms: &[(u64, BigInt)]) -> Result<bool> {
    Ok(reduce_root_sum(n, terms)?.iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(coeffs(&cyclotomic_polynomial(1).unwrap()), vec![-1, 1]);
        assert_eq!(coeffs(&cyclotomic_polynomial(2).unwrap()), vec![1, 1]);
        assert_eq!(coeffs(&cyclotomic_polynomial(3).unwrap()), vec![1, 1, 1]);
        assert_eq!(coeffs(&cyclotomic_polynomial(4).unwrap()), vec![1, 0, 1]);
        assert_eq!(coeffs(&cyclotomic_polynomial(6).unwrap()), vec![1, -1, 1]);
        assert_eq!(coeffs(&cyclotomic_polynomial(10).unwrap()), vec![1, -1, 1, -1, 1]);
        assert_eq!(coeffs(&cyclotomic_polynomial(12).unwrap()), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn totient_values() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(10), 4);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(36), 12);
    }

    #[test]
    fn full_orbit_sums_vanish() {
        for n in 2..=12u64 {
            let terms: Vec<(u64, BigInt)> = (0..n).map(|e| (e, BigInt::one())).collect();
            assert!(root_sum_vanishes(n, &terms).unwrap(), "n={n}");
        }
    }

    #[test]
    fn opposite_roots_cancel() {
        // zeta_4 + zeta_4^3 = i - i = 0
        let terms = vec![(1u64, BigInt::one()), (3u64, BigInt::one())];
        assert!(root_sum_vanishes(4, &terms).unwrap());
    }

    #[test]
    fn non_vanishing_sum_detected() {
        let terms = vec![(0u64, BigInt::one()), (1u64, BigInt::one())];
        assert!(!root_sum_vanishes(5, &terms).unwrap());
    }

    #[test]
    fn order_guard() {
        assert!(cyclotomic_polynomial(MAX_ORDER + 1).is_err());
    }

    #[test]
    fn multiplicity_counts() {
        // 2*zeta_2 + 2 = 0
        let terms = vec![(0u64, BigInt::from(2)), (1u64, BigInt::from(2))];
        assert!(root_sum_vanishes(2, &terms).unwrap());
        // 2 + zeta_2 != 0
        let terms = vec![(0u64, BigInt::from(2)), (1u64, BigInt::one())];
        assert!(!root_sum_vanishes(2, &terms).unwrap());
    }
}
