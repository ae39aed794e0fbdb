use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use super::arith::{divisors, factorize, totient, von_mangoldt_exp};
use super::IntPolynomial;
use crate::error::{Error, Result};

/// The d-th cyclotomic polynomial, by exact division of `x^d - 1` by the
/// cyclotomic polynomials of the proper divisors of `d`.
///
/// # Panics
/// If `d == 0`.
pub fn cyclotomic(d: u64) -> IntPolynomial {
    assert!(d >= 1, "cyclotomic index must be positive");
    if d <= CACHED {
        return small_table()[d as usize - 1].clone();
    }
    cyclotomic_uncached(d)
}

const CACHED: u64 = 128;

fn small_table() -> &'static [IntPolynomial] {
    static TABLE: OnceLock<Vec<IntPolynomial>> = OnceLock::new();
    TABLE.get_or_init(|| (1..=CACHED).map(cyclotomic_uncached).collect())
}

fn cyclotomic_uncached(d: u64) -> IntPolynomial {
    let mut table: BTreeMap<u64, IntPolynomial> = BTreeMap::new();
    for e in divisors(d) {
        let mut f = x_pow_minus_one(e);
        for (&f_idx, phi) in &table {
            if e % f_idx == 0 {
                f = f
                    .div_exact(phi)
                    .expect("cyclotomic factors divide x^e - 1");
            }
        }
        table.insert(e, f);
    }
    table.remove(&d).unwrap()
}

fn x_pow_minus_one(e: u64) -> IntPolynomial {
    let mut c = vec![BigInt::from(0); e as usize + 1];
    c[0] = BigInt::from(-1);
    c[e as usize] = BigInt::one();
    IntPolynomial::new(c)
}

/// Coefficients of Φ_d as machine integers, from the Möbius product
/// `Φ_d(x) = Π_{e|d} (1 - x^e)^{μ(d/e)}` (d > 1) expanded as a power series
/// truncated past degree φ(d). Only the radical of `d` is expanded.
///
/// Intermediate series are Φ_d times a product of binomials, so their
/// coefficients stay small; overflow is still checked.
pub(crate) fn cyclotomic_coeffs_small(d: u64) -> Vec<i64> {
    assert!(d >= 2);
    let primes: Vec<u64> = factorize(d).into_iter().map(|(p, _)| p).collect();
    let rad: u64 = primes.iter().product();
    let deg = totient(rad) as usize;
    let mut series = vec![0i64; deg + 1];
    series[0] = 1;
    let mut numer = Vec::new();
    let mut denom = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        let sub: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| *p)
            .product();
        let e = (rad / sub) as usize;
        if mask.count_ones() % 2 == 0 {
            numer.push(e);
        } else {
            denom.push(e);
        }
    }
    for e in numer {
        for i in (e..=deg).rev() {
            series[i] = series[i]
                .checked_sub(series[i - e])
                .expect("cyclotomic coefficient overflow");
        }
    }
    for e in denom {
        for i in e..=deg {
            series[i] = series[i]
                .checked_add(series[i - e])
                .expect("cyclotomic coefficient overflow");
        }
    }
    let stretch = (d / rad) as usize;
    let mut out = vec![0i64; deg * stretch + 1];
    for (i, c) in series.into_iter().enumerate() {
        out[i * stretch] = c;
    }
    out
}

/// Φ_d(1) for d ≥ 2, evaluated directly from the coefficients of Φ_d and
/// checked against the prime-power rule `Φ_d(1) = λ(d)`.
pub fn cyclotomic_at_one(d: u64) -> Result<u64> {
    if d <= 1 {
        return Err(Error::InvalidArgument(format!(
            "cyclotomic_at_one requires d >= 2, got {d}"
        )));
    }
    let direct = cyclotomic_at_one_direct(d);
    let classified = von_mangoldt_exp(d);
    if direct != classified as i64 {
        return Err(Error::Inconsistency(format!(
            "Phi_{d}(1) evaluates to {direct} but the prime-power rule gives {classified}"
        )));
    }
    Ok(classified)
}

/// Sum of the coefficients of Φ_d.
pub fn cyclotomic_at_one_direct(d: u64) -> i64 {
    cyclotomic_coeffs_small(d).iter().sum()
}

/// `C_d(t) = q^{φ(d)} t^{φ(d)} Φ_d(1/(qt))`, the L-polynomial factor whose
/// reciprocal roots are `ζ q` for ζ a primitive d-th root of unity.
pub fn scaled_cyclotomic(d: u64, q: &BigInt) -> IntPolynomial {
    cyclotomic(d).reversed().scale_variable(q)
}
