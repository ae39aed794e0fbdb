//! Integer number theory used throughout: prime powers, totients, the
//! exponentiated von Mangoldt function, valuations and integer roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Prime factorisation by trial division, `(prime, exponent)` ascending.
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

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// `Some((p, k))` with `n = p^k`, `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn is_prime_power(n: u64) -> bool {
    prime_power(n).is_some()
}

pub fn prime_powers_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime_power(n)).collect()
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// `p` if `d = p^k` with `k >= 1`, else 1.
pub fn von_mangoldt_exp(d: u64) -> u64 {
    prime_power(d).map_or(1, |(p, _)| p)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
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

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// p-adic valuation, `None` for zero.
pub fn valuation(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// `floor(sqrt(n))` for `n >= 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

pub fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = isqrt(n);
        &r * &r == *n
    }
}

pub fn square_root_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = isqrt(n);
    (&r * &r == *n).then_some(r)
}

pub fn is_squarefree(n: &BigInt) -> bool {
    let Some(m) = n.abs().to_u64() else {
        return false;
    };
    m != 0 && factorize(m).iter().all(|&(_, e)| e == 1)
}

/// Discriminant of the maximal order of a quadratic field: `D ≡ 1 (mod 4)`
/// squarefree, or `D = 4m` with `m` squarefree and `m ≡ 2, 3 (mod 4)`.
pub fn is_fundamental_discriminant(d: &BigInt) -> bool {
    if d.is_zero() || d.is_one() {
        return false;
    }
    let four = BigInt::from(4);
    let r = d.mod_floor(&four);
    if r.is_one() {
        return is_squarefree(d);
    }
    if r.is_zero() {
        let m = d / &four;
        let mr = m.mod_floor(&four);
        return (mr == BigInt::from(2) || mr == BigInt::from(3)) && is_squarefree(&m);
    }
    false
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn pow(base: &BigInt, e: u32) -> BigInt {
    num_traits::pow(base.clone(), e as usize)
}

pub fn one() -> BigInt {
    BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(
            prime_powers_up_to(16),
            vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
        );
    }

    #[test]
    fn totients_and_lambda() {
        let phis: Vec<u64> = (1..=12).map(totient).collect();
        assert_eq!(phis, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
        assert_eq!(von_mangoldt_exp(9), 3);
        assert_eq!(von_mangoldt_exp(6), 1);
        assert_eq!(von_mangoldt_exp(1), 1);
    }

    #[test]
    fn valuations_and_roots() {
        assert_eq!(valuation(&big(48), 2), Some(4));
        assert_eq!(valuation(&big(-27), 3), Some(3));
        assert_eq!(valuation(&big(0), 3), None);
        assert_eq!(isqrt(&big(63)), big(7));
        assert!(is_square(&big(49)));
        assert!(!is_square(&big(-4)));
    }

    #[test]
    fn fundamental_discriminants() {
        for d in [-3, -4, -7, -8, -11, -15, -20, 5, 8, 12, 13] {
            assert!(is_fundamental_discriminant(&big(d)), "{d}");
        }
        for d in [-12, -16, -27, 1, 0, 9, -9, 16] {
            assert!(!is_fundamental_discriminant(&big(d)), "{d}");
        }
    }
}
