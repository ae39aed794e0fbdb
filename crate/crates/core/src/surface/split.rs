use num_bigint::BigInt;
use serde::Serialize;

use super::isogeny::IsogenyClass;
use crate::exact_math::arith::{isqrt, square_root_exact};

/// `w(x) = (x^2 - a x + q)(x^2 - b x + q)` with `a >= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticSplit {
    pub a: i64,
    pub b: i64,
    pub admissible: (bool, bool),
}

impl EllipticSplit {
    pub fn is_self_product(&self) -> bool {
        self.a == self.b
    }
}

/// Whether `x^2 - a x + q` is the Weil polynomial of an elliptic curve over
/// `F_q`, `q = p^n` (Waterhouse).
pub fn waterhouse_admissible(a: i64, p: u64, n: u32) -> bool {
    let q = p.pow(n) as i128;
    let a2 = (a as i128) * (a as i128);
    if a2 > 4 * q {
        return false;
    }
    let pi = p as i64;
    let even = n.is_multiple_of(2);
    let sqrt_q = square_root_exact(&BigInt::from(q)).map(|r| i64::try_from(r).unwrap());
    if a % pi != 0 {
        return true;
    }
    if even && sqrt_q.is_some_and(|r| a.abs() == 2 * r) {
        return true;
    }
    if even && p % 3 != 1 && sqrt_q.is_some_and(|r| a.abs() == r) {
        return true;
    }
    if !even && (p == 2 || p == 3) && a2 == p as i128 * q {
        return true;
    }
    a == 0 && (!even || p % 4 != 1)
}

/// Factors `w` into two elliptic-type quadratics over the integers when
/// possible.
pub fn split_elliptic(ic: &IsogenyClass) -> Option<EllipticSplit> {
    split_traces(ic.q, ic.s1, ic.s2).map(|(a, b)| EllipticSplit {
        a,
        b,
        admissible: (
            waterhouse_admissible(a, ic.p, ic.n_exp),
            waterhouse_admissible(b, ic.p, ic.n_exp),
        ),
    })
}

/// `(a, b)`, `a >= b`, with `a + b = s1`, `ab + 2q = s2` and `a^2, b^2 <= 4q`.
pub fn split_traces(q: u64, s1: i64, s2: i64) -> Option<(i64, i64)> {
    let m = i64::try_from(isqrt(&BigInt::from(4 * q))).unwrap();
    let q = q as i64;
    (-m..=m).rev().find_map(|a| {
        let b = s1 - a;
        (b <= a && b.abs() <= m && a * b + 2 * q == s2).then_some((a, b))
    })
}
