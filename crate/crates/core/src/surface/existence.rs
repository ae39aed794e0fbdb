//! Honda–Tate existence filter for quartic Weil polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::padic::has_root_of_valuation;
use super::split::{split_traces, waterhouse_admissible};
use crate::exact_math::arith::{square_root_exact, valuation};
use crate::exact_math::IntPolynomial;
use crate::weil::NewtonSlopes;

/// How an isogeny class of abelian surfaces decomposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    Simple,
    /// `E x E`.
    Square,
    /// `E1 x E2` with `E1`, `E2` not isogenous.
    Product,
}

impl SurfaceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SurfaceKind::Simple => "simple",
            SurfaceKind::Square => "square",
            SurfaceKind::Product => "product",
        }
    }
}

/// Order of the class of the endomorphism algebra of the simple abelian
/// variety attached to a root of `x^2 - a x + q`, `a^2 < 4q`, `q = p^n`.
/// The class with this Weil polynomial has dimension `e`.
pub fn elliptic_brauer_order(a: i64, p: u64, n: u32) -> u32 {
    let k = valuation(&BigInt::from(a), p);
    match k {
        Some(k) if 2 * k < n => n / n.gcd(&k),
        _ => {
            let q = p.pow(n) as i64;
            let h = IntPolynomial::from_i64(&[q, -a, 1]);
            if n.is_multiple_of(2) && has_root_of_valuation(&h, p, n / 2) {
                2
            } else {
                1
            }
        }
    }
}

/// `None` when no abelian surface over `F_q` has Weil polynomial `w`.
pub fn classify(q: u64, p: u64, n: u32, s1: i64, s2: i64, slopes: &NewtonSlopes) -> Option<SurfaceKind> {
    if let Some((a, b)) = split_traces(q, s1, s2) {
        let adm = (waterhouse_admissible(a, p, n), waterhouse_admissible(b, p, n));
        if a != b {
            return (adm.0 && adm.1).then_some(SurfaceKind::Product);
        }
        if adm.0 {
            return Some(SurfaceKind::Square);
        }
        let real = (a as i128) * (a as i128) == 4 * q as i128;
        return (!real && elliptic_brauer_order(a, p, n) == 2).then_some(SurfaceKind::Simple);
    }
    let qi = q as i64;
    let w = IntPolynomial::from_i64(&[qi * qi, -qi * s1, s2, -s1, 1]);
    let x2_minus_q = IntPolynomial::from_i64(&[-qi, 0, 1]);
    let mut real_root = w.div_exact(&x2_minus_q).is_some();
    if let Some(r) = square_root_exact(&BigInt::from(q)) {
        real_root |= w.eval(&r) == BigInt::from(0) || w.eval(&-r) == BigInt::from(0);
    }
    if real_root {
        let simple_real = n % 2 == 1 && w == x2_minus_q.pow(2);
        return simple_real.then_some(SurfaceKind::Simple);
    }
    // w is irreducible over Q from here on.
    let local_ok = n % 2 == 1 || !has_root_of_valuation(&w, p, n / 2);
    match slopes.p_rank() {
        2 => Some(SurfaceKind::Simple),
        1 if local_ok => Some(SurfaceKind::Simple),
        0 if slopes.is_supersingular() && local_ok => Some(SurfaceKind::Simple),
        _ => None,
    }
}
