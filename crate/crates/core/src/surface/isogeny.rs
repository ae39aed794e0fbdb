use num_bigint::BigInt;
use serde::Serialize;

use super::existence::{classify, SurfaceKind};
use crate::error::{Error, Result};
use crate::exact_math::arith::{isqrt, prime_power};
use crate::exact_math::IntPolynomial;
use crate::weil::{is_weil_polynomial, newton_slopes, NewtonSlopes, WeilPolynomial};

/// Whether the existence verdict has been matched against external data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExistenceStatus {
    /// From the Honda–Tate filter only.
    Heuristic,
    /// Filter verdict agrees with a reconciled database record set.
    Confirmed,
}

/// The isogeny class with Weil polynomial
/// `w(x) = x^4 - s1 x^3 + s2 x^2 - q s1 x + q^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyClass {
    pub q: u64,
    pub p: u64,
    pub n_exp: u32,
    pub s1: i64,
    pub s2: i64,
    pub weil: WeilPolynomial,
    pub slopes: NewtonSlopes,
    /// `None` when no abelian surface has this Weil polynomial.
    pub kind: Option<SurfaceKind>,
    pub existence_status: ExistenceStatus,
}

impl IsogenyClass {
    pub fn p_rank(&self) -> usize {
        self.slopes.p_rank()
    }

    pub fn is_supersingular(&self) -> bool {
        self.slopes.is_supersingular()
    }

    pub fn exists(&self) -> bool {
        self.kind.is_some()
    }

    /// `1 - s1 t + s2 t^2 - q s1 t^3 + q^2 t^4`.
    pub fn l_polynomial(&self) -> IntPolynomial {
        self.weil.l_polynomial()
    }

    /// Coefficients `[1, a1, a2, q a1, q^2]` of the L-polynomial.
    pub fn l_coeffs(&self) -> [i64; 5] {
        let q = self.q as i64;
        [1, -self.s1, self.s2, -q * self.s1, q * q]
    }

    pub fn weil_polynomial(q: u64, s1: i64, s2: i64) -> IntPolynomial {
        let q = q as i64;
        IntPolynomial::from_i64(&[q * q, -q * s1, s2, -s1, 1])
    }
}

/// Which of the four Weil inequalities fails, if any.
pub fn weil_window_violation(q: u64, s1: i64, s2: i64) -> Option<&'static str> {
    let (q, s1, s2) = (q as i128, s1 as i128, s2 as i128);
    if s1 * s1 > 16 * q {
        Some("s1^2 <= 16q")
    } else if 4 * s2 > s1 * s1 + 8 * q {
        Some("s2 <= s1^2/4 + 2q")
    } else if s2 + 2 * q < 0 {
        Some("s2 + 2q >= 0")
    } else if (s2 + 2 * q) * (s2 + 2 * q) < 4 * q * s1 * s1 {
        Some("(s2 + 2q)^2 >= 4q s1^2")
    } else {
        None
    }
}

/// `floor(4 sqrt q)` by integer square root.
pub fn s1_bound(q: u64) -> i64 {
    i64::try_from(isqrt(&BigInt::from(16 * q))).expect("small bound")
}

/// The `s2` range allowed for a given `s1`, from the exact inequalities.
pub fn s2_range(q: u64, s1: i64) -> Option<(i64, i64)> {
    let qi = q as i128;
    let s1i = s1 as i128;
    if s1i * s1i > 16 * qi {
        return None;
    }
    let hi = (s1i * s1i + 8 * qi).div_euclid(4);
    // smallest s2 with s2 + 2q >= 2|s1| sqrt(q): s2 + 2q >= ceil(sqrt(4 q s1^2))
    let need = 4 * qi * s1i * s1i;
    let root = i128::try_from(isqrt(&BigInt::from(need))).expect("small");
    let ceil_root = if root * root == need { root } else { root + 1 };
    let lo = ceil_root - 2 * qi;
    (lo <= hi).then_some((lo as i64, hi as i64))
}

/// Validates `(s1, s2)` for `q` and derives the slopes and the existence
/// verdict.
pub fn make_isogeny_class(q: u64, s1: i64, s2: i64) -> Result<IsogenyClass> {
    let (p, n_exp) = prime_power(q)
        .ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a prime power")))?;
    let violation = weil_window_violation(q, s1, s2);
    let poly = IsogenyClass::weil_polynomial(q, s1, s2);
    let cert = is_weil_polynomial(&poly, q, 1)?;
    if cert.valid != violation.is_none() {
        return Err(Error::Inconsistency(format!(
            "Weil inequalities and root test disagree for q = {q}, s1 = {s1}, s2 = {s2}"
        )));
    }
    if let Some(v) = violation {
        return Err(Error::NotWeil(format!(
            "q = {q}, s1 = {s1}, s2 = {s2} violates {v}"
        )));
    }
    let weil = WeilPolynomial::new(poly, q, 1)?;
    let slopes = newton_slopes(&weil, p)?;
    let kind = classify(q, p, n_exp, s1, s2, &slopes);
    Ok(IsogenyClass {
        q,
        p,
        n_exp,
        s1,
        s2,
        weil,
        slopes,
        kind,
        existence_status: ExistenceStatus::Heuristic,
    })
}

/// `P_2(A, t) = (1 - qt)^2 (1 + (2q - s2)t + q(2q + s1^2 - 2 s2)t^2
/// + q^2(2q - s2)t^3 + q^4 t^4)`.
pub fn p2_polynomial(ic: &IsogenyClass) -> IntPolynomial {
    let q = BigInt::from(ic.q);
    let s1 = BigInt::from(ic.s1);
    let s2 = BigInt::from(ic.s2);
    let two_q = &q * 2;
    let q2 = &q * &q;
    let quartic = IntPolynomial::new(vec![
        BigInt::from(1),
        &two_q - &s2,
        &q * (&two_q + &s1 * &s1 - &s2 * 2),
        &q2 * (&two_q - &s2),
        &q2 * &q2,
    ]);
    let lin = IntPolynomial::new(vec![BigInt::from(1), -q]);
    &lin.pow(2) * &quartic
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let ic = make_isogeny_class(3, 0, -3).unwrap();
        assert!(ic.is_supersingular());
        assert_eq!(ic.p_rank(), 0);
        let ic = make_isogeny_class(5, 0, 10).unwrap();
        assert!(ic.is_supersingular());
        let err = make_isogeny_class(2, 9, 0).unwrap_err();
        assert!(err.to_string().contains("s1^2 <= 16q"));
        assert!(make_isogeny_class(6, 0, 0).is_err());
    }

    #[test]
    fn p2_matches_table_rows() {
        let lin = |c: i64| IntPolynomial::from_i64(&[1, c]);
        let ic = make_isogeny_class(3, 0, -3).unwrap();
        let expect = &(&lin(-3).pow(2) * &lin(3).pow(2)) * &IntPolynomial::from_i64(&[1, 3, 9]);
        assert_eq!(p2_polynomial(&ic), expect);
        let ic = make_isogeny_class(2, 0, -3).unwrap();
        let expect = &(&lin(-2).pow(2) * &lin(2).pow(2)) * &IntPolynomial::from_i64(&[1, 3, 4]);
        assert_eq!(p2_polynomial(&ic), expect);
    }

    #[test]
    fn window_matches_inequalities() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let b = s1_bound(q);
            for s1 in -b - 2..=b + 2 {
                for s2 in -3 * q as i64..=3 * q as i64 + 40 {
                    let in_window = s2_range(q, s1).is_some_and(|(lo, hi)| lo <= s2 && s2 <= hi);
                    assert_eq!(in_window, weil_window_violation(q, s1, s2).is_none());
                }
            }
        }
    }
}
