use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::isogeny::{p2_polynomial, IsogenyClass};
use super::split::{split_elliptic, EllipticSplit};
use crate::error::{Error, Result};
use crate::exact_math::arith::{is_fundamental_discriminant, is_square, pow};
use crate::exact_math::{IntPolynomial, Rational};
use crate::lattice::omega_from_decomposition;
use crate::weil::cyclo::{ltr_value, scaled_value_at_inverse_q};
use crate::weil::{l_polynomial_slopes, strip_cyclotomic_factors};

/// How `|Br(A)|` and `|det NS(A)|` were separated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolutionMethod {
    /// Product of two non-isogenous curves: `det NS = ±1`.
    NonIsogenousProduct,
    /// Self-product of an ordinary curve whose endomorphism ring is forced
    /// to be the maximal order.
    OrdinarySquareMaximalOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub br: BigInt,
    pub det_ns: BigInt,
    pub method: ResolutionMethod,
}

/// The Brauer and Neron–Severi invariants of an isogeny class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerReport {
    pub p2: IntPolynomial,
    pub parts: BTreeMap<u64, u32>,
    pub rho_bar: u64,
    pub rho: u64,
    pub tau: u64,
    pub omega: u64,
    pub n: u64,
    pub ltr: IntPolynomial,
    pub ltr_value: Rational,
    pub ltr_bound: Rational,
    /// `|Br(Ā)^Γ| = q · L_tr(1/q)`.
    pub geo_brauer_gamma: BigInt,
    /// `|Br(A)| · |det NS(A)|`.
    pub br_det: BigInt,
    pub sigma_prime: usize,
    /// Copies of `Q/Z` and of `Q/Z'` (prime-to-p part) in `Br(Ā)`.
    pub divisible_shape: (usize, usize),
    /// `Σ_{v < 1} (1 - v)` over the slopes of `L_tr`.
    pub slope_exponent: Rational,
    /// Whether the slope exponent equals `1` (`0` when supersingular). Always
    /// true for classes that exist; Weil polynomials with slopes such as
    /// `1/4` break it.
    pub slope_exponent_consistent: bool,
    pub split: Option<EllipticSplit>,
    pub resolved: Option<Resolution>,
    /// `(|Br|, |det NS|)` pairs consistent with squareness when unresolved.
    pub candidates: Vec<(BigInt, BigInt)>,
}

impl BrauerReport {
    /// Every square `b` with `b | br_det`, i.e. the conceivable `|Br(A)|`.
    pub fn possible_br(&self) -> Vec<BigInt> {
        match &self.resolved {
            Some(r) => vec![r.br.clone()],
            None => self.candidates.iter().map(|(b, _)| b.clone()).collect(),
        }
    }
}

pub fn compute_report(ic: &IsogenyClass) -> Result<BrauerReport> {
    let q = ic.q;
    let qb = BigInt::from(q);
    let p2 = p2_polynomial(ic);
    let dec = strip_cyclotomic_factors(&p2, q)?;
    let rho = dec.multiplicity(1) as u64;
    if rho < 2 {
        return Err(Error::Inconsistency(format!(
            "P2 of q = {q}, s1 = {}, s2 = {} has a_1 = {rho} < 2",
            ic.s1, ic.s2
        )));
    }
    let rho_bar = dec.algebraic_degree();
    let nontrivial: BTreeMap<u64, u32> = dec
        .parts
        .iter()
        .filter(|(&d, _)| d >= 2)
        .map(|(&d, &a)| (d, a))
        .collect();
    let profile = omega_from_decomposition(&nontrivial)?;
    let lv = ltr_value(&dec);
    let gamma_r = &lv.value * Rational::from_integer(qb.clone());
    if !gamma_r.is_integer() || !gamma_r.is_positive() {
        return Err(Error::Inconsistency(format!(
            "q L_tr(1/q) = {gamma_r} is not a positive integer"
        )));
    }
    let geo_brauer_gamma = gamma_r.to_integer();

    // Route 1: q (P2 / (1 - qt)^rho)(1/q).
    let c1 = IntPolynomial::from_i64(&[1, -(q as i64)]);
    let reduced = p2
        .div_exact(&c1.pow(rho as u32))
        .expect("a_1 counts the (1 - qt) factors");
    let route1 = scaled_value_at_inverse_q(&reduced, q, 1);
    // Route 2: ω |Br(Ā)^Γ|.
    let route2 = BigInt::from(profile.omega) * &geo_brauer_gamma;
    if route1 != Rational::from_integer(route2.clone()) {
        return Err(Error::Inconsistency(format!(
            "br_det routes disagree: {route1} vs {route2}"
        )));
    }
    let br_det = route2;

    let ltr_slopes = l_polynomial_slopes(&dec.ltr, ic.p, ic.n_exp, 2)?;
    let one = Rational::one();
    let sigma_prime = ltr_slopes.count_equal(&one);
    let two_g = ltr_slopes.len();
    let slope_exponent: Rational = ltr_slopes
        .slopes()
        .iter()
        .filter(|v| **v < one)
        .map(|v| &one - v)
        .sum();
    let expected = if ic.is_supersingular() { Rational::zero() } else { one.clone() };
    let slope_exponent_consistent = slope_exponent == expected;
    if !slope_exponent_consistent && ic.exists() {
        return Err(Error::Inconsistency(format!(
            "slope exponent {slope_exponent} does not reconcile with alpha = 1"
        )));
    }

    let split = split_elliptic(ic);
    let mut report = BrauerReport {
        p2,
        parts: dec.parts.clone(),
        rho_bar,
        rho,
        tau: rho_bar - rho,
        omega: profile.omega,
        n: profile.n,
        ltr: dec.ltr.clone(),
        ltr_value: lv.value,
        ltr_bound: lv.bound,
        geo_brauer_gamma,
        br_det,
        sigma_prime,
        divisible_shape: (sigma_prime, two_g - sigma_prime),
        slope_exponent,
        slope_exponent_consistent,
        split,
        resolved: None,
        candidates: Vec::new(),
    };
    report.resolved = resolve_br_det(&report, ic, split.as_ref())?;
    if report.resolved.is_none() {
        report.candidates = square_candidates(&report.br_det);
    }
    Ok(report)
}

/// `8q + s1^2 - 4 s2`, valid when `ρ(A) = 2`.
pub fn rho2_brdet(ic: &IsogenyClass) -> Result<BigInt> {
    let report = compute_report(ic)?;
    if report.rho != 2 {
        return Err(Error::InvalidArgument(format!(
            "rho(A) = {} but the formula needs rho(A) = 2",
            report.rho
        )));
    }
    let v = BigInt::from(8 * ic.q as i64 + ic.s1 * ic.s1 - 4 * ic.s2);
    if v != report.br_det {
        return Err(Error::Inconsistency(format!(
            "8q + s1^2 - 4 s2 = {v} but br_det = {}",
            report.br_det
        )));
    }
    Ok(v)
}

/// Separates `br_det` in the two decidable cases.
pub fn resolve_br_det(
    report: &BrauerReport,
    ic: &IsogenyClass,
    split: Option<&EllipticSplit>,
) -> Result<Option<Resolution>> {
    let Some(s) = split else {
        return Ok(None);
    };
    if !(s.admissible.0 && s.admissible.1) {
        return Ok(None);
    }
    if s.a != s.b {
        let br = report.br_det.clone();
        if !is_square(&br) {
            return Err(Error::Inconsistency(format!(
                "product of non-isogenous curves with non-square |Br| = {br}"
            )));
        }
        return Ok(Some(Resolution {
            br,
            det_ns: BigInt::one(),
            method: ResolutionMethod::NonIsogenousProduct,
        }));
    }
    let a = BigInt::from(s.a);
    let ordinary = !a.is_multiple_of(&BigInt::from(ic.p));
    let disc = &a * &a - BigInt::from(4 * ic.q);
    if !ordinary || !is_fundamental_discriminant(&disc) {
        return Ok(None);
    }
    let det_ns = disc.abs();
    let (br, rem) = report.br_det.div_rem(&det_ns);
    if !rem.is_zero() || !is_square(&br) {
        return Err(Error::Inconsistency(format!(
            "br_det {} over |disc| {det_ns} is not a square integer",
            report.br_det
        )));
    }
    Ok(Some(Resolution {
        br,
        det_ns,
        method: ResolutionMethod::OrdinarySquareMaximalOrder,
    }))
}

/// `(b, d)` with `b d = n` and `b` a perfect square, `b` ascending.
pub fn square_candidates(n: &BigInt) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    let mut r = BigInt::one();
    loop {
        let b = &r * &r;
        if &b > n {
            break;
        }
        if n.is_multiple_of(&b) {
            out.push((b.clone(), n / &b));
        }
        r += 1;
    }
    out
}

/// `q^k` as a big integer.
pub fn q_pow(q: u64, k: u32) -> BigInt {
    pow(&BigInt::from(q), k)
}
