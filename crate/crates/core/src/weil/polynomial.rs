use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_math::arith::{pow, prime_power};
use crate::exact_math::sturm::count_real_roots_in_interval;
use crate::exact_math::{IntPolynomial, Rational};

/// Why a candidate failed the Weil test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum WeilFailure {
    /// `x^{2g} f(Q/x) != Q^g f(x)`.
    FunctionalEquation,
    /// The real transform (weight 2) or its squared form (weight 1) has
    /// roots off the admissible real interval.
    RootsOffCircle { in_range: usize, expected: usize },
}

/// Outcome of [`is_weil_polynomial`] with enough detail to audit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilCertificate {
    pub valid: bool,
    /// The input was an L-polynomial and was reversed first.
    pub reversed_input: bool,
    /// `R` with `f(x) = x^g R(x + Q/x)`, when the functional equation holds.
    pub real_transform: Option<IntPolynomial>,
    pub failure: Option<WeilFailure>,
}

/// Normalises to the monic x-convention. L-polynomials (constant term 1,
/// non-monic) are reversed. Returns the monic polynomial and whether it was
/// reversed.
pub(crate) fn normalise(f: &IntPolynomial) -> Result<(IntPolynomial, bool)> {
    let Some(deg) = f.degree() else {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    };
    if deg % 2 == 1 {
        return Err(Error::InvalidArgument(format!("odd degree {deg}")));
    }
    if f.is_monic() {
        return Ok((f.clone(), false));
    }
    if f.constant_term().is_one() {
        let r = f.reversed();
        if r.degree() == Some(deg) && r.is_monic() {
            return Ok((r, true));
        }
    }
    Err(Error::InvalidArgument(
        "polynomial is neither monic nor an L-polynomial with constant term 1".into(),
    ))
}

pub(crate) fn check_prime_power(q: u64) -> Result<(u64, u32)> {
    prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a prime power")))
}

/// `R` with `f(x) = x^g R(x + Q/x)` for monic `f` of degree `2g`, peeled off
/// from the top coefficient down. `None` if `f` is not of that shape.
pub(crate) fn real_part(f: &IntPolynomial, big_q: &BigInt) -> Option<IntPolynomial> {
    let deg = f.degree()?;
    let g = deg / 2;
    let mut rem = f.clone();
    let mut r = vec![BigInt::zero(); g + 1];
    // x^{g-k} (x^2 + Q)^k
    let base = IntPolynomial::new(vec![big_q.clone(), BigInt::zero(), BigInt::one()]);
    for k in (0..=g).rev() {
        let c = rem.coeff(g + k);
        if c.is_zero() {
            continue;
        }
        let term = &IntPolynomial::monomial(c.clone(), g - k) * &base.pow(k as u32);
        rem = &rem - &term;
        r[k] = c;
    }
    rem.is_zero().then(|| IntPolynomial::new(r))
}

fn functional_equation_holds(f: &IntPolynomial, big_q: &BigInt) -> bool {
    let deg = f.degree().unwrap_or(0);
    let g = (deg / 2) as u32;
    // x^{2g} f(Q/x): coefficient of x^{2g-i} is c_i Q^i.
    let lhs = f.scale_variable(big_q).reversed();
    let lhs = if lhs.degree() == Some(deg) {
        lhs
    } else {
        // f(0) = 0: reversal dropped degree, cannot satisfy the equation.
        return false;
    };
    lhs == f.scale(&pow(big_q, g))
}

/// Decides whether every complex root of `f` has absolute value
/// `q^{weight/2}`. Accepts monic polynomials or L-polynomials (reversed
/// internally).
pub fn is_weil_polynomial(f: &IntPolynomial, q: u64, weight: u8) -> Result<WeilCertificate> {
    if weight != 1 && weight != 2 {
        return Err(Error::InvalidArgument(format!("weight must be 1 or 2, got {weight}")));
    }
    check_prime_power(q)?;
    let (f, reversed_input) = normalise(f)?;
    let q_big = BigInt::from(q);
    let big_q = pow(&q_big, weight as u32);
    let fail = |failure, real_transform| WeilCertificate {
        valid: false,
        reversed_input,
        real_transform,
        failure: Some(failure),
    };
    if !functional_equation_holds(&f, &big_q) {
        return Ok(fail(WeilFailure::FunctionalEquation, None));
    }
    let r = real_part(&f, &big_q).expect("functional equation implies the real form");
    if r.degree() == Some(0) {
        return Ok(WeilCertificate {
            valid: true,
            reversed_input,
            real_transform: Some(r),
            failure: None,
        });
    }
    let (target, lo, hi) = if weight == 2 {
        let two_q = Rational::from_integer(&q_big * 2);
        (r.clone(), -two_q.clone(), two_q)
    } else {
        let four_q = Rational::from_integer(&q_big * 4);
        (squared_form(&r), Rational::zero(), four_q)
    };
    let expected = target.square_free_part().degree().unwrap_or(0);
    let in_range = count_real_roots_in_interval(&target, &lo, &hi)?.distinct;
    if in_range != expected {
        return Ok(fail(WeilFailure::RootsOffCircle { in_range, expected }, Some(r)));
    }
    Ok(WeilCertificate {
        valid: true,
        reversed_input,
        real_transform: Some(r),
        failure: None,
    })
}

/// `G(u) = A(u)^2 - u B(u)^2` where `R(y) = A(y^2) + y B(y^2)`; the roots of
/// `G` are the squares of the roots of `R`.
pub(crate) fn squared_form(r: &IntPolynomial) -> IntPolynomial {
    let even: Vec<BigInt> = r.coeffs().iter().step_by(2).cloned().collect();
    let odd: Vec<BigInt> = r.coeffs().iter().skip(1).step_by(2).cloned().collect();
    let a = IntPolynomial::new(even);
    let b = IntPolynomial::new(odd);
    &(&a * &a) - &(&IntPolynomial::x() * &(&b * &b))
}

/// A validated Weil polynomial in the monic x-convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilPolynomial {
    poly: IntPolynomial,
    q: u64,
    p: u64,
    n_exp: u32,
    weight: u8,
    g: usize,
}

impl WeilPolynomial {
    pub fn new(f: IntPolynomial, q: u64, weight: u8) -> Result<Self> {
        let cert = is_weil_polynomial(&f, q, weight)?;
        if !cert.valid {
            return Err(Error::NotWeil(format!(
                "{} fails the {:?} check for q = {q}, weight {weight}",
                f.render("x"),
                cert.failure.unwrap()
            )));
        }
        let (poly, _) = normalise(&f)?;
        let (p, n_exp) = check_prime_power(q)?;
        let g = poly.degree().unwrap() / 2;
        Ok(Self {
            poly,
            q,
            p,
            n_exp,
            weight,
            g,
        })
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n_exp(&self) -> u32 {
        self.n_exp
    }

    pub fn weight(&self) -> u8 {
        self.weight
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// `x^{2g} f(1/x)`, constant term 1.
    pub fn l_polynomial(&self) -> IntPolynomial {
        self.poly.reversed()
    }

    /// `R` with `f(x) = x^g R(x + q^w / x)`.
    pub fn real_transform(&self) -> IntPolynomial {
        real_part(&self.poly, &pow(&BigInt::from(self.q), self.weight as u32))
            .expect("validated Weil polynomial")
    }
}
