use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact_math::arith::{pow, totient};
use crate::exact_math::{scaled_cyclotomic, IntPolynomial, Rational};

/// An L-polynomial split as `Π C_d(t)^{a_d} · L_tr(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloDecomposition {
    pub parts: BTreeMap<u64, u32>,
    pub ltr: IntPolynomial,
    pub q: u64,
}

impl CycloDecomposition {
    pub fn multiplicity(&self, d: u64) -> u32 {
        self.parts.get(&d).copied().unwrap_or(0)
    }

    /// `Σ a_d φ(d)` over all parts, `d = 1` included.
    pub fn algebraic_degree(&self) -> u64 {
        self.parts.iter().map(|(&d, &a)| a as u64 * totient(d)).sum()
    }

    pub fn reconstruct(&self) -> IntPolynomial {
        let q = BigInt::from(self.q);
        self.parts.iter().fold(self.ltr.clone(), |acc, (&d, &a)| {
            &acc * &scaled_cyclotomic(d, &q).pow(a)
        })
    }

    /// Half the degree of `L_tr`.
    pub fn ltr_genus(&self) -> usize {
        self.ltr.degree().unwrap_or(0) / 2
    }
}

/// Divides out every `C_d(t)`, `d` ascending, as often as it divides.
pub fn strip_cyclotomic_factors(p: &IntPolynomial, q: u64) -> Result<CycloDecomposition> {
    if !p.constant_term().is_one() {
        return Err(Error::InvalidArgument(format!(
            "L-polynomial must have constant term 1, got {}",
            p.constant_term()
        )));
    }
    let q_big = BigInt::from(q);
    let mut rest = p.clone();
    let mut parts = BTreeMap::new();
    let deg = p.degree().unwrap_or(0) as u64;
    // phi(d) >= sqrt(d / 2), so phi(d) <= deg forces d <= 2 deg^2.
    for d in 1..=(2 * deg * deg).max(2) {
        let phi = totient(d);
        if phi > rest.degree().unwrap_or(0) as u64 {
            continue;
        }
        let c = scaled_cyclotomic(d, &q_big);
        while phi <= rest.degree().unwrap_or(0) as u64 {
            match rest.div_exact(&c) {
                Some(quot) => {
                    rest = quot;
                    *parts.entry(d).or_insert(0) += 1;
                }
                None => break,
            }
        }
    }
    Ok(CycloDecomposition {
        parts,
        ltr: rest,
        q,
    })
}

/// `L_tr(1/q)` together with the bound `(4 - 1/q)^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LtrValue {
    pub value: Rational,
    pub bound: Rational,
    pub within_bound: bool,
}

pub fn ltr_value(dec: &CycloDecomposition) -> LtrValue {
    let q = Rational::from_integer(BigInt::from(dec.q));
    let value = dec.ltr.eval_rational(&q.recip());
    let bound = num_traits::pow(Rational::from_integer(BigInt::from(4)) - q.recip(), dec.ltr_genus());
    LtrValue {
        within_bound: value <= bound,
        value,
        bound,
    }
}

/// `q^k · L(1/q)` as an exact rational, for an L-polynomial `L`.
pub fn scaled_value_at_inverse_q(l: &IntPolynomial, q: u64, k: u32) -> Rational {
    let qr = Rational::from_integer(BigInt::from(q));
    l.eval_rational(&qr.recip()) * Rational::from_integer(pow(&BigInt::from(q), k))
}

/// Whether `ltr` is divisible by no `C_d` of small enough degree.
pub fn is_exhaustive(dec: &CycloDecomposition) -> bool {
    let deg = dec.ltr.degree().unwrap_or(0) as u64;
    let q = BigInt::from(dec.q);
    (1..=2 * deg * deg)
        .filter(|&d| totient(d) <= deg)
        .all(|d| dec.ltr.div_exact(&scaled_cyclotomic(d, &q)).is_none())
}
