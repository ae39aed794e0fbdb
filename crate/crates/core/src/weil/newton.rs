use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::polynomial::normalise;
use super::WeilPolynomial;
use crate::error::{Error, Result};
use crate::exact_math::arith::valuation;
use crate::exact_math::{IntPolynomial, Rational};

/// Valuations of the roots, normalised so that `v(q) = 1`, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonSlopes {
    #[serde(serialize_with = "crate::serde_util::rationals")]
    slopes: Vec<Rational>,
    weight: u8,
}

impl NewtonSlopes {
    pub fn slopes(&self) -> &[Rational] {
        &self.slopes
    }

    pub fn weight(&self) -> u8 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn p_rank(&self) -> usize {
        self.slopes.iter().filter(|s| s.is_zero()).count()
    }

    pub fn is_supersingular(&self) -> bool {
        let half = Rational::new(BigInt::from(self.weight), BigInt::from(2));
        self.slopes.iter().all(|s| *s == half)
    }

    /// Invariance under `v -> weight - v`.
    pub fn is_self_dual(&self) -> bool {
        let w = Rational::from_integer(BigInt::from(self.weight));
        let mut dual: Vec<Rational> = self.slopes.iter().map(|s| &w - s).collect();
        dual.sort();
        dual == self.slopes
    }

    pub fn count_equal(&self, v: &Rational) -> usize {
        self.slopes.iter().filter(|s| *s == v).count()
    }
}

/// Newton slopes of a monic polynomial whose roots are `p`-adic integers
/// after normalising by `v(q) = 1`, `q = p^n_exp`.
pub fn slopes_of(f: &IntPolynomial, p: u64, n_exp: u32, weight: u8) -> NewtonSlopes {
    let pts: Vec<(usize, Rational)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            valuation(c, p).map(|v| (i, Rational::new(BigInt::from(v), BigInt::from(n_exp))))
        })
        .collect();
    let mut slopes = Vec::new();
    let mut i = 0;
    while i + 1 < pts.len() {
        // steepest descent from pts[i]: minimal slope, furthest point on ties
        let (x0, y0) = &pts[i];
        let mut best = i + 1;
        let mut best_slope = slope(x0, y0, &pts[best]);
        for (j, pt) in pts.iter().enumerate().skip(i + 2) {
            let s = slope(x0, y0, pt);
            if s <= best_slope {
                best = j;
                best_slope = s;
            }
        }
        let len = pts[best].0 - x0;
        for _ in 0..len {
            slopes.push(-best_slope.clone());
        }
        i = best;
    }
    slopes.sort();
    NewtonSlopes { slopes, weight }
}

fn slope(x0: &usize, y0: &Rational, (x1, y1): &(usize, Rational)) -> Rational {
    (y1 - y0) / Rational::from_integer(BigInt::from(x1 - x0))
}

/// Newton slopes of a validated Weil polynomial.
pub fn newton_slopes(f: &WeilPolynomial, p: u64) -> Result<NewtonSlopes> {
    if p != f.p() {
        return Err(Error::InvalidArgument(format!(
            "{p} does not divide q = {}",
            f.q()
        )));
    }
    Ok(slopes_of(f.poly(), p, f.n_exp(), f.weight()))
}

/// Slopes of an L-polynomial (constant term 1), reversed to the monic
/// convention first.
pub fn l_polynomial_slopes(l: &IntPolynomial, p: u64, n_exp: u32, weight: u8) -> Result<NewtonSlopes> {
    if l.degree() == Some(0) {
        return Ok(NewtonSlopes {
            slopes: Vec::new(),
            weight,
        });
    }
    let (f, _) = normalise(l)?;
    Ok(slopes_of(&f, p, n_exp, weight))
}
