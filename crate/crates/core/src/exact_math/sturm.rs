//! Real-root counting with Sturm chains over the integers.

use num_traits::{Signed, Zero};

use super::{IntPolynomial, Rational};
use crate::error::{Error, Result};

/// Distinct real roots in a closed interval, with endpoint flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCount {
    pub distinct: usize,
    pub lo_is_root: bool,
    pub hi_is_root: bool,
}

impl RootCount {
    /// Roots in the open interval.
    pub fn interior(&self) -> usize {
        self.distinct
            .saturating_sub(self.lo_is_root as usize + self.hi_is_root as usize)
    }
}

/// Sturm chain of a square-free polynomial: `g, g', -prem(g, g'), ...`,
/// each remainder reduced to its primitive part (positive factors only).
pub fn sturm_chain(g: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = vec![g.clone()];
    if g.degree().unwrap_or(0) == 0 {
        return chain;
    }
    chain.push(g.derivative().primitive_part_signed());
    loop {
        let n = chain.len();
        let r = chain[n - 2].pseudo_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push((-&r).primitive_part_signed());
    }
    chain
}

fn variations(chain: &[IntPolynomial], x: &Rational) -> usize {
    let mut last = 0;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `f` in `[lo, hi]`.
pub fn count_real_roots_in_interval(
    f: &IntPolynomial,
    lo: &Rational,
    hi: &Rational,
) -> Result<RootCount> {
    if f.is_zero() {
        return Err(Error::InvalidArgument(
            "cannot count roots of the zero polynomial".into(),
        ));
    }
    if lo > hi {
        return Err(Error::InvalidArgument(format!(
            "empty interval [{lo}, {hi}]"
        )));
    }
    let g = f.square_free_part();
    let chain = sturm_chain(&g);
    let lo_is_root = g.sign_at(lo) == 0;
    let hi_is_root = g.sign_at(hi) == 0;
    // V(lo) - V(hi) counts roots in (lo, hi].
    let half_open = variations(&chain, lo) - variations(&chain, hi);
    Ok(RootCount {
        distinct: half_open + lo_is_root as usize,
        lo_is_root,
        hi_is_root,
    })
}

/// Roots in `[lo, hi]` counted with multiplicity, via the square-free
/// decomposition.
pub fn count_real_roots_with_multiplicity(
    f: &IntPolynomial,
    lo: &Rational,
    hi: &Rational,
) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::InvalidArgument(
            "cannot count roots of the zero polynomial".into(),
        ));
    }
    let mut total = 0;
    for (mult, part) in f.square_free_decomposition() {
        total += mult as usize * count_real_roots_in_interval(&part, lo, hi)?.distinct;
    }
    Ok(total)
}

/// True when every complex root of `f` is real and lies in `[lo, hi]`.
pub fn all_roots_in_interval(f: &IntPolynomial, lo: &Rational, hi: &Rational) -> Result<bool> {
    let g = f.square_free_part();
    let deg = g.degree().unwrap_or(0);
    Ok(count_real_roots_in_interval(&g, lo, hi)?.distinct == deg)
}

/// Distinct real roots on the whole line.
pub fn count_real_roots(f: &IntPolynomial) -> Result<usize> {
    let bound = cauchy_bound(f);
    Ok(count_real_roots_in_interval(f, &-bound.clone(), &bound)?.distinct)
}

/// `1 + max |c_i / c_n|`, an upper bound on the absolute value of every root.
pub fn cauchy_bound(f: &IntPolynomial) -> Rational {
    let lead = f.leading_coeff().expect("nonzero polynomial").abs();
    let m = f
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    Rational::from_integer(num_bigint::BigInt::from(1)) + Rational::new(m, lead)
}

impl IntPolynomial {
    /// Divides by the positive content, keeping the sign of the leading term.
    pub(crate) fn primitive_part_signed(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        Self::new(self.coeffs().iter().map(|a| a / &c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn golden_ratio_pair() {
        let f = IntPolynomial::from_i64(&[1, -3, 1]);
        let c = count_real_roots_in_interval(&f, &r(0), &r(8)).unwrap();
        assert_eq!(c.distinct, 2);
        assert!(!c.lo_is_root && !c.hi_is_root);
        let c = count_real_roots_in_interval(&f, &r(1), &r(8)).unwrap();
        assert_eq!(c.distinct, 1);
    }

    #[test]
    fn no_real_roots() {
        let f = IntPolynomial::from_i64(&[1, 0, 1]);
        assert_eq!(
            count_real_roots_in_interval(&f, &r(-10), &r(10)).unwrap().distinct,
            0
        );
    }

    #[test]
    fn repeated_root() {
        let f = IntPolynomial::from_i64(&[1, -2, 1]);
        let c = count_real_roots_in_interval(&f, &r(0), &r(2)).unwrap();
        assert_eq!(c.distinct, 1);
        assert_eq!(count_real_roots_with_multiplicity(&f, &r(0), &r(2)).unwrap(), 2);
    }

    #[test]
    fn endpoints_are_included() {
        // (x - 1)(x - 3)
        let f = IntPolynomial::from_i64(&[3, -4, 1]);
        let c = count_real_roots_in_interval(&f, &r(1), &r(3)).unwrap();
        assert_eq!(c.distinct, 2);
        assert!(c.lo_is_root && c.hi_is_root);
        assert_eq!(c.interior(), 0);
        let c = count_real_roots_in_interval(&f, &r(1), &r(1)).unwrap();
        assert_eq!(c.distinct, 1);
        let c = count_real_roots_in_interval(&f, &r(2), &r(2)).unwrap();
        assert_eq!(c.distinct, 0);
    }

    #[test]
    fn rational_endpoints() {
        // 2x - 1
        let f = IntPolynomial::from_i64(&[-1, 2]);
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let c = count_real_roots_in_interval(&f, &half, &r(1)).unwrap();
        assert_eq!(c.distinct, 1);
        assert!(c.lo_is_root);
    }

    #[test]
    fn errors() {
        assert!(count_real_roots_in_interval(&IntPolynomial::zero(), &r(0), &r(1)).is_err());
        let f = IntPolynomial::from_i64(&[1, 1]);
        assert!(count_real_roots_in_interval(&f, &r(1), &r(0)).is_err());
    }

    #[test]
    fn whole_line() {
        // x^3 - x
        let f = IntPolynomial::from_i64(&[0, -1, 0, 1]);
        assert_eq!(count_real_roots(&f).unwrap(), 3);
    }
}
