use num_bigint::BigInt;
use num_traits::Zero;

use super::WeilPolynomial;
use crate::error::{Error, Result};
use crate::exact_math::IntPolynomial;

/// `R(y) = Π (y + b_i)` for `f(x) = Π (x^2 + b_i x + q^2)`, and
/// `h(x) = R(x - 2q) = Π (x - c_i)` with `c_i = 2q - b_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealTransform {
    pub r: IntPolynomial,
    pub h: IntPolynomial,
}

pub fn real_weil_transform(f: &WeilPolynomial) -> Result<RealTransform> {
    if f.weight() != 2 {
        return Err(Error::InvalidArgument(format!(
            "real transform needs weight 2, got {}",
            f.weight()
        )));
    }
    let q = BigInt::from(f.q());
    for root in [-q.clone(), q.clone()] {
        if f.poly().eval(&root).is_zero() {
            return Err(Error::InvalidArgument(format!(
                "f vanishes at {root}; strip the (x -+ q) factors first"
            )));
        }
    }
    let r = f.real_transform();
    let h = r.shift(&(-&q * 2));
    Ok(RealTransform { r, h })
}

/// The trace bound `a_1 <= g(2q - 1)` for polynomials without `±q` roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceBound {
    pub a1: BigInt,
    pub bound: BigInt,
    pub vanishes_at_minus_q: bool,
    pub vanishes_at_q: bool,
}

impl TraceBound {
    pub fn exceeds(&self) -> bool {
        self.a1 > self.bound
    }

    pub fn tight(&self) -> bool {
        self.a1 == self.bound
    }
}

/// Reports `a_1` (coefficient of `x^{2g-1}`) against `g(2q - 1)`. A
/// polynomial above the bound without a root at `±q` is a counterexample
/// and is returned as an inconsistency.
pub fn check_trace_bound(f: &WeilPolynomial) -> Result<TraceBound> {
    if f.weight() != 2 {
        return Err(Error::InvalidArgument("trace bound needs weight 2".into()));
    }
    let g = f.g();
    let q = BigInt::from(f.q());
    let a1 = if g == 0 {
        BigInt::zero()
    } else {
        f.poly().coeff(2 * g - 1)
    };
    let bound = BigInt::from(g) * (&q * 2 - 1);
    let report = TraceBound {
        vanishes_at_minus_q: f.poly().eval(&-q.clone()).is_zero(),
        vanishes_at_q: f.poly().eval(&q).is_zero(),
        a1,
        bound,
    };
    if report.exceeds() && !report.vanishes_at_minus_q && !report.vanishes_at_q {
        return Err(Error::Inconsistency(format!(
            "{} has a1 = {} > {} without a root at +-q",
            f.poly().render("x"),
            report.a1,
            report.bound
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weil2(c: &[i64], q: u64) -> WeilPolynomial {
        let f = IntPolynomial::from_descending(&c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        WeilPolynomial::new(f, q, 2).unwrap()
    }

    #[test]
    fn h_of_degree_one() {
        let t = real_weil_transform(&weil2(&[1, 5, 9], 3)).unwrap();
        assert_eq!(t.r, IntPolynomial::from_i64(&[5, 1]));
        assert_eq!(t.h, IntPolynomial::from_i64(&[-1, 1]));
    }

    #[test]
    fn h_of_degree_two() {
        // x^4 + (4q-3)x^3 + (6q(q-1) + 1)x^2 + q^2(4q-3)x + q^4 with q = 2
        let t = real_weil_transform(&weil2(&[1, 5, 13, 20, 16], 2)).unwrap();
        assert_eq!(t.h, IntPolynomial::from_i64(&[1, -3, 1]));
    }

    #[test]
    fn zero_trace() {
        let t = real_weil_transform(&weil2(&[1, 0, 4], 2)).unwrap();
        assert_eq!(t.r, IntPolynomial::from_i64(&[0, 1]));
        assert_eq!(t.h, IntPolynomial::from_i64(&[-4, 1]));
    }

    #[test]
    fn degenerate_roots_rejected() {
        assert!(real_weil_transform(&weil2(&[1, 6, 9], 3)).is_err());
    }

    #[test]
    fn tight_and_forced() {
        let q = 2i64;
        let base = IntPolynomial::from_i64(&[q * q, 2 * q - 1, 1]);
        let f = WeilPolynomial::new(base.pow(3), 2, 2).unwrap();
        let b = check_trace_bound(&f).unwrap();
        assert_eq!(b.a1, BigInt::from(9));
        assert!(b.tight() && !b.vanishes_at_minus_q);

        let b = check_trace_bound(&weil2(&[1, 6, 9], 3)).unwrap();
        assert!(b.exceeds() && b.vanishes_at_minus_q);
    }
}
