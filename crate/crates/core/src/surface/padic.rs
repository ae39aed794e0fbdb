//! Existence of p-adic roots, by Hensel lifting with refinement at
//! singular residues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::exact_math::arith::pow;
use crate::exact_math::IntPolynomial;

const MAX_DEPTH: u32 = 64;

/// Whether the square-free polynomial `f` has a root in `Q_p` of valuation
/// exactly `k`.
pub fn has_root_of_valuation(f: &IntPolynomial, p: u64, k: u32) -> bool {
    let pb = BigInt::from(p);
    let scaled = f.scale_variable(&pow(&pb, k)).primitive_part();
    (1..p).any(|r| {
        let r = BigInt::from(r);
        is_zero_mod(&scaled.eval(&r), &pb) && lifts(&scaled, &r, &pb, MAX_DEPTH)
    })
}

fn is_zero_mod(x: &BigInt, p: &BigInt) -> bool {
    x.mod_floor(p).is_zero()
}

/// `f(r) = 0 mod p`; does `r` refine to a root in `Z_p`?
fn lifts(f: &IntPolynomial, r: &BigInt, p: &BigInt, depth: u32) -> bool {
    if !is_zero_mod(&f.derivative().eval(r), p) {
        return true;
    }
    if depth == 0 {
        return false;
    }
    // g(y) = f(r + p y) / content
    let g = f.shift(r).scale_variable(p).primitive_part();
    if g.degree().unwrap_or(0) == 0 {
        return false;
    }
    let pu = u64::try_from(p).unwrap();
    (0..pu).any(|s| {
        let s = BigInt::from(s);
        is_zero_mod(&g.eval(&s), p) && lifts(&g, &s, p, depth - 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots() {
        // x^2 + 1 has roots in Q_5 but not Q_3
        let f = IntPolynomial::from_i64(&[1, 0, 1]);
        assert!(has_root_of_valuation(&f, 5, 0));
        assert!(!has_root_of_valuation(&f, 3, 0));
        // x^2 - 17 has a root in Q_2 (17 = 1 mod 8), x^2 - 5 does not
        assert!(has_root_of_valuation(&IntPolynomial::from_i64(&[-17, 0, 1]), 2, 0));
        assert!(!has_root_of_valuation(&IntPolynomial::from_i64(&[-5, 0, 1]), 2, 0));
        // x^2 + 7 over Q_2: -7 = 1 mod 8
        assert!(has_root_of_valuation(&IntPolynomial::from_i64(&[7, 0, 1]), 2, 0));
    }

    #[test]
    fn valuation_is_respected() {
        // x^2 + 25 over Q_5: roots 5i of valuation 1
        let f = IntPolynomial::from_i64(&[25, 0, 1]);
        assert!(has_root_of_valuation(&f, 5, 1));
        assert!(!has_root_of_valuation(&f, 5, 0));
        // x^2 + 3x + 9 over Q_3 (n = 2): roots 3 zeta_3, zeta_3 not in Q_3
        assert!(!has_root_of_valuation(&IntPolynomial::from_i64(&[9, 3, 1]), 3, 1));
        // x^2 + 7x + 49 over Q_7: zeta_3 in Q_7
        assert!(has_root_of_valuation(&IntPolynomial::from_i64(&[49, 7, 1]), 7, 1));
    }
}
