//! Randomised checks against oracles written independently of the library.

use std::collections::BTreeMap;

use brauer_core::exact_math::{count_real_roots_in_interval, scaled_cyclotomic, IntPolynomial, Rational};
use brauer_core::surface::{compute_report, make_isogeny_class};
use brauer_core::weil::{check_trace_bound, is_weil_polynomial, strip_cyclotomic_factors, WeilPolynomial};
use num_bigint::BigInt;
use proptest::prelude::*;

mod support;

#[test]
fn unimodular_conjugates_agree_on_omega() {
    assert_eq!(support::unimodular_conjugates(1000, 0x5eed), Ok(1000));
}

#[test]
fn second_cohomology_from_symmetric_functions() {
    assert_eq!(support::symmetric_p2(500, 7), Ok(500));
}

#[test]
fn slopes_are_self_dual() {
    assert_eq!(support::slope_duality(300, 11), Ok(300));
}

#[test]
fn decomposition_reconstructs_p2() {
    support::decomposition_reconstruction(&[2, 3, 4, 5, 8, 9]).unwrap();
}

#[test]
fn profiles_satisfy_p_part_bound() {
    support::p_part_bound(8).unwrap();
}

#[test]
fn ltr_values_below_bound() {
    for q in [2u64, 3, 4, 5, 7] {
        for (s1, s2) in brauer_core::enumeration::weil_window(q, false).unwrap() {
            let ic = make_isogeny_class(q, s1, s2).unwrap();
            let r = compute_report(&ic).unwrap();
            assert!(r.ltr_value <= r.ltr_bound, "q = {q}, ({s1}, {s2})");
        }
    }
}

#[test]
fn trace_bound_small_box() {
    for q in [2i64, 3] {
        let mut tight = 0;
        for a1 in -4 * q..=4 * q {
            for a2 in -6 * q * q..=6 * q * q {
                let f = IntPolynomial::from_i64(&[q.pow(4), q * q * a1, a2, a1, 1]);
                if !is_weil_polynomial(&f, q as u64, 2).unwrap().valid {
                    continue;
                }
                let t = check_trace_bound(&WeilPolynomial::new(f, q as u64, 2).unwrap()).unwrap();
                tight += t.tight() as usize;
            }
        }
        assert!(tight > 0);
    }
}

fn poly_with_roots(roots: &[i64]) -> IntPolynomial {
    let mut f = IntPolynomial::from_i64(&[1, 0, 1]);
    for &r in roots {
        f = &f * &IntPolynomial::from_i64(&[-r, 1]);
    }
    f
}

proptest! {
    #[test]
    fn sturm_counts_known_roots(roots in proptest::collection::vec(-6i64..=6, 0..6), lo in -7i64..=7, len in 0i64..=8) {
        let f = poly_with_roots(&roots);
        let hi = lo + len;
        let c = count_real_roots_in_interval(&f, &Rational::from_integer(lo.into()), &Rational::from_integer(hi.into())).unwrap();
        let mut distinct: Vec<i64> = roots.iter().copied().filter(|r| lo <= *r && *r <= hi).collect();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(c.distinct, distinct.len());
        prop_assert_eq!(c.lo_is_root, roots.contains(&lo));
        prop_assert_eq!(c.hi_is_root, roots.contains(&hi));
    }

    #[test]
    fn sturm_counts_are_additive(roots in proptest::collection::vec(-20i64..=20, 1..5), a in -25i64..0, b in 0i64..5, c in 5i64..25) {
        // half-integer shift keeps rational interior points off the roots
        let f = &poly_with_roots(&roots) * &IntPolynomial::from_i64(&[1, -2]);
        let r = |x: i64| Rational::from_integer(x.into());
        let whole = count_real_roots_in_interval(&f, &r(a), &r(c)).unwrap();
        let left = count_real_roots_in_interval(&f, &r(a), &r(b)).unwrap();
        let right = count_real_roots_in_interval(&f, &r(b), &r(c)).unwrap();
        prop_assert_eq!(whole.distinct, left.distinct + right.distinct - left.hi_is_root as usize);
    }

    #[test]
    fn cyclotomic_blocks_have_expected_parts(ds in proptest::collection::vec(prop_oneof![Just(2u64), Just(3), Just(4), Just(5), Just(6), Just(7), Just(9)], 1..4), q in prop_oneof![Just(2u64), Just(3), Just(5)]) {
        let mut p = IntPolynomial::one();
        let mut want = BTreeMap::new();
        for &d in &ds {
            p = &p * &scaled_cyclotomic(d, &BigInt::from(q));
            *want.entry(d).or_insert(0u32) += 1;
        }
        let dec = strip_cyclotomic_factors(&p, q).unwrap();
        prop_assert_eq!(dec.parts, want);
        prop_assert_eq!(dec.ltr, IntPolynomial::one());
    }
}
