//! Oracles shared by the property tests and the acceptance run. Nothing
//! here calls the library routine it is checking.

#![allow(dead_code)]

use brauer_core::enumeration::{enumerate_classes, ClassFilter};
use brauer_core::exact_math::arith::{lcm, prime_powers_up_to};
use brauer_core::exact_math::{cyclotomic, ratio, scaled_cyclotomic, IntMatrix, IntPolynomial, Rational};
use brauer_core::lattice::{lattice_invariants, possible_omegas};
use brauer_core::surface::{make_isogeny_class, p2_polynomial, s1_bound, s2_range, SurfaceKind};
use brauer_core::weil::{l_polynomial_slopes, strip_cyclotomic_factors};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<usize, String>;

/// `p` if `d` is a power of the prime `p`, else 1, by trial division.
pub fn oracle_lambda(d: u64) -> u64 {
    let p = (2..=d).find(|k| d.is_multiple_of(*k)).unwrap();
    let mut m = d;
    while m.is_multiple_of(p) {
        m /= p;
    }
    if m == 1 { p } else { 1 }
}

pub fn random_class(rng: &mut ChaCha8Rng, qs: &[u64]) -> (u64, i64, i64) {
    loop {
        let q = qs[rng.gen_range(0..qs.len())];
        let b = s1_bound(q);
        let s1 = rng.gen_range(-b..=b);
        if let Some((lo, hi)) = s2_range(q, s1) {
            return (q, s1, rng.gen_range(lo..=hi));
        }
    }
}

fn elementary(n: usize, i: usize, j: usize, c: i64) -> IntMatrix {
    let mut e = IntMatrix::identity(n);
    e.set(i, j, BigInt::from(c));
    e
}

/// Random block sums of cyclotomic companions conjugated by products of
/// elementary matrices: ω and z(β) must equal the product of λ(d).
pub fn unimodular_conjugates(cases: usize, seed: u64) -> Check {
    let pool = [1u64, 2, 3, 4, 6, 5, 8, 10, 12];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let mut mats = Vec::new();
        let (mut omega, mut order) = (1u64, 1u64);
        for _ in 0..rng.gen_range(1..=4) {
            let d = pool[rng.gen_range(0..pool.len())];
            mats.push(IntMatrix::companion(&cyclotomic(d)).unwrap());
            if d > 1 {
                omega *= oracle_lambda(d);
            }
            order = lcm(order, d);
        }
        let f = IntMatrix::block_diagonal(&mats);
        let n = f.rows();
        let (mut u, mut u_inv) = (IntMatrix::identity(n), IntMatrix::identity(n));
        if n > 1 {
            for _ in 0..rng.gen_range(1..=6) {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                let c = rng.gen_range(-3..=3);
                u = &elementary(n, i, j, c) * &u;
                u_inv = &u_inv * &elementary(n, i, j, -c);
            }
        }
        if &u * &u_inv != IntMatrix::identity(n) {
            return Err(format!("case {case}: conjugator is not unimodular"));
        }
        let g = &(&u * &f) * &u_inv;
        let r = lattice_invariants(&g, order as u32).map_err(|e| format!("case {case}: {e}"))?;
        if r.omega != omega || r.z_beta != ratio(1, omega as i64) {
            return Err(format!("case {case}: omega {} z {} against {omega}", r.omega, r.z_beta));
        }
    }
    Ok(cases)
}

/// Power sums of the roots of a monic polynomial (descending coefficients
/// `1, c1, c2, ...`) by Newton's identities.
fn power_sums(c: &[BigInt], k_max: usize) -> Vec<BigInt> {
    let deg = c.len() - 1;
    let mut p = vec![BigInt::from(deg)];
    for k in 1..=k_max {
        let mut s = if k <= deg { -BigInt::from(k) * &c[k] } else { BigInt::zero() };
        for i in 1..k.min(deg + 1) {
            s -= &c[i] * &p[k - i];
        }
        p.push(s);
    }
    p
}

fn elementary_from_power(p: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::one()];
    for k in 1..=n {
        let mut s = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            if i % 2 == 1 { s += term } else { s -= term }
        }
        e.push(s / BigInt::from(k));
    }
    e
}

/// P2 as the characteristic polynomial of the pairwise products of the
/// Frobenius roots, through power sums.
pub fn symmetric_p2(cases: usize, seed: u64) -> Check {
    let qs = prime_powers_up_to(64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let (q, s1, s2) = random_class(&mut rng, &qs);
        let qb = BigInt::from(q);
        let w = [BigInt::one(), BigInt::from(-s1), BigInt::from(s2), -&qb * s1, &qb * &qb];
        let pw = power_sums(&w, 12);
        let pairs: Vec<BigInt> = (0..=6)
            .map(|k| if k == 0 { BigInt::from(6) } else { (&pw[k] * &pw[k] - &pw[2 * k]) / 2 })
            .collect();
        let e = elementary_from_power(&pairs, 6);
        let oracle = IntPolynomial::new(
            e.iter().enumerate().map(|(k, v)| if k % 2 == 1 { -v } else { v.clone() }).collect(),
        );
        let ic = make_isogeny_class(q, s1, s2).map_err(|e| e.to_string())?;
        if p2_polynomial(&ic) != oracle {
            return Err(format!("q = {q}, s1 = {s1}, s2 = {s2}"));
        }
    }
    Ok(cases)
}

/// Slopes `v` of w and `v'` of L_tr come in pairs `v, 1 - v` and `v', 2 - v'`.
pub fn slope_duality(cases: usize, seed: u64) -> Check {
    let qs = prime_powers_up_to(128);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let (q, s1, s2) = random_class(&mut rng, &qs);
        let ic = make_isogeny_class(q, s1, s2).map_err(|e| e.to_string())?;
        let s = ic.slopes.slopes().to_vec();
        let mut dual: Vec<Rational> = s.iter().map(|v| Rational::one() - v).collect();
        dual.sort();
        let dec = strip_cyclotomic_factors(&p2_polynomial(&ic), q).map_err(|e| e.to_string())?;
        let t = l_polynomial_slopes(&dec.ltr, ic.p, ic.n_exp, 2).map_err(|e| e.to_string())?;
        let mut tdual: Vec<Rational> = t.slopes().iter().map(|v| Rational::from_integer(2.into()) - v).collect();
        tdual.sort();
        if s != dual || t.slopes() != &tdual[..] {
            return Err(format!("q = {q}, s1 = {s1}, s2 = {s2}"));
        }
    }
    Ok(cases)
}

/// P2 equals L_tr times the product of the scaled cyclotomic factors.
pub fn decomposition_reconstruction(qs: &[u64]) -> Check {
    let mut n = 0;
    for &q in qs {
        let b = s1_bound(q);
        for s1 in -b..=b {
            let Some((lo, hi)) = s2_range(q, s1) else { continue };
            for s2 in lo..=hi {
                let p2 = p2_polynomial(&make_isogeny_class(q, s1, s2).map_err(|e| e.to_string())?);
                let dec = strip_cyclotomic_factors(&p2, q).map_err(|e| e.to_string())?;
                let mut prod = dec.ltr.clone();
                for (&d, &a) in &dec.parts {
                    prod = &prod * &scaled_cyclotomic(d, &BigInt::from(q)).pow(a);
                }
                if prod != p2 || dec.reconstruct() != p2 {
                    return Err(format!("q = {q}, s1 = {s1}, s2 = {s2}"));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

/// `v_p(ω) (p - 1) <= τ` by factoring ω directly.
pub fn p_part_bound(max_tau: u64) -> Check {
    let mut n = 0;
    for tau in 1..=max_tau {
        for prof in possible_omegas(tau) {
            let mut m = prof.omega;
            let mut p = 2;
            while m > 1 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                if e * (p - 1) > tau {
                    return Err(format!("{} at tau {tau}", prof.render_parts()));
                }
                p += 1;
            }
            let direct: u64 = prof.sorted_parts().iter().map(|&d| oracle_lambda(d)).product();
            if direct != prof.omega || !prof.satisfies_p_part_bound() {
                return Err(format!("{} omega {}", prof.render_parts(), prof.omega));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// L-coefficients, kind, `|Br| |det NS|` and the possible `|Br|`.
pub type Row = (Vec<i64>, SurfaceKind, i64, Vec<i64>);

/// Supersingular classes over `F_p`, transcribed by hand.
pub fn expected_prime_field_rows(p: i64) -> Vec<Row> {
    use SurfaceKind::*;
    let mut rows = vec![
        (vec![1, 0, 2 * p, 0, p * p], Square, 4 * p, vec![1, 4]),
        (vec![1, 0, p, 0, p * p], Simple, 4 * p, vec![1, 4]),
        (vec![1, 0, 0, 0, p * p], Simple, 8 * p, vec![1, 4]),
        (vec![1, 0, -p, 0, p * p], Simple, 12 * p, vec![1, 4]),
        (vec![1, 0, -2 * p, 0, p * p], Simple, 16 * p, vec![1, 4, 16]),
    ];
    let signed = |c: [i64; 5], kind: SurfaceKind, w: i64, br: &[i64]| {
        let flip = [c[0], -c[1], c[2], -c[3], c[4]];
        vec![(c.to_vec(), kind, w, br.to_vec()), (flip.to_vec(), kind, w, br.to_vec())]
    };
    match p {
        5 => rows.extend(signed([1, 5, 15, 25, 25], Simple, 5, &[1])),
        3 => {
            rows.retain(|r| r.0[2] != -p);
            rows.extend(signed([1, 6, 15, 18, 9], Square, 3, &[1]));
            rows.extend(signed([1, 3, 6, 9, 9], Product, 9, &[9]));
            rows.push((vec![1, 0, -3, 0, 9], Product, 36, vec![36]));
        }
        2 => {
            rows.retain(|r| r.0[2] != 0);
            rows.extend(signed([1, 4, 8, 8, 4], Square, 4, &[1, 4]));
            rows.extend(signed([1, 2, 2, 4, 4], Simple, 12, &[1, 4]));
            rows.extend(signed([1, 2, 4, 4, 4], Product, 4, &[4]));
            rows.push((vec![1, 0, 0, 0, 4], Product, 16, vec![16]));
        }
        _ => {}
    }
    rows.sort();
    rows
}

pub fn computed_prime_field_rows(p: u64) -> Vec<Row> {
    let mut rows: Vec<Row> = enumerate_classes(p, ClassFilter::Supersingular)
        .unwrap()
        .into_iter()
        .map(|(ic, r)| {
            let br = r.possible_br().iter().map(|b| i64::try_from(b).unwrap()).collect();
            (ic.l_coeffs().to_vec(), ic.kind.unwrap(), i64::try_from(&r.br_det).unwrap(), br)
        })
        .collect();
    rows.sort();
    rows
}
