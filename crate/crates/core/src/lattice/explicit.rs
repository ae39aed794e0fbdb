use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::omega::{omega_from_decomposition, OmegaProfile};
use crate::error::{Error, Result};
use crate::exact_math::arith::divisors;
use crate::exact_math::{cyclotomic, IntMatrix, IntPolynomial, Rational};

/// Invariants of a finite-order automorphism `F` of a lattice `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    pub rank: usize,
    pub tau: u64,
    pub omega: u64,
    /// `|ker β| / |coker β|` for `β: N^Γ -> N_Γ`.
    pub z_beta: Rational,
    /// Rank of the fixed lattice `N^Γ`.
    pub invariant_rank: usize,
    /// Invariant factors (> 1) of the torsion of `N_Γ`.
    pub coinvariant_torsion: Vec<BigInt>,
    pub profile: OmegaProfile,
    pub charpoly: IntPolynomial,
}

/// ω along three routes: the characteristic polynomial with the eigenvalue-1
/// part removed, its cyclotomic factorisation, and `1/z(β)` from explicit
/// invariants and coinvariants. All three must agree.
pub fn lattice_invariants(f: &IntMatrix, order: u32) -> Result<LatticeReport> {
    if !f.is_square() {
        return Err(Error::InvalidArgument("F must be square".into()));
    }
    if order == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    let n = f.rows();
    if f.pow(order) != IntMatrix::identity(n) {
        return Err(Error::InvalidArgument(format!("F^{order} is not the identity")));
    }

    let charpoly = f.characteristic_polynomial();

    // (a) |χ(x)/(x-1)^m| at x = 1
    let x_minus_1 = cyclotomic(1);
    let mut rest = charpoly.clone();
    let mut m = 0;
    while let Some(q) = rest.div_exact(&x_minus_1) {
        rest = q;
        m += 1;
    }
    let omega_a = rest.eval(&BigInt::one()).abs();

    // (b) factor χ into Φ_d, d | order
    let mut parts = BTreeMap::new();
    let mut rest = charpoly.clone();
    for d in divisors(order as u64) {
        let phi = cyclotomic(d);
        while let Some(q) = rest.div_exact(&phi) {
            rest = q;
            *parts.entry(d).or_insert(0u32) += 1;
        }
    }
    if rest != IntPolynomial::one() {
        return Err(Error::Inconsistency(format!(
            "characteristic polynomial {} is not a product of cyclotomics",
            charpoly.render("x")
        )));
    }
    let a1 = parts.remove(&1).unwrap_or(0);
    let profile = omega_from_decomposition(&parts)?;

    // (c) explicit β: U maps N onto coordinates where N_Γ is
    // ⊕ Z/d_i ⊕ Z^m; the image of N^Γ plus the relations d_i e_i present
    // coker β.
    let fm1 = f - &IntMatrix::identity(n);
    let snf = fm1.smith_normal_form();
    let kernel = snf.kernel_basis();
    let invariant_rank = kernel.len();
    let mut present = IntMatrix::zeros(n, n);
    for (i, d) in snf.factors.iter().enumerate() {
        present.set(i, i, d.clone());
    }
    for (j, k) in kernel.iter().enumerate() {
        let y = snf.u.apply(k);
        for (i, yi) in y.into_iter().enumerate() {
            present.set(i, snf.rank + j, yi);
        }
    }
    let p = present.smith_normal_form();
    if p.rank < n {
        return Err(Error::Inconsistency(
            "β has infinite cokernel for a finite-order action".into(),
        ));
    }
    let coker_beta = p.torsion_order();
    let z_beta = Rational::new(BigInt::one(), coker_beta.clone());

    let checks = [
        ("characteristic polynomial", omega_a.clone()),
        ("cyclotomic factorisation", BigInt::from(profile.omega)),
        ("explicit coinvariants", coker_beta),
    ];
    if checks.iter().any(|(_, w)| *w != checks[0].1) || m != a1 as usize || m != invariant_rank {
        return Err(Error::Inconsistency(format!(
            "omega routes disagree: {:?}; eigenvalue-1 multiplicity {m}, a_1 {a1}, fixed rank {invariant_rank}",
            checks
        )));
    }
    if omega_a.is_zero() {
        return Err(Error::Inconsistency("omega vanished".into()));
    }

    Ok(LatticeReport {
        rank: n,
        tau: profile.tau,
        omega: profile.omega,
        z_beta,
        invariant_rank,
        coinvariant_torsion: snf.torsion_factors(),
        profile,
        charpoly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::ratio;

    #[test]
    fn sign_lattice() {
        let r = lattice_invariants(&IntMatrix::diagonal(&[1, -1]), 2).unwrap();
        assert_eq!(r.omega, 2);
        assert_eq!(r.z_beta, ratio(1, 2));
        assert_eq!(r.coinvariant_torsion, vec![BigInt::from(2)]);
        assert_eq!(r.tau, 1);
    }

    #[test]
    fn swap_lattice() {
        let f = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let r = lattice_invariants(&f, 2).unwrap();
        assert_eq!(r.omega, 2);
        assert_eq!(r.z_beta, ratio(1, 2));
        assert!(r.coinvariant_torsion.is_empty());
    }

    #[test]
    fn trivial_action() {
        let r = lattice_invariants(&IntMatrix::identity(3), 1).unwrap();
        assert_eq!((r.omega, r.tau), (1, 0));
        assert_eq!(r.z_beta, ratio(1, 1));
        assert_eq!(r.invariant_rank, 3);
    }

    #[test]
    fn order_is_checked() {
        let f = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        assert!(lattice_invariants(&f, 2).is_err());
        let r = lattice_invariants(&f, 4).unwrap();
        assert_eq!((r.omega, r.tau, r.profile.n), (2, 2, 4));
        assert!(lattice_invariants(&IntMatrix::from_rows(&[vec![1, 2]]), 1).is_err());
    }

    #[test]
    fn mixed_blocks() {
        // Φ_2 ⊕ Φ_2 ⊕ Φ_3 ⊕ 1
        let blocks = [
            IntMatrix::diagonal(&[-1, -1, 1]),
            IntMatrix::companion(&cyclotomic(3)).unwrap(),
        ];
        let r = lattice_invariants(&IntMatrix::block_diagonal(&blocks), 6).unwrap();
        assert_eq!((r.omega, r.tau, r.profile.n), (12, 4, 6));
        assert_eq!(r.z_beta, ratio(1, 12));
    }
}
