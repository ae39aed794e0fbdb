use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::classes::{enumerate_classes_bounded, ClassFilter, DEFAULT_Q_BOUND};
use crate::error::Result;
use crate::exact_math::arith::{is_square, isqrt};
use crate::surface::{BrauerReport, IsogenyClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub s1: i64,
    pub s2: i64,
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub br_det: BigInt,
    pub rho_bar: u64,
    #[serde(serialize_with = "crate::serde_util::opt_bigint")]
    pub resolved_br: Option<BigInt>,
}

impl Witness {
    fn of(ic: &IsogenyClass, r: &BrauerReport) -> Self {
        Witness {
            s1: ic.s1,
            s2: ic.s2,
            br_det: r.br_det.clone(),
            rho_bar: r.rho_bar,
            resolved_br: r.resolved.as_ref().map(|x| x.br.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Falsification {
    pub q: u64,
    pub claim: String,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QScan {
    pub q: u64,
    pub classes: usize,
    pub max_all: Option<Witness>,
    pub max_non_supersingular: Option<Witness>,
    pub max_rho_bar_2: Option<Witness>,
    /// The product `(x^2 + m x + q)(x^2 - (m - 1)x + q)`, `m = ⌊2√q⌋`.
    pub rho_bar_2_extremal: Option<Witness>,
    pub ltr_bound_checked: usize,
    /// Some class has resolved `|Br(A)| = 16q`.
    pub resolved_16q: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub scans: Vec<QScan>,
    pub falsifications: Vec<Falsification>,
    /// Facts worth surfacing that are not bound violations.
    pub observations: Vec<String>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.falsifications.is_empty()
    }
}

/// `x <= (4 sqrt q - 1)^2`, i.e. `8 sqrt q <= 16q + 1 - x`, by squaring.
pub fn within_rho_bar_2_bound(x: &BigInt, q: u64) -> bool {
    let rhs = BigInt::from(16 * q + 1) - x;
    !rhs.is_negative() && BigInt::from(64 * q) <= &rhs * &rhs
}

fn best<'a>(
    rows: impl Iterator<Item = &'a (IsogenyClass, BrauerReport)>,
) -> Option<&'a (IsogenyClass, BrauerReport)> {
    // first maximal row in (s1, s2) order
    rows.fold(None, |acc: Option<&(IsogenyClass, BrauerReport)>, row| match acc {
        Some(a) if a.1.br_det >= row.1.br_det => Some(a),
        _ => Some(row),
    })
}

/// Checks the upper bounds on `|Br(A)| |det NS(A)|` and their extremal
/// classes for every `q` in `qs`. Every violation is collected.
pub fn bound_scan(qs: &[u64]) -> Result<ScanReport> {
    let mut scans = Vec::new();
    let mut falsifications = Vec::new();
    let mut observations = Vec::new();
    for &q in qs {
        let rows = enumerate_classes_bounded(q, ClassFilter::All, DEFAULT_Q_BOUND)?;
        let mut fail = |claim: String, w: Option<Witness>| {
            falsifications.push(Falsification { q, claim, witness: w });
        };
        let qi = q as i64;
        let w = |row: &(IsogenyClass, BrauerReport)| Witness::of(&row.0, &row.1);

        let max_all = best(rows.iter());
        match max_all {
            Some(row) if row.1.br_det == BigInt::from(16 * q) && (row.0.s1, row.0.s2) == (0, -2 * qi) => {}
            other => fail("max br_det is 16q, attained by (x^2 - q)^2".into(), other.map(w)),
        }
        for row in rows.iter().filter(|r| r.1.br_det > BigInt::from(16 * q)) {
            fail("br_det <= 16q".into(), Some(w(row)));
        }

        let max_non_ss = best(rows.iter().filter(|r| !r.0.is_supersingular()));
        let target = BigInt::from(16 * q - 4);
        match max_non_ss {
            Some(row) if row.1.br_det == target => {}
            other => fail("non-supersingular max br_det is 16q - 4".into(), other.map(w)),
        }
        if !rows
            .iter()
            .any(|r| (r.0.s1, r.0.s2) == (0, 1 - 2 * qi) && !r.0.is_supersingular() && r.1.br_det == target)
        {
            fail("x^4 + (1 - 2q)x^2 + q^2 attains 16q - 4".into(), None);
        }

        let rb2: Vec<&(IsogenyClass, BrauerReport)> = rows.iter().filter(|r| r.1.rho_bar == 2).collect();
        for row in rb2.iter().filter(|r| !within_rho_bar_2_bound(&r.1.br_det, q)) {
            fail("rho_bar = 2 implies br_det <= (4 sqrt q - 1)^2".into(), Some(w(row)));
        }
        let max_rb2 = best(rb2.iter().copied());
        let m = i64::try_from(isqrt(&BigInt::from(4 * q))).expect("small");
        let ext = rows.iter().find(|r| (r.0.s1, r.0.s2) == (-1, 2 * qi - m * m + m));
        let ext_br = BigInt::from((2 * m - 1) * (2 * m - 1));
        match ext {
            Some(row) if row.1.resolved.as_ref().is_some_and(|r| r.br == ext_br) => {
                if row.1.rho_bar != 2 {
                    observations.push(format!(
                        "q = {q}: (x^2 + {m}x + {q})(x^2 - {}x + {q}) has |Br| = {ext_br} but rho_bar = {}",
                        m - 1,
                        row.1.rho_bar
                    ));
                }
            }
            other => fail(
                "(x^2 + mx + q)(x^2 - (m - 1)x + q) has |Br| = (2m - 1)^2".into(),
                other.map(w),
            ),
        }

        for row in rows.iter().filter(|r| r.1.ltr_value > r.1.ltr_bound) {
            fail("L_tr(1/q) <= (4 - 1/q)^g".into(), Some(w(row)));
        }
        let mut resolved_16q = false;
        for row in &rows {
            if let Some(res) = &row.1.resolved {
                if !is_square(&res.br) {
                    fail("resolved |Br| is a square".into(), Some(w(row)));
                }
                resolved_16q |= res.br == BigInt::from(16 * q);
            }
        }
        let q_square = is_square(&BigInt::from(q));
        if q_square && !resolved_16q {
            fail("square q has a surface with |Br| = 16q".into(), None);
        }
        if !q_square && resolved_16q {
            fail("non-square q has no resolved |Br| = 16q".into(), None);
        }

        scans.push(QScan {
            q,
            classes: rows.len(),
            max_all: max_all.map(w),
            max_non_supersingular: max_non_ss.map(w),
            max_rho_bar_2: max_rb2.map(w),
            rho_bar_2_extremal: ext.map(w),
            ltr_bound_checked: rows.len(),
            resolved_16q,
        });
    }
    Ok(ScanReport {
        scans,
        falsifications,
        observations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_bar_2_bound_by_squaring() {
        // (4*2 - 1)^2 = 49 for q = 4
        assert!(within_rho_bar_2_bound(&BigInt::from(49), 4));
        assert!(!within_rho_bar_2_bound(&BigInt::from(50), 4));
        // q = 2: (4 sqrt 2 - 1)^2 = 33 - 8 sqrt 2 ≈ 21.69
        assert!(within_rho_bar_2_bound(&BigInt::from(21), 2));
        assert!(!within_rho_bar_2_bound(&BigInt::from(22), 2));
    }

    #[test]
    fn q_four() {
        let r = bound_scan(&[4]).unwrap();
        assert!(r.passed(), "{:?}", r.falsifications);
        let s = &r.scans[0];
        let max = s.max_all.as_ref().unwrap();
        assert_eq!((max.s1, max.s2, max.br_det.clone()), (0, -8, BigInt::from(64)));
        assert_eq!(max.resolved_br, Some(BigInt::from(64)));
        assert_eq!(s.max_non_supersingular.as_ref().unwrap().br_det, BigInt::from(60));
        assert_eq!(s.max_rho_bar_2.as_ref().unwrap().br_det, BigInt::from(49));
        let ext = s.rho_bar_2_extremal.as_ref().unwrap();
        assert_eq!((ext.s1, ext.s2, ext.br_det.clone()), (-1, -4, BigInt::from(49)));
        assert_eq!(ext.rho_bar, 2);
    }

    #[test]
    fn q_seven_extremal_product_is_geometrically_isogenous() {
        let r = bound_scan(&[7]).unwrap();
        assert!(r.passed(), "{:?}", r.falsifications);
        let ext = r.scans[0].rho_bar_2_extremal.as_ref().unwrap();
        assert_eq!((ext.br_det.clone(), ext.rho_bar), (BigInt::from(81), 4));
        assert_eq!(r.observations.len(), 1);
    }
}
