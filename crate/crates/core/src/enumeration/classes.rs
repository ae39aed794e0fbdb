use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_math::arith::{prime_power, valuation};
use crate::surface::{compute_report, make_isogeny_class, s1_bound, s2_range, BrauerReport, IsogenyClass};
use num_bigint::BigInt;

/// Largest `q` accepted by the enumerators unless a bound is given.
pub const DEFAULT_Q_BOUND: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassFilter {
    All,
    Supersingular,
    PRank(usize),
    RhoBar(u64),
}

impl ClassFilter {
    fn keeps(&self, ic: &IsogenyClass, report: &BrauerReport) -> bool {
        match *self {
            ClassFilter::All => true,
            ClassFilter::Supersingular => ic.is_supersingular(),
            ClassFilter::PRank(r) => ic.p_rank() == r,
            ClassFilter::RhoBar(v) => report.rho_bar == v,
        }
    }
}

fn check_q(q: u64, bound: u64) -> Result<(u64, u32)> {
    if q > bound {
        return Err(Error::OutOfBound(format!("q = {q} exceeds the bound {bound}")));
    }
    prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a prime power")))
}

/// Every `(s1, s2)` in the Weil window for `q`, ordered by `s1` then `s2`.
/// With `supersingular_only`, only pairs with `v_p(s1) >= n/2` and
/// `v_p(s2) >= n` are produced; those are exactly the pairs whose Newton
/// polygon is a single segment of slope `1/2`.
pub fn weil_window(q: u64, supersingular_only: bool) -> Result<Vec<(i64, i64)>> {
    let (p, n) = check_q(q, u64::MAX)?;
    let keep = |v: i64, need: u32| valuation(&BigInt::from(v), p).is_none_or(|k| k >= need);
    let b = s1_bound(q);
    let mut out = Vec::new();
    for s1 in -b..=b {
        if supersingular_only && !keep(s1, n.div_ceil(2)) {
            continue;
        }
        let Some((lo, hi)) = s2_range(q, s1) else { continue };
        out.extend(
            (lo..=hi)
                .filter(|&s2| !supersingular_only || keep(s2, n))
                .map(|s2| (s1, s2)),
        );
    }
    Ok(out)
}

/// All Weil classes for `q`, including those no abelian surface realises.
pub fn all_weil_classes(q: u64, supersingular_only: bool) -> Result<Vec<IsogenyClass>> {
    let pairs = weil_window(q, supersingular_only)?;
    pairs
        .par_iter()
        .map(|&(s1, s2)| make_isogeny_class(q, s1, s2))
        .collect()
}

pub fn enumerate_classes(q: u64, filter: ClassFilter) -> Result<Vec<(IsogenyClass, BrauerReport)>> {
    enumerate_classes_bounded(q, filter, DEFAULT_Q_BOUND)
}

/// Classes that pass the existence filter, with their reports, in `(s1, s2)`
/// order.
pub fn enumerate_classes_bounded(
    q: u64,
    filter: ClassFilter,
    bound: u64,
) -> Result<Vec<(IsogenyClass, BrauerReport)>> {
    check_q(q, bound)?;
    let pairs = weil_window(q, filter == ClassFilter::Supersingular)?;
    let rows: Vec<Option<(IsogenyClass, BrauerReport)>> = pairs
        .par_iter()
        .map(|&(s1, s2)| -> Result<_> {
            let ic = make_isogeny_class(q, s1, s2)?;
            if !ic.exists() {
                return Ok(None);
            }
            let report = compute_report(&ic)?;
            Ok(filter.keeps(&ic, &report).then_some((ic, report)))
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}
