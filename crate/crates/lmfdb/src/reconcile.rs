use std::collections::BTreeMap;

use serde::Serialize;

use brauer_core::surface::{BrauerReport, ExistenceStatus, IsogenyClass, SurfaceKind};

use crate::error::{LmfdbError, Result};
use crate::record::LmfdbRecord;

/// The fields both sides of a reconciliation can supply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub q: u64,
    pub l_coeffs: [i64; 5],
    pub label: Option<String>,
    pub p_rank: u32,
    pub is_simple: bool,
}

impl ClassSummary {
    pub fn from_local(ic: &IsogenyClass) -> Self {
        ClassSummary {
            q: ic.q,
            l_coeffs: ic.l_coeffs(),
            label: None,
            p_rank: ic.p_rank() as u32,
            is_simple: ic.kind == Some(SurfaceKind::Simple),
        }
    }

    pub fn from_record(r: &LmfdbRecord) -> Self {
        let c = &r.l_poly_coeffs;
        ClassSummary {
            q: r.q,
            l_coeffs: [c[0], c[1], c[2], c[3], c[4]],
            label: Some(r.label.clone()),
            p_rank: r.p_rank,
            is_simple: r.is_simple,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub l_coeffs: [i64; 5],
    pub label: Option<String>,
    pub field: &'static str,
    pub left: String,
    pub right: String,
}

/// Join of two class lists on their L-polynomial coefficients. `left` is
/// the local side when built by [`reconcile`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconciliation {
    pub q: u64,
    pub matched: usize,
    pub left_only: Vec<ClassSummary>,
    pub right_only: Vec<ClassSummary>,
    pub mismatches: Vec<Mismatch>,
}

impl Reconciliation {
    pub fn is_empty(&self) -> bool {
        self.left_only.is_empty() && self.right_only.is_empty() && self.mismatches.is_empty()
    }

    pub fn local_only(&self) -> &[ClassSummary] {
        &self.left_only
    }

    pub fn remote_only(&self) -> &[ClassSummary] {
        &self.right_only
    }

    /// The same diff seen from the other side.
    pub fn swapped(&self) -> Self {
        Reconciliation {
            q: self.q,
            matched: self.matched,
            left_only: self.right_only.clone(),
            right_only: self.left_only.clone(),
            mismatches: self
                .mismatches
                .iter()
                .map(|m| Mismatch { left: m.right.clone(), right: m.left.clone(), ..m.clone() })
                .collect(),
        }
    }

    /// Marks the local classes confirmed when nothing differs; returns
    /// whether it did.
    pub fn confirm(&self, local: &mut [IsogenyClass]) -> bool {
        if !self.is_empty() {
            return false;
        }
        for ic in local.iter_mut().filter(|ic| ic.q == self.q) {
            ic.existence_status = ExistenceStatus::Confirmed;
        }
        true
    }
}

pub fn reconcile_summaries(q: u64, left: &[ClassSummary], right: &[ClassSummary]) -> Result<Reconciliation> {
    if let Some(s) = left.iter().chain(right).find(|s| s.q != q) {
        return Err(LmfdbError::QMismatch { expected: q, found: s.q });
    }
    let index = |side: &[ClassSummary]| -> Result<BTreeMap<[i64; 5], ClassSummary>> {
        let mut m = BTreeMap::new();
        for s in side {
            if m.insert(s.l_coeffs, s.clone()).is_some() {
                return Err(LmfdbError::InvalidRecord(format!("duplicate L-polynomial {:?}", s.l_coeffs)));
            }
        }
        Ok(m)
    };
    let l = index(left)?;
    let r = index(right)?;
    let mut out = Reconciliation { q, matched: 0, left_only: vec![], right_only: vec![], mismatches: vec![] };
    for (k, a) in &l {
        let Some(b) = r.get(k) else {
            out.left_only.push(a.clone());
            continue;
        };
        out.matched += 1;
        let label = a.label.clone().or_else(|| b.label.clone());
        if a.p_rank != b.p_rank {
            out.mismatches.push(Mismatch {
                l_coeffs: *k,
                label: label.clone(),
                field: "p_rank",
                left: a.p_rank.to_string(),
                right: b.p_rank.to_string(),
            });
        }
        if a.is_simple != b.is_simple {
            out.mismatches.push(Mismatch {
                l_coeffs: *k,
                label,
                field: "is_simple",
                left: a.is_simple.to_string(),
                right: b.is_simple.to_string(),
            });
        }
    }
    out.right_only = r.iter().filter(|(k, _)| !l.contains_key(*k)).map(|(_, b)| b.clone()).collect();
    Ok(out)
}

/// Compares locally enumerated classes with database records for one `q`.
/// Only classes the existence filter keeps should be passed as `local`.
pub fn reconcile(q: u64, local: &[(IsogenyClass, BrauerReport)], remote: &[LmfdbRecord]) -> Result<Reconciliation> {
    let left: Vec<_> = local.iter().map(|(ic, _)| ClassSummary::from_local(ic)).collect();
    let right: Vec<_> = remote.iter().map(ClassSummary::from_record).collect();
    reconcile_summaries(q, &left, &right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(q: u64, a1: i64, a2: i64, p_rank: u32, simple: bool) -> ClassSummary {
        let qi = q as i64;
        ClassSummary { q, l_coeffs: [1, a1, a2, qi * a1, qi * qi], label: None, p_rank, is_simple: simple }
    }

    #[test]
    fn diff_and_symmetry() {
        let a = vec![s(3, 0, 0, 0, true), s(3, 0, 3, 0, true), s(3, 1, 2, 2, true)];
        let b = vec![s(3, 0, 0, 0, true), s(3, 0, 3, 0, false), s(3, 2, 2, 2, true)];
        let ab = reconcile_summaries(3, &a, &b).unwrap();
        assert_eq!(ab.matched, 2);
        assert_eq!((ab.left_only.len(), ab.right_only.len(), ab.mismatches.len()), (1, 1, 1));
        assert_eq!(reconcile_summaries(3, &b, &a).unwrap(), ab.swapped());
        assert!(reconcile_summaries(3, &a, &a).unwrap().is_empty());
        assert!(matches!(
            reconcile_summaries(5, &a, &b),
            Err(LmfdbError::QMismatch { expected: 5, found: 3 })
        ));
    }
}
