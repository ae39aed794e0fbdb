use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_math::arith::{factorize, lcm, totient};
use crate::exact_math::cyclotomic_at_one;

/// A multiset of cyclotomic indices `d >= 2` with its invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaProfile {
    pub parts: BTreeMap<u64, u32>,
    pub tau: u64,
    pub n: u64,
    pub omega: u64,
}

impl OmegaProfile {
    /// The indices with repetition, ascending, e.g. `[2, 2, 3]`.
    pub fn sorted_parts(&self) -> Vec<u64> {
        self.parts
            .iter()
            .flat_map(|(&d, &a)| std::iter::repeat_n(d, a as usize))
            .collect()
    }

    /// `(2,2,3)`-style rendering; the empty profile renders as `()`.
    pub fn render_parts(&self) -> String {
        let s: Vec<String> = self.sorted_parts().iter().map(u64::to_string).collect();
        format!("({})", s.join(","))
    }

    /// `v_p(ω) <= τ/(p-1)` for every prime `p`.
    pub fn satisfies_p_part_bound(&self) -> bool {
        factorize(self.omega)
            .iter()
            .all(|&(p, e)| e as u64 * (p - 1) <= self.tau)
    }
}

/// `ω = Π λ(d)^{a_d}`, `τ = Σ a_d φ(d)`, `n = lcm(d)`.
pub fn omega_from_decomposition(parts: &BTreeMap<u64, u32>) -> Result<OmegaProfile> {
    let mut tau = 0;
    let mut n = 1;
    let mut omega: u64 = 1;
    let mut kept = BTreeMap::new();
    for (&d, &a) in parts {
        if d < 2 {
            return Err(Error::InvalidArgument(
                "index 1 is the trivial representation and cannot appear".into(),
            ));
        }
        if a == 0 {
            continue;
        }
        let lambda = cyclotomic_at_one(d)?;
        tau += a as u64 * totient(d);
        n = lcm(n, d);
        omega = omega
            .checked_mul(lambda.checked_pow(a).ok_or_else(overflow)?)
            .ok_or_else(overflow)?;
        kept.insert(d, a);
    }
    Ok(OmegaProfile {
        parts: kept,
        tau,
        n,
        omega,
    })
}

fn overflow() -> Error {
    Error::OutOfBound("omega exceeds 64 bits".into())
}

/// Every multiset of indices `d >= 2` with `Σ a_d φ(d) = tau`, ordered by
/// the largest `φ(d)` among the parts and then lexicographically on the
/// ascending list of indices.
pub fn possible_omegas(tau: u64) -> Vec<OmegaProfile> {
    // phi(d) >= sqrt(d/2) bounds the candidate indices.
    let candidates: Vec<(u64, u64)> = (2..=(2 * tau * tau).max(2))
        .map(|d| (d, totient(d)))
        .filter(|&(_, phi)| phi <= tau)
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(&candidates, 0, tau, &mut current, &mut out);
    let mut profiles: Vec<OmegaProfile> = out
        .into_iter()
        .map(|list: Vec<u64>| {
            let mut parts = BTreeMap::new();
            for d in list {
                *parts.entry(d).or_insert(0) += 1;
            }
            omega_from_decomposition(&parts).expect("indices are at least 2")
        })
        .collect();
    profiles.sort_by_key(|p| (p.parts.keys().map(|&d| totient(d)).max().unwrap_or(0), p.sorted_parts()));
    profiles.dedup();
    profiles
}

fn fill(cands: &[(u64, u64)], start: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for (i, &(d, phi)) in cands.iter().enumerate().skip(start) {
        if phi <= left {
            cur.push(d);
            fill(cands, i, left - phi, cur, out);
            cur.pop();
        }
    }
}
