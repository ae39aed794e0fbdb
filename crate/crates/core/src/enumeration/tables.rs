use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::classes::{all_weil_classes, enumerate_classes, ClassFilter};
use crate::error::{Error, Result};
use crate::exact_math::arith::{is_square, isqrt};
use crate::exact_math::cyclotomic::cyclotomic_coeffs_small;
use crate::lattice::possible_omegas;
use crate::surface::{compute_report, BrauerReport, IsogenyClass, SurfaceKind};

/// Square `q` for which the supersingular catalog is counted by default.
pub const SQUARE_COUNT_QS: [u64; 6] = [4, 9, 25, 49, 121, 169];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableId {
    SsCatalog,
    PrimeField(u64),
    OmegaCatalog(u64),
    SquareCounts,
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableId::SsCatalog => write!(f, "ss-catalog"),
            TableId::PrimeField(p) => write!(f, "prime-field({p})"),
            TableId::OmegaCatalog(t) => write!(f, "omega-catalog({t})"),
            TableId::SquareCounts => write!(f, "square-counts"),
        }
    }
}

impl FromStr for TableId {
    type Err = Error;

    /// Accepts `ss-catalog`, `square-counts`, `prime-field(7)`,
    /// `prime-field:7`, `omega-catalog(4)` and `omega-catalog:4`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::InvalidArgument(format!("unknown table id {s:?}"));
        let s_trim = s.trim();
        match s_trim {
            "ss-catalog" => return Ok(TableId::SsCatalog),
            "square-counts" => return Ok(TableId::SquareCounts),
            _ => {}
        }
        let (name, arg) = if let Some((n, rest)) = s_trim.split_once('(') {
            (n, rest.strip_suffix(')').ok_or_else(unknown)?)
        } else {
            s_trim.split_once(':').ok_or_else(unknown)?
        };
        let arg: u64 = arg.trim().parse().map_err(|_| unknown())?;
        match name {
            "prime-field" => Ok(TableId::PrimeField(arg)),
            "omega-catalog" => Ok(TableId::OmegaCatalog(arg)),
            _ => Err(unknown()),
        }
    }
}

/// One line of a regenerated table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub table_id: String,
    pub columns: Vec<(String, String)>,
    pub provenance: String,
}

impl TableRow {
    fn new(id: TableId, cols: &[(&str, String)], provenance: impl Into<String>) -> Self {
        TableRow {
            table_id: id.to_string(),
            columns: cols.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            provenance: provenance.into(),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.columns.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// `table_id`, the column values and the provenance, tab separated.
    pub fn to_tsv(&self) -> String {
        let mut fields = vec![self.table_id.as_str()];
        fields.extend(self.columns.iter().map(|(_, v)| v.as_str()));
        fields.push(&self.provenance);
        fields.join("\t")
    }
}

/// Header line matching [`TableRow::to_tsv`].
pub fn tsv_header(rows: &[TableRow]) -> Option<String> {
    let first = rows.first()?;
    let mut fields = vec!["table_id"];
    fields.extend(first.columns.iter().map(|(k, _)| k.as_str()));
    fields.push("provenance");
    Some(fields.join("\t"))
}

/// Header plus rows, newline terminated.
pub fn render_tsv(rows: &[TableRow]) -> String {
    let mut out = String::new();
    if let Some(h) = tsv_header(rows) {
        out.push_str(&h);
        out.push('\n');
    }
    for r in rows {
        out.push_str(&r.to_tsv());
        out.push('\n');
    }
    out
}

pub fn reproduce_table(id: TableId) -> Result<Vec<TableRow>> {
    match id {
        TableId::OmegaCatalog(tau) => omega_catalog(tau),
        TableId::SsCatalog => ss_catalog(),
        TableId::PrimeField(p) => prime_field(p),
        TableId::SquareCounts => square_counts(&SQUARE_COUNT_QS),
    }
}

fn omega_catalog(tau: u64) -> Result<Vec<TableRow>> {
    if tau == 0 || tau > 12 {
        return Err(Error::OutOfBound(format!("tau = {tau} outside 1..=12")));
    }
    let id = TableId::OmegaCatalog(tau);
    Ok(possible_omegas(tau)
        .iter()
        .map(|p| {
            TableRow::new(
                id,
                &[
                    ("tau", tau.to_string()),
                    ("parts", p.render_parts()),
                    ("n", p.n.to_string()),
                    ("omega", p.omega.to_string()),
                ],
                "omega-catalog/cyclotomic-profiles",
            )
        })
        .collect())
}

/// A supersingular family: `s1 = c sqrt(m q)`, `s2 = d q`. `m = 0` marks the
/// classes with `s1 = 0` that exist in every characteristic.
struct Family {
    m: u64,
    rep_q: u64,
}

const FAMILIES: [Family; 7] = [
    Family { m: 0, rep_q: 7 },
    Family { m: 1, rep_q: 49 },
    Family { m: 2, rep_q: 2 },
    Family { m: 3, rep_q: 3 },
    Family { m: 5, rep_q: 5 },
    Family { m: 7, rep_q: 7 },
    Family { m: 11, rep_q: 11 },
];

fn family_label(m: u64) -> String {
    match m {
        0 => "all q".into(),
        1 => "sqrt(q) in Z".into(),
        m => format!("sqrt({m}q) in Z"),
    }
}

fn root_symbol(m: u64) -> String {
    if m == 1 { "sqrt(q)".into() } else { format!("sqrt({m}q)") }
}

/// `c * sym` rendered as a signed term of `x^k`.
fn push_term(terms: &mut Vec<(bool, String)>, c: &BigInt, sym: &str, var: &str) {
    if c.is_zero() {
        return;
    }
    let mag = c.abs();
    let mut body = if mag == BigInt::from(1) && !sym.is_empty() {
        String::new()
    } else {
        mag.to_string()
    };
    if !sym.is_empty() {
        if !body.is_empty() {
            body.push('*');
        }
        body.push_str(sym);
    }
    if !var.is_empty() {
        if !body.is_empty() {
            body.push('*');
        }
        body.push_str(var);
    }
    terms.push((c.is_negative(), body));
}

fn join_terms(terms: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    if out.is_empty() { "0".into() } else { out }
}

/// `w(x)` with `s1 = c sqrt(mq)`, `s2 = d q`, in terms of the symbol `q`.
fn symbolic_weil(c: &BigInt, d: &BigInt, m: u64) -> String {
    let r = root_symbol(m);
    let mut terms = vec![(false, "x^4".to_string())];
    push_term(&mut terms, &-c, &r, "x^3");
    push_term(&mut terms, d, "q", "x^2");
    push_term(&mut terms, &-c, &format!("q*{r}"), "x");
    terms.push((false, "q^2".into()));
    join_terms(&terms)
}

/// `C_d(t)` with the symbol `q`, e.g. `(1 - q^2t^2 + q^4t^4)`.
fn symbolic_scaled_cyclotomic(d: u64) -> String {
    let coeffs = if d == 1 { vec![-1, 1] } else { cyclotomic_coeffs_small(d) };
    // rev(Φ_d)(qt): the t^k coefficient is the x^(deg-k) coefficient of Φ_d
    let deg = coeffs.len() - 1;
    let terms: Vec<(bool, String)> = (0..=deg)
        .filter(|&k| coeffs[deg - k] != 0)
        .map(|k| {
            let c = coeffs[deg - k];
            let mono = match k {
                0 => String::new(),
                1 => "qt".to_string(),
                k => format!("q^{k}t^{k}"),
            };
            let body = match (c.abs(), mono.is_empty()) {
                (1, true) => "1".to_string(),
                (1, false) => mono,
                (m, _) => format!("{m}{mono}"),
            };
            (c < 0, body)
        })
        .collect();
    format!("({})", join_terms(&terms))
}

fn symbolic_p2_over(parts: &BTreeMap<u64, u32>) -> String {
    let mut out = String::new();
    for (&d, &a) in parts {
        let a = if d == 1 { a.saturating_sub(2) } else { a };
        if a == 0 {
            continue;
        }
        out.push_str(&symbolic_scaled_cyclotomic(d));
        if a > 1 {
            out.push_str(&format!("^{a}"));
        }
    }
    if out.is_empty() { "1".into() } else { out }
}

/// `(c, d)` with `s1 = c sqrt(mq)` and `s2 = d q`, if the class lies in the
/// family.
fn family_coords(ic: &IsogenyClass, m: u64) -> Option<(BigInt, BigInt)> {
    let q = BigInt::from(ic.q);
    let s2 = BigInt::from(ic.s2);
    if !(&s2 % &q).is_zero() {
        return None;
    }
    let d = &s2 / &q;
    if m == 0 {
        return (ic.s1 == 0).then_some((BigInt::zero(), d));
    }
    if ic.s1 == 0 {
        return None;
    }
    let mq = BigInt::from(m) * &q;
    if !is_square(&mq) {
        return None;
    }
    let r = isqrt(&mq);
    let s1 = BigInt::from(ic.s1);
    (&s1 % &r).is_zero().then(|| (&s1 / &r, d))
}

fn ss_catalog() -> Result<Vec<TableRow>> {
    let id = TableId::SsCatalog;
    let mut rows = Vec::new();
    for fam in &FAMILIES {
        let mut entries: Vec<(u64, u64, BigInt, BigInt, BrauerReport)> = Vec::new();
        for ic in all_weil_classes(fam.rep_q, true)? {
            let Some((c, d)) = family_coords(&ic, fam.m) else { continue };
            let report = compute_report(&ic)?;
            if report.ltr.degree() != Some(0) {
                return Err(Error::Inconsistency(format!(
                    "supersingular class ({}, {}) has a transcendental part",
                    ic.s1, ic.s2
                )));
            }
            entries.push((report.omega, report.tau, c, d, report));
        }
        entries.sort_by(|a, b| (a.0, a.1, &a.2, &a.3).cmp(&(b.0, b.1, &b.2, &b.3)));
        for (omega, tau, c, d, report) in entries {
            rows.push(TableRow::new(
                id,
                &[
                    ("omega", omega.to_string()),
                    ("tau", tau.to_string()),
                    ("p2_over_1_minus_qt_sq", symbolic_p2_over(&report.parts)),
                    ("weil", symbolic_weil(&c, &d, fam.m)),
                    ("condition", family_label(fam.m)),
                ],
                format!("supersingular-catalog/{}", if fam.m == 0 { "generic" } else { "sporadic" }),
            ));
        }
    }
    Ok(rows)
}

/// The decomposition a class with `s1 = 0` has for large `p`.
fn generic_kind(ic: &IsogenyClass) -> SurfaceKind {
    if ic.s2 == 2 * ic.q as i64 { SurfaceKind::Square } else { SurfaceKind::Simple }
}

fn render_brauer(report: &BrauerReport) -> String {
    let v: Vec<String> = report.possible_br().iter().map(BigInt::to_string).collect();
    v.join(",")
}

fn prime_field(p: u64) -> Result<Vec<TableRow>> {
    let id = TableId::PrimeField(p);
    if !crate::exact_math::arith::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let rows = enumerate_classes(p, ClassFilter::Supersingular)?;
    Ok(rows
        .iter()
        .map(|(ic, report)| {
            let kind = ic.kind.expect("enumerated classes exist");
            let tag = if ic.s1 != 0 {
                "prime-field/additional"
            } else if kind != generic_kind(ic) {
                "prime-field/exceptional-decomposition"
            } else {
                "prime-field/all-characteristics"
            };
            TableRow::new(
                id,
                &[
                    ("l_polynomial", ic.l_polynomial().render_ascending("t")),
                    ("kind", kind.as_str().to_string()),
                    ("omega_q", report.br_det.to_string()),
                    ("brauer", render_brauer(report)),
                ],
                tag,
            )
        })
        .collect())
}

/// Supersingular Weil classes for each square `q`, with and without the
/// existence filter.
pub fn square_counts(qs: &[u64]) -> Result<Vec<TableRow>> {
    let id = TableId::SquareCounts;
    qs.iter()
        .map(|&q| {
            if !is_square(&BigInt::from(q)) {
                return Err(Error::InvalidArgument(format!("{q} is not a square")));
            }
            let weil = all_weil_classes(q, true)?;
            let exist = weil.iter().filter(|c| c.exists()).count();
            Ok(TableRow::new(
                id,
                &[
                    ("q", q.to_string()),
                    ("weil_classes", weil.len().to_string()),
                    ("filter_count", exist.to_string()),
                ],
                "square-counts/existence-filter",
            ))
        })
        .collect()
}
