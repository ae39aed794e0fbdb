use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use brauer_core::enumeration::{bound_scan, enumerate_classes, reproduce_table, ClassFilter, TableId};
use brauer_core::lattice::possible_omegas;
use brauer_core::surface::{compute_report, make_isogeny_class, BrauerReport, IsogenyClass};
use brauer_core::weil::{is_weil_polynomial, newton_slopes, WeilFailure};
use brauer_core::{Error, IntPolynomial, NewtonSlopes, Rational, WeilPolynomial};
use brauer_lmfdb::{reconcile, LmfdbClient, LmfdbConfig, LmfdbError, Query};

use crate::args::{Convention, PolyInput};
use crate::render::Report;

/// Exit code and message for a command that did not produce a clean report.
#[derive(Debug)]
pub struct CmdError {
    pub code: i32,
    pub message: String,
}

pub const EXIT_INVALID: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

impl CmdError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CmdError { code: EXIT_INVALID, message: message.into() }
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistency(_) => EXIT_MISMATCH,
            _ => EXIT_INVALID,
        };
        CmdError { code, message: e.to_string() }
    }
}

impl From<LmfdbError> for CmdError {
    fn from(e: LmfdbError) -> Self {
        CmdError::invalid(e.to_string())
    }
}

/// A finished report and its exit code (0, or 2 when it records a mismatch).
pub type Outcome = std::result::Result<(Report, i32), CmdError>;

fn big(b: &BigInt) -> Value {
    Value::String(b.to_string())
}

fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn poly(p: &IntPolynomial, var: &str, ascending: bool) -> Value {
    json!({
        "coeffs": p.coeffs().iter().map(big).collect::<Vec<_>>(),
        "text": if ascending { p.render_ascending(var) } else { p.render(var) },
    })
}

fn slopes(s: &NewtonSlopes) -> Value {
    Value::Array(s.slopes().iter().map(rat).collect())
}

fn parse_coeffs(raw: &[String], convention: Convention) -> Result<IntPolynomial, CmdError> {
    let mut c = raw
        .iter()
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| CmdError::invalid(format!("bad coefficient {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if convention == Convention::Descending {
        c.reverse();
    }
    let p = IntPolynomial::new(c);
    if p.is_zero() {
        return Err(CmdError::invalid("zero polynomial"));
    }
    Ok(p)
}

/// `(s1, s2)` from either form of input; coefficient lists must be a
/// surface Weil polynomial or L-polynomial for `q`.
fn surface_traces(input: &PolyInput) -> Result<(i64, i64), CmdError> {
    if let (Some(s1), Some(s2)) = (input.s1, input.s2) {
        return Ok((s1, s2));
    }
    let raw = input.coeffs.as_ref().ok_or_else(|| CmdError::invalid("give --s1 and --s2, or --coeffs"))?;
    let p = parse_coeffs(raw, input.convention)?;
    let c: Vec<i64> = p.coeffs().iter().map(|x| i64::try_from(x).unwrap_or(i64::MAX)).collect();
    let q = i64::try_from(input.q).map_err(|_| CmdError::invalid("q too large"))?;
    let shape = |w: &[i64]| -> Option<(i64, i64)> {
        // ascending [q^2, -q s1, s2, -s1, 1]
        (w.len() == 5 && w[4] == 1 && w[0] == q * q && w[1] == q * w[3]).then(|| (-w[3], w[2]))
    };
    let mut rev = c.clone();
    rev.reverse();
    shape(&c).or_else(|| shape(&rev)).ok_or_else(|| {
        CmdError::invalid(format!(
            "{} is not of the form x^4 - s1 x^3 + s2 x^2 - q s1 x + q^2 (or its L-polynomial) for q = {q}",
            p.render("x")
        ))
    })
}

pub fn check_weil(input: &PolyInput, weight: u8) -> Outcome {
    if !(1..=2).contains(&weight) {
        return Err(CmdError::invalid("weight must be 1 or 2"));
    }
    let f = match (&input.coeffs, input.s1, input.s2) {
        (Some(raw), _, _) => parse_coeffs(raw, input.convention)?,
        (None, Some(s1), Some(s2)) => IsogenyClass::weil_polynomial(input.q, s1, s2),
        _ => return Err(CmdError::invalid("give --coeffs, or --s1 and --s2")),
    };
    let cert = is_weil_polynomial(&f, input.q, weight)?;
    let monic = if cert.reversed_input { f.reversed() } else { f.clone() };
    let mut r = Report::default();
    r.set("q", input.q)
        .set("weight", weight)
        .set("polynomial", poly(&monic, "x", false))
        .set("reversed_input", cert.reversed_input)
        .set("valid", cert.valid);
    r.set(
        "failure",
        match &cert.failure {
            None => Value::Null,
            Some(WeilFailure::FunctionalEquation) => "functional_equation".into(),
            Some(WeilFailure::RootsOffCircle { in_range, expected }) => {
                format!("roots_off_circle ({in_range} of {expected} in range)").into()
            }
        },
    );
    r.set("real_transform", cert.real_transform.as_ref().map_or(Value::Null, |t| poly(t, "u", false)));
    if cert.valid {
        let w = WeilPolynomial::new(monic, input.q, weight)?;
        let s = newton_slopes(&w, w.p())?;
        r.set("g", w.g()).set("slopes", slopes(&s)).set("p_rank", s.p_rank()).set("supersingular", s.is_supersingular());
    } else {
        r.set("g", Value::Null).set("slopes", Value::Null).set("p_rank", Value::Null).set("supersingular", Value::Null);
    }
    Ok((r, 0))
}

fn class_fields(ic: &IsogenyClass, rep: &BrauerReport) -> Map<String, Value> {
    let mut m = Map::new();
    let mut put = |k: &str, v: Value| {
        m.insert(k.into(), v);
    };
    put("q", ic.q.into());
    put("p", ic.p.into());
    put("s1", ic.s1.into());
    put("s2", ic.s2.into());
    put("weil_polynomial", poly(ic.weil.poly(), "x", false));
    put("l_polynomial", poly(&ic.l_polynomial(), "t", true));
    put("exists", ic.exists().into());
    put("kind", ic.kind.map_or(Value::Null, |k| k.as_str().into()));
    put("existence_status", serde_json::to_value(ic.existence_status).expect("status"));
    put("slopes", slopes(&ic.slopes));
    put("p_rank", ic.p_rank().into());
    put("supersingular", ic.is_supersingular().into());
    put("p2", poly(&rep.p2, "t", true));
    put(
        "parts",
        Value::Object(rep.parts.iter().map(|(d, a)| (d.to_string(), Value::from(*a))).collect()),
    );
    put("rho_bar", rep.rho_bar.into());
    put("rho", rep.rho.into());
    put("tau", rep.tau.into());
    put("n", rep.n.into());
    put("omega", rep.omega.into());
    put("ltr", poly(&rep.ltr, "t", true));
    put("ltr_value", rat(&rep.ltr_value));
    put("ltr_bound", rat(&rep.ltr_bound));
    put("geo_brauer_gamma", big(&rep.geo_brauer_gamma));
    put("br_det", big(&rep.br_det));
    put("sigma_prime", rep.sigma_prime.into());
    put("divisible_shape", json!([rep.divisible_shape.0, rep.divisible_shape.1]));
    put("slope_exponent", rat(&rep.slope_exponent));
    put(
        "split",
        rep.split.map_or(Value::Null, |s| {
            json!({"a": s.a, "b": s.b, "admissible": [s.admissible.0, s.admissible.1]})
        }),
    );
    put(
        "resolved",
        rep.resolved.as_ref().map_or(Value::Null, |r| {
            json!({"br": big(&r.br), "det_ns": big(&r.det_ns), "method": serde_json::to_value(r.method).expect("method")})
        }),
    );
    put(
        "candidates",
        Value::Array(rep.candidates.iter().map(|(b, d)| json!({"br": big(b), "det_ns": big(d)})).collect()),
    );
    put("possible_br", Value::Array(rep.possible_br().iter().map(big).collect()));
    m
}

pub fn invariants(input: &PolyInput, verify: Option<&Path>) -> Outcome {
    let prior = verify.map(read_json).transpose()?;
    let (s1, s2) = match (&prior, verify) {
        (Some(prior), Some(path)) => {
            let get = |k: &str| prior.get(k).and_then(Value::as_i64).ok_or_else(|| {
                CmdError::invalid(format!("{}: missing integer field {k:?}", path.display()))
            });
            let (q, s1, s2) = (get("q")?, get("s1")?, get("s2")?);
            if q != input.q as i64 {
                return Err(CmdError::invalid(format!("--q {} but the document has q = {q}", input.q)));
            }
            (s1, s2)
        }
        _ => surface_traces(input)?,
    };
    let ic = make_isogeny_class(input.q, s1, s2)?;
    let rep = compute_report(&ic)?;
    let mut r = Report { fields: class_fields(&ic, &rep), rows: None };
    let Some(prior) = prior else { return Ok((r, 0)) };
    let fresh = r.to_json("invariants");
    let mut differing: Vec<Value> = Vec::new();
    let keys: Vec<&String> = {
        let mut k: Vec<&String> = fresh.as_object().unwrap().keys().collect();
        for extra in prior.as_object().into_iter().flat_map(|o| o.keys()) {
            if !k.contains(&extra) {
                k.push(extra);
            }
        }
        k
    };
    for k in keys {
        if fresh.get(k) != prior.get(k) {
            differing.push(k.clone().into());
        }
    }
    let ok = differing.is_empty();
    r.set("verified", ok).set("differing_fields", Value::Array(differing));
    Ok((r, if ok { 0 } else { EXIT_MISMATCH }))
}

fn read_json(path: &Path) -> Result<Value, CmdError> {
    let text = fs::read_to_string(path).map_err(|e| CmdError::invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CmdError::invalid(format!("{}: {e}", path.display())))
}

pub fn enumerate(q: u64, filter: ClassFilter, sample_size: Option<usize>, seed: u64) -> Outcome {
    let classes = enumerate_classes(q, filter)?;
    let total = classes.len();
    let picked: Vec<usize> = match sample_size {
        Some(k) if k < total => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut idx = sample(&mut rng, total, k).into_vec();
            idx.sort_unstable();
            idx
        }
        _ => (0..total).collect(),
    };
    let rows = picked
        .iter()
        .map(|&i| {
            let (ic, rep) = &classes[i];
            let mut m = Map::new();
            m.insert("s1".into(), ic.s1.into());
            m.insert("s2".into(), ic.s2.into());
            m.insert("kind".into(), ic.kind.map(|k| k.as_str()).into());
            m.insert("p_rank".into(), ic.p_rank().into());
            m.insert("rho_bar".into(), rep.rho_bar.into());
            m.insert("omega".into(), rep.omega.into());
            m.insert("br_det".into(), big(&rep.br_det));
            m.insert("br".into(), rep.resolved.as_ref().map_or(Value::Null, |r| big(&r.br)));
            m.insert("det_ns".into(), rep.resolved.as_ref().map_or(Value::Null, |r| big(&r.det_ns)));
            m.insert("possible_br".into(), Value::Array(rep.possible_br().iter().map(big).collect()));
            m
        })
        .collect::<Vec<_>>();
    let mut r = Report::default();
    r.set("q", q)
        .set("filter", format!("{filter:?}").to_lowercase())
        .set("total", total)
        .set("count", rows.len())
        .set("sampled", sample_size.is_some_and(|k| k < total));
    if sample_size.is_some() {
        r.set("seed", seed.to_string());
    }
    r.rows = Some(("classes", rows));
    Ok((r, 0))
}

pub fn omega_catalog(tau: u64) -> Outcome {
    const MAX_TAU: u64 = 24;
    if tau > MAX_TAU {
        return Err(CmdError::invalid(format!("tau must be at most {MAX_TAU}")));
    }
    let profiles = possible_omegas(tau);
    let rows = profiles
        .iter()
        .map(|p| {
            let mut m = Map::new();
            m.insert("parts".into(), p.render_parts().into());
            m.insert("n".into(), p.n.into());
            m.insert("omega".into(), p.omega.into());
            m
        })
        .collect::<Vec<_>>();
    let mut omegas: Vec<u64> = profiles.iter().map(|p| p.omega).collect();
    omegas.sort_unstable();
    omegas.dedup();
    let mut r = Report::default();
    r.set("tau", tau).set("count", rows.len()).set("omega_set", omegas);
    r.rows = Some(("profiles", rows));
    Ok((r, 0))
}

pub fn table(id: &str) -> Outcome {
    let tid: TableId = id.parse()?;
    let rows = reproduce_table(tid)?;
    let out = rows
        .iter()
        .map(|row| {
            let mut m: Map<String, Value> = row.columns.iter().map(|(k, v)| (k.clone(), v.clone().into())).collect();
            m.insert("provenance".into(), row.provenance.clone().into());
            m
        })
        .collect::<Vec<_>>();
    let mut r = Report::default();
    r.set("table_id", tid.to_string()).set("count", out.len());
    r.rows = Some(("rows", out));
    Ok((r, 0))
}

pub fn bound_scan_cmd(qs: &[u64]) -> Outcome {
    if qs.is_empty() {
        return Err(CmdError::invalid("no q given"));
    }
    let scan = bound_scan(qs)?;
    let rows = scan
        .scans
        .iter()
        .map(|s| match serde_json::to_value(s).expect("scan") {
            Value::Object(m) => m,
            _ => unreachable!(),
        })
        .collect();
    let mut r = Report::default();
    r.set("passed", scan.passed())
        .set("falsifications", serde_json::to_value(&scan.falsifications).expect("falsifications"))
        .set("observations", serde_json::to_value(&scan.observations).expect("observations"));
    r.rows = Some(("scans", rows));
    Ok((r, if scan.passed() { 0 } else { EXIT_MISMATCH }))
}

pub struct LmfdbArgs<'a> {
    pub q: u64,
    pub p_rank: Option<u32>,
    pub offline: bool,
    pub cache: Option<&'a Path>,
    pub fixtures: Option<&'a Path>,
    pub base_url: Option<&'a str>,
}

pub fn lmfdb_verify(a: LmfdbArgs<'_>) -> Outcome {
    let mut config = LmfdbConfig::from_env();
    config.offline |= a.offline;
    if let Some(c) = a.cache {
        config.cache_dir = c.into();
    }
    if let Some(f) = a.fixtures {
        config.fixtures_dir = Some(f.into());
    }
    if let Some(u) = a.base_url {
        config.base_url = u.into();
    }
    let client = LmfdbClient::new(config);
    let query = Query { q: a.q, p_rank: a.p_rank };
    let fetched = client.fetch(query)?;
    let filter = a.p_rank.map_or(ClassFilter::All, |r| ClassFilter::PRank(r as usize));
    let local = enumerate_classes(a.q, filter)?;
    let rec = reconcile(a.q, &local, &fetched.records)?;

    let coeffs = |c: &[i64; 5]| Value::Array(c.iter().map(|x| Value::String(x.to_string())).collect());
    let mut rows = Vec::new();
    for (side, list) in [("local_only", rec.local_only()), ("remote_only", rec.remote_only())] {
        for s in list {
            let mut m = Map::new();
            m.insert("diff".into(), side.into());
            m.insert("l_coeffs".into(), coeffs(&s.l_coeffs));
            m.insert("label".into(), s.label.clone().into());
            m.insert("detail".into(), format!("p_rank {}, simple {}", s.p_rank, s.is_simple).into());
            rows.push(m);
        }
    }
    for mm in &rec.mismatches {
        let mut m = Map::new();
        m.insert("diff".into(), mm.field.into());
        m.insert("l_coeffs".into(), coeffs(&mm.l_coeffs));
        m.insert("label".into(), mm.label.clone().into());
        m.insert("detail".into(), format!("local {}, remote {}", mm.left, mm.right).into());
        rows.push(m);
    }
    let ok = rec.is_empty();
    let mut r = Report::default();
    r.set("q", a.q)
        .set("p_rank", a.p_rank)
        .set("source", format!("{:?}", fetched.source).to_lowercase())
        .set("remote_count", fetched.records.len())
        .set("local_count", local.len())
        .set("matched", rec.matched)
        .set("confirmed", ok);
    r.rows = Some(("differences", rows));
    Ok((r, if ok { 0 } else { EXIT_MISMATCH }))
}
