use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{LmfdbError, Result};

/// One genus-2 isogeny class as served by `/api/av_fq_isog/`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LmfdbRecord {
    pub label: String,
    pub g: u32,
    pub q: u64,
    /// `[1, a1, a2, q a1, q^2]`, ascending in `t`.
    pub l_poly_coeffs: Vec<i64>,
    pub p_rank: u32,
    pub is_simple: bool,
    /// The source object as received.
    pub raw: Value,
}

impl LmfdbRecord {
    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| v.get(k).ok_or_else(|| LmfdbError::InvalidRecord(format!("missing field {k:?}")));
        let int = |k: &str| -> Result<i64> {
            field(k)?
                .as_i64()
                .ok_or_else(|| LmfdbError::InvalidRecord(format!("{k:?} is not an integer")))
        };
        let label = field("label")?
            .as_str()
            .ok_or_else(|| LmfdbError::InvalidRecord("label is not a string".into()))?
            .to_string();
        let poly = field("poly")?
            .as_array()
            .ok_or_else(|| LmfdbError::InvalidRecord(format!("{label}: poly is not an array")))?
            .iter()
            .map(|c| c.as_i64().ok_or_else(|| LmfdbError::InvalidRecord(format!("{label}: non-integer coefficient"))))
            .collect::<Result<Vec<i64>>>()?;
        let rec = LmfdbRecord {
            g: u32::try_from(int("g")?).map_err(|_| LmfdbError::InvalidRecord(format!("{label}: bad g")))?,
            q: u64::try_from(int("q")?).map_err(|_| LmfdbError::InvalidRecord(format!("{label}: bad q")))?,
            p_rank: u32::try_from(int("p_rank")?).map_err(|_| LmfdbError::InvalidRecord(format!("{label}: bad p_rank")))?,
            is_simple: field("is_simple")?
                .as_bool()
                .ok_or_else(|| LmfdbError::InvalidRecord(format!("{label}: is_simple is not a boolean")))?,
            l_poly_coeffs: poly,
            raw: v.clone(),
            label,
        };
        rec.validate()?;
        Ok(rec)
    }

    pub fn validate(&self) -> Result<()> {
        let q2 = (self.q as i64).checked_mul(self.q as i64);
        let c = &self.l_poly_coeffs;
        if self.g != 2 || c.len() != 5 || c[0] != 1 || Some(c[4]) != q2 {
            return Err(LmfdbError::InvalidRecord(format!(
                "{}: expected a genus-2 L-polynomial [1, a1, a2, q a1, q^2], got g = {} and {:?}",
                self.label, self.g, c
            )));
        }
        Ok(())
    }

    /// `(s1, s2)` of the Weil polynomial `x^4 - s1 x^3 + s2 x^2 - q s1 x + q^2`.
    pub fn traces(&self) -> (i64, i64) {
        (-self.l_poly_coeffs[1], self.l_poly_coeffs[2])
    }
}

/// One page of an API response.
#[derive(Clone, Debug, PartialEq)]
pub struct Page {
    pub records: Vec<LmfdbRecord>,
    pub next: Option<String>,
}

pub fn parse_page(body: &[u8]) -> std::result::Result<Page, String> {
    let doc: Value = serde_json::from_slice(body).map_err(|e| e.to_string())?;
    let data = doc
        .get("data")
        .and_then(Value::as_array)
        .ok_or("response has no \"data\" array")?;
    let records = data
        .iter()
        .map(LmfdbRecord::from_json)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let next = match doc.get("next") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if !s.is_empty() => Some(s.clone()),
        Some(Value::String(_)) => None,
        Some(other) => return Err(format!("\"next\" is not a string: {other}")),
    };
    Ok(Page { records, next })
}
