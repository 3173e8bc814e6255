//! JSON and CSV encodings of [`PQSeries`].
//!
//! ```json
//! {"q_order": 2, "p_window": [-2, 8], "p_ceilings": [null, 8, 8],
//!  "q_offset_24": 0,
//!  "coeffs": [[0, [[0, "1"]]], [1, [[-2, "1"], [0, "-1"], [2, "1"]]], [2, []]]}
//! ```
//!
//! Exponents are in half-units of `p`; coefficients are decimal strings.
//! `p_window` is the aggregate window (`null` upper end when every
//! coefficient is exact). `p_ceilings` and `q_offset_24` are optional on
//! input; without `p_ceilings` every degree takes the aggregate ceiling.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{HalfLaurent, PQSeries, PSeries};
use crate::error::{Error, Result};

fn coeff_terms(c: &PSeries) -> Value {
    Value::Array(
        c.value()
            .terms()
            .map(|(e, v)| json!([e, v.to_string()]))
            .collect(),
    )
}

pub fn to_json(s: &PQSeries) -> Value {
    let w = s.p_window();
    json!({
        "q_order": s.q_order(),
        "p_window": [w.lo, w.hi],
        "p_ceilings": s.coeffs().iter().map(PSeries::ceil).collect::<Vec<_>>(),
        "q_offset_24": s.q_offset_24(),
        "coeffs": s.coeffs().iter().enumerate()
            .map(|(d, c)| json!([d, coeff_terms(c)]))
            .collect::<Vec<_>>(),
    })
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

pub fn from_json(v: &Value) -> Result<PQSeries> {
    let q_order = v["q_order"].as_u64().ok_or_else(|| bad("q_order must be a nonnegative integer"))? as usize;
    let window = v["p_window"].as_array().ok_or_else(|| bad("p_window must be [lo, hi]"))?;
    if window.len() != 2 {
        return Err(bad("p_window must have two entries"));
    }
    let lo = window[0].as_i64().ok_or_else(|| bad("p_window lo must be an integer"))?;
    let hi = match &window[1] {
        Value::Null => None,
        h => Some(h.as_i64().ok_or_else(|| bad("p_window hi must be an integer or null"))?),
    };
    let ceilings: Vec<Option<i64>> = match v.get("p_ceilings") {
        None | Some(Value::Null) => vec![hi; q_order + 1],
        Some(Value::Array(a)) if a.len() == q_order + 1 => a.iter().map(Value::as_i64).collect(),
        Some(_) => return Err(bad("p_ceilings must list one entry per q-degree")),
    };
    let mut polys = vec![HalfLaurent::zero(); q_order + 1];
    for entry in v["coeffs"].as_array().ok_or_else(|| bad("coeffs must be an array"))? {
        let d = entry[0].as_u64().ok_or_else(|| bad("q-degree must be an integer"))? as usize;
        if d > q_order {
            return Err(bad(format!("q-degree {d} exceeds q_order {q_order}")));
        }
        for term in entry[1].as_array().ok_or_else(|| bad("terms must be an array"))? {
            let e = term[0].as_i64().ok_or_else(|| bad("exponent must be an integer"))?;
            let c: BigInt = term[1]
                .as_str()
                .ok_or_else(|| bad("coefficient must be a decimal string"))?
                .parse()
                .map_err(|_| bad(format!("cannot parse coefficient {}", term[1])))?;
            polys[d].add_term(e, c);
        }
    }
    let coeffs = polys
        .into_iter()
        .zip(ceilings)
        .map(|(poly, ceil)| PSeries::new(poly, lo, ceil))
        .collect::<Result<Vec<_>>>()?;
    let offset = v.get("q_offset_24").and_then(Value::as_i64).unwrap_or(0);
    Ok(PQSeries::from_coeffs(coeffs)?.with_q_offset(offset))
}

/// CSV rows `d,exp_half,coefficient` with a header line.
pub fn to_csv(s: &PQSeries) -> String {
    let mut out = String::from("d,exp_half,coefficient\n");
    for (d, c) in s.coeffs().iter().enumerate() {
        for (e, v) in c.value().terms() {
            out.push_str(&format!("{d},{e},{v}\n"));
        }
    }
    out
}
