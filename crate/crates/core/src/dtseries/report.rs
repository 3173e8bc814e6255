use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::Result;
use crate::series::{to_json, Discrepancy, PQSeries};

/// Outcome of comparing two sides of an identity.
#[derive(Clone, Debug)]
pub struct Report {
    pub check: String,
    pub label_a: String,
    pub label_b: String,
    pub side_a: PQSeries,
    pub side_b: PQSeries,
    pub q_order: usize,
    /// Explicitly requested p-window (half-units), if any.
    pub requested: Option<(i64, i64)>,
    /// Per q-degree `(floor, ceiling)` shared by both sides.
    pub windows: Vec<(i64, Option<i64>)>,
    pub equal: bool,
    pub first_discrepancy: Option<Discrepancy>,
    /// Nonzero coefficients of side A that were actually compared.
    pub verified_terms: usize,
}

impl Report {
    /// Compares `a` and `b` on their common knowledge (or on `window`, which
    /// both sides must know completely).
    pub fn compare(
        check: impl Into<String>,
        (label_a, a): (&str, PQSeries),
        (label_b, b): (&str, PQSeries),
        window: Option<(i64, i64)>,
    ) -> Result<Report> {
        let first_discrepancy = a.compare(&b, window)?;
        let q_order = a.q_order().min(b.q_order());
        let windows = a.common_windows(&b);
        let verified_terms = (0..=q_order)
            .map(|d| {
                let (lo, hi) = match window {
                    Some(w) => w,
                    None => (windows[d].0, windows[d].1.unwrap_or(i64::MAX)),
                };
                a.coeff(d).value().terms().filter(|&(e, _)| lo <= e && e <= hi).count()
            })
            .sum();
        Ok(Report {
            check: check.into(),
            label_a: label_a.into(),
            label_b: label_b.into(),
            side_a: a,
            side_b: b,
            q_order,
            requested: window,
            windows,
            equal: first_discrepancy.is_none(),
            first_discrepancy,
            verified_terms,
        })
    }

    /// The aggregate window `[lo, hi]` (half-units) that was compared.
    pub fn window(&self) -> (i64, Option<i64>) {
        if let Some((lo, hi)) = self.requested {
            return (lo, Some(hi));
        }
        let lo = self.windows.iter().map(|w| w.0).min().unwrap_or(0);
        let hi = self.windows.iter().filter_map(|w| w.1).min();
        (lo, hi)
    }

    pub fn to_json(&self) -> Value {
        let (lo, hi) = self.window();
        json!({
            "check": self.check,
            "side_a": {"label": self.label_a, "series": to_json(&self.side_a)},
            "side_b": {"label": self.label_b, "series": to_json(&self.side_b)},
            "window": [lo, hi],
            "degree_windows": self.windows.iter().map(|(l, h)| json!([l, h])).collect::<Vec<_>>(),
            "q_order": self.q_order,
            "equal": self.equal,
            "verified_terms": self.verified_terms,
            "first_discrepancy": self.first_discrepancy.as_ref().map(discrepancy_json),
        })
    }

    /// One-line verdict.
    pub fn verdict(&self) -> String {
        let (lo, hi) = self.window();
        let hi = hi.map_or("∞".to_string(), |h| format!("{}", h as f64 / 2.0));
        let window = format!("p^[{}, {}], q^0..q^{}", lo as f64 / 2.0, hi, self.q_order);
        match &self.first_discrepancy {
            None => format!("EQUAL on window {window} ({} nonzero terms)", self.verified_terms),
            Some(d) => format!(
                "DIFFER at q^{} p^({}/2): {} vs {} (window {window})",
                d.q_degree, d.exp_half, d.lhs, d.rhs
            ),
        }
    }

    /// Coefficient table of both sides followed by the verdict.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.check);
        let _ = writeln!(out, "  {}: {}", self.label_a, self.side_a);
        let _ = writeln!(out, "  {}: {}", self.label_b, self.side_b);
        let _ = writeln!(out, "  {}", self.verdict());
        out
    }
}

pub fn discrepancy_json(d: &Discrepancy) -> Value {
    json!({
        "d": d.q_degree,
        "exp_half": d.exp_half,
        "lhs": d.lhs.to_string(),
        "rhs": d.rhs.to_string(),
    })
}
