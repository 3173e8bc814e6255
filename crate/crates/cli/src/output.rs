use std::fmt::Write as _;

use dtvertex::dtseries::Report;
use dtvertex::series::{to_csv, to_json, PQSeries, PSeries};
use serde_json::{json, Value};

use crate::args::Format;

/// Rendered command output and whether every requested equality held.
pub struct Rendered {
    pub text: String,
    pub status: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Error,
    Discrepancy,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::Discrepancy => 2,
        }
    }
}

pub fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn csv_rows(out: &mut String, label: &str, s: &PQSeries) {
    for line in to_csv(s).lines().skip(1) {
        let _ = writeln!(out, "{label},{line}");
    }
}

/// Named series, no verdict.
pub fn series(fmt: Format, named: &[(&str, &PQSeries)]) -> Rendered {
    let text = match fmt {
        Format::Json => {
            let items: Vec<Value> = named.iter().map(|(l, s)| json!({"label": l, "series": to_json(s)})).collect();
            json_text(&Value::Array(items))
        }
        Format::Csv => {
            let mut out = String::from("label,d,exp_half,coefficient\n");
            for (l, s) in named {
                csv_rows(&mut out, l, s);
            }
            out
        }
        Format::Pretty => named.iter().map(|(l, s)| format!("{l}: {s}\n")).collect(),
    };
    Rendered { text, status: Status::Ok }
}

pub fn p_series(s: &PSeries) -> PQSeries {
    PQSeries::constant(s.clone(), 0)
}

pub fn report(fmt: Format, r: &Report) -> Rendered {
    let text = match fmt {
        Format::Json => json_text(&r.to_json()),
        Format::Csv => {
            let mut out = String::from("side,d,exp_half,coefficient\n");
            csv_rows(&mut out, &r.label_a, &r.side_a);
            csv_rows(&mut out, &r.label_b, &r.side_b);
            out
        }
        Format::Pretty => r.pretty(),
    };
    let status = if r.equal { Status::Ok } else { Status::Discrepancy };
    Rendered { text, status }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrepancy_exits_with_two() {
        let a = PQSeries::from_exact_terms(1, [(1usize, 0i64, 1i64)]);
        let b = PQSeries::from_exact_terms(1, [(1usize, 0i64, 2i64)]);
        let r = Report::compare("demo", ("a", a.clone()), ("b", b), None).unwrap();
        let out = report(Format::Json, &r);
        assert_eq!(out.status.code(), 2);
        let v: Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["first_discrepancy"]["d"], 1);
        let same = Report::compare("demo", ("a", a.clone()), ("b", a), None).unwrap();
        assert_eq!(report(Format::Csv, &same).status.code(), 0);
    }
}
