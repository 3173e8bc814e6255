//! `check all`: the identity suite at the acceptance orders.

use std::fmt::Write as _;

use dtvertex::deform::{behrend_sign, comb_fiber_arrow_classes, haiman_basis_2d, tangent_dim, vl_tangent_basis, CombCurveDescriptor};
use dtvertex::dtseries::identities::{
    check_connected, check_dt_fib, check_dt_hat, check_f_d, check_identity_a, check_identity_b, check_identity_c,
};
use dtvertex::dtseries::{symprod_check, Assembly, ConnectedMode, PointConfig, Report, SurfaceData};
use dtvertex::partitions::enumerate_partitions;
use dtvertex::series::HalfLaurent;
use dtvertex::vertex::VertexStore;
use dtvertex::Result;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{CheckArgs, Format};
use crate::output::{json_text, Rendered, Status};

const SURFACES: [(i64, i64); 4] = [(2, 24), (0, 12), (-2, 12), (2, 12)];

/// Orders used when not overridden.
#[derive(Clone, Copy, Debug)]
struct Orders {
    identity_a_q: usize,
    identity_a_n: i64,
    identity_bc_q: usize,
    identity_bc_n: i64,
    dt_q: usize,
    dt_n: i64,
    fd_degree: usize,
    fd_n: i64,
    symprod_q: usize,
    arrow_size: usize,
}

impl Default for Orders {
    fn default() -> Self {
        Orders {
            identity_a_q: 5,
            identity_a_n: 10,
            identity_bc_q: 4,
            identity_bc_n: 8,
            dt_q: 4,
            dt_n: 12,
            fd_degree: 4,
            fd_n: 6,
            symprod_q: 6,
            arrow_size: 8,
        }
    }
}

impl Orders {
    fn with_overrides(args: &CheckArgs) -> Self {
        let mut o = Orders::default();
        if let Some(q) = args.q_order {
            o.identity_a_q = q;
            o.identity_bc_q = q;
            o.dt_q = q;
            o.fd_degree = q;
            o.symprod_q = q;
        }
        if let Some(n) = args.p_order {
            o.identity_a_n = n;
            o.identity_bc_n = n;
            o.dt_n = n;
            o.fd_n = n;
        }
        o
    }

    /// `p^[−5, 5]` for identity A when the vertices reach it.
    fn identity_a_window(&self) -> Option<(i64, i64)> {
        (self.identity_a_n >= self.identity_a_q as i64 + 5).then_some((-10, 10))
    }
}

struct Line {
    name: String,
    status: Status,
    detail: String,
    report: Option<Value>,
}

impl Line {
    fn from_report(name: impl Into<String>, r: Result<Report>) -> Line {
        let name = name.into();
        match r {
            Ok(r) => Line {
                status: if r.equal { Status::Ok } else { Status::Discrepancy },
                detail: r.verdict(),
                report: Some(r.to_json()),
                name,
            },
            Err(e) => Line { name, status: Status::Error, detail: e.to_string(), report: None },
        }
    }

    fn from_counts(name: impl Into<String>, r: Result<std::result::Result<String, String>>) -> Line {
        let name = name.into();
        match r {
            Ok(Ok(detail)) => Line { name, status: Status::Ok, detail, report: None },
            Ok(Err(detail)) => Line { name, status: Status::Discrepancy, detail, report: None },
            Err(e) => Line { name, status: Status::Error, detail: e.to_string(), report: None },
        }
    }
}

type Check<'a> = Box<dyn Fn() -> Line + Send + Sync + 'a>;

fn f_d_all(store: &VertexStore, surf: SurfaceData, o: Orders) -> Result<std::result::Result<String, String>> {
    let asm = Assembly::new(store, o.fd_n)?;
    asm.warm_up(o.fd_degree)?;
    let mut count = 0;
    for d in 1..=o.fd_degree {
        for cfg in PointConfig::all_of_degree(d) {
            let r = check_f_d(&asm, &surf, &cfg)?;
            if !r.equal {
                return Ok(Err(r.verdict()));
            }
            count += 1;
        }
    }
    Ok(Ok(format!("factored = strata for {count} configurations, d ≤ {}", o.fd_degree)))
}

fn symprod_all(o: Orders) -> Result<std::result::Result<String, String>> {
    let ones = vec![HalfLaurent::one(); o.symprod_q + 1];
    for e in -3..=3 {
        let r = symprod_check(&ones, e, o.symprod_q)?;
        if !r.equal {
            return Ok(Err(format!("e = {e}: {}", r.verdict())));
        }
    }
    Ok(Ok(format!("g ≡ 1 gives (1−q)^−e for e ∈ [−3, 3] to q^{}", o.symprod_q)))
}

fn arrows_all(o: Orders) -> Result<std::result::Result<String, String>> {
    let mut count = 0;
    for d in 1..=o.arrow_size {
        for lam in enumerate_partitions(d) {
            let l = lam.first_part();
            let counts = (haiman_basis_2d(&lam)?.len(), vl_tangent_basis(&lam)?.len(), comb_fiber_arrow_classes(&lam)?);
            if counts != (2 * d, 2 * d - l, 2 * d - l) {
                return Ok(Err(format!("{:?}: counts {counts:?}", lam.parts())));
            }
            for (eb, es) in [(2, 12), (2, 24), (0, 12)] {
                let desc = CombCurveDescriptor::new(SurfaceData::new(eb, es)?, vec![lam.clone()], vec![])?;
                let parity = if tangent_dim(&desc)? % 2 == 0 { 1 } else { -1 };
                if behrend_sign(&desc)? != parity {
                    return Ok(Err(format!("{:?}: sign disagrees with tangent parity", lam.parts())));
                }
            }
            count += 1;
        }
    }
    Ok(Ok(format!("2d / 2d−l arrows and sign parity for {count} partitions, |λ| ≤ {}", o.arrow_size)))
}

fn checks<'a>(store: &'a VertexStore, o: Orders) -> Vec<Check<'a>> {
    let mut out: Vec<Check<'a>> = vec![
        Box::new(move || {
            Line::from_report("identity A", check_identity_a(store, o.identity_a_q, o.identity_a_n, o.identity_a_window()))
        }),
        Box::new(move || Line::from_report("identity B", check_identity_b(store, o.identity_bc_q, o.identity_bc_n, None))),
        Box::new(move || Line::from_report("identity C", check_identity_c(store, o.identity_bc_q, o.identity_bc_n, None))),
    ];
    for (eb, es) in SURFACES {
        let with_asm = move |f: &dyn Fn(&Assembly, &SurfaceData) -> Result<Report>| {
            Assembly::new(store, o.dt_n).and_then(|asm| f(&asm, &SurfaceData::new(eb, es)?))
        };
        out.push(Box::new(move || {
            Line::from_report(format!("dt eB={eb} eS={es}"), with_asm(&|a, s| check_dt_hat(a, s, o.dt_q)))
        }));
        out.push(Box::new(move || {
            Line::from_report(format!("dtfib eB={eb} eS={es}"), with_asm(&|a, s| check_dt_fib(a, s, o.dt_q)))
        }));
        out.push(Box::new(move || {
            Line::from_report(
                format!("connected eB={eb} eS={es}"),
                with_asm(&|a, s| check_connected(a, s, o.dt_q, ConnectedMode::Ratio)),
            )
        }));
    }
    for (eb, es) in [(2, 12), (2, 24)] {
        out.push(Box::new(move || {
            Line::from_counts(format!("f_d eB={eb} eS={es}"), SurfaceData::new(eb, es).and_then(|s| f_d_all(store, s, o)))
        }));
    }
    out.push(Box::new(move || Line::from_counts("symprod", symprod_all(o))));
    out.push(Box::new(move || Line::from_counts("arrow counts", arrows_all(o))));
    out
}

pub fn all(store: &VertexStore, fmt: Format, args: &CheckArgs) -> Rendered {
    let orders = Orders::with_overrides(args);
    // Checks run concurrently; lines are emitted in the fixed order above.
    let lines: Vec<Line> = checks(store, orders).par_iter().map(|c| c()).collect();
    let status = lines.iter().map(|l| l.status).max().unwrap_or(Status::Ok);
    let label = |s: Status| match s {
        Status::Ok => "PASS",
        Status::Discrepancy => "FAIL",
        Status::Error => "ERROR",
    };
    let text = match fmt {
        Format::Json => json_text(&json!({
            "pass": status == Status::Ok,
            "checks": lines.iter().map(|l| json!({
                "check": l.name,
                "status": label(l.status),
                "detail": l.detail,
                "report": l.report,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("check,status,detail\n");
            for l in &lines {
                let _ = writeln!(out, "\"{}\",{},\"{}\"", l.name, label(l.status), l.detail.replace('"', "'"));
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for l in &lines {
                let _ = writeln!(out, "{:<5} {} — {}", label(l.status), l.name, l.detail);
            }
            out
        }
    };
    Rendered { text, status }
}
