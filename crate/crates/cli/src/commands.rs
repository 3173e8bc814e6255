use std::fmt::Write as _;

use dtvertex::deform::{
    behrend_sign, chi_oc, comb_fiber_arrow_classes, euler_data, haiman_basis_2d, tangent_dim, vl_tangent_basis,
    CombCurveDescriptor, HaimanArrow,
};
use dtvertex::dtseries::identities::connected;
use dtvertex::dtseries::{
    dt_fib_product, dt_hat_product, symprod_check, Assembly, ConnectedMode, FdMode, PointConfig, Report, SurfaceData,
};
use dtvertex::partitions::enumerate_partitions;
use dtvertex::series::HalfLaurent;
use dtvertex::vertex::{estimate_search_nodes, LegConfig, VertexStore};
use dtvertex::{Error, Result};
use serde_json::{json, Value};

use crate::args::*;
use crate::output::{self, json_text, p_series, Rendered, Status};

/// Legs or orders beyond these get a cost warning.
const LARGE_LEGS: usize = 6;
const LARGE_ORDER: i64 = 12;

fn warn_if_large(cfgs: &[LegConfig], n: i64) {
    if n < 0 || !(n > LARGE_ORDER || cfgs.iter().any(|c| c.total_size() > LARGE_LEGS)) {
        return;
    }
    let nodes: f64 = cfgs.iter().map(|c| estimate_search_nodes(c, n as usize)).sum();
    eprintln!("warning: large enumeration (N = {n}); about {nodes:.2e} search nodes");
}

/// The heaviest vertices a sum through `q_order` needs.
fn heaviest(q_order: usize) -> Vec<LegConfig> {
    enumerate_partitions(q_order)
        .into_iter()
        .map(|l| LegConfig::new(l.clone(), l.conjugate(), Default::default()))
        .collect()
}

pub fn vertex(store: &VertexStore, fmt: Format, args: &VertexArgs) -> Result<Rendered> {
    let cfg = LegConfig::parse_legs(&args.legs)?;
    warn_if_large(std::slice::from_ref(&cfg), args.p_order);
    let rec = store.get(&cfg, args.p_order)?;
    let (tilde, plain) = (p_series(&rec.tilde()), p_series(&rec.vertex()));
    let text = match fmt {
        Format::Json => json_text(&json!({
            "record": rec.to_json(),
            "tilde": dtvertex::series::to_json(&tilde),
            "vertex": dtvertex::series::to_json(&plain),
        })),
        Format::Csv => return Ok(output::series(fmt, &[("tilde", &tilde), ("vertex", &plain)])),
        Format::Pretty => format!(
            "legs {}  (minimal volume {}, N = {})\n  Ṽ = {}\n  V = {}\n",
            rec.legs,
            rec.min_volume,
            rec.p_order,
            rec.tilde(),
            rec.vertex()
        ),
    };
    Ok(Rendered { text, status: Status::Ok })
}

#[derive(Clone, Copy)]
pub enum Family {
    Hat,
    Fib,
}

pub fn dt(store: &VertexStore, fmt: Format, args: &DtArgs, family: Family) -> Result<Rendered> {
    let surf = args.surface.surface()?;
    let (q, n) = (args.orders.q_order, args.orders.p_order());
    let asm = Assembly::new(store, n)?;
    let name = match family {
        Family::Hat => "dt",
        Family::Fib => "dtfib",
    };
    let sum = |a: &Assembly| match family {
        Family::Hat => a.dt_hat_sum(&surf, q),
        Family::Fib => a.dt_fib_sum(&surf, q),
    };
    let product = |s: &SurfaceData, q, n| match family {
        Family::Hat => dt_hat_product(s, q, n),
        Family::Fib => dt_fib_product(s, q, n),
    };
    if args.side != SideArg::Product {
        warn_if_large(&heaviest(q), n);
    }
    match args.side {
        SideArg::Sum => Ok(output::series(fmt, &[("sum", &sum(&asm)?)])),
        SideArg::Product => Ok(output::series(fmt, &[("product", &product(&surf, q, n)?)])),
        SideArg::Both => {
            let check = format!("{name} eB={} eS={}", surf.e_b, surf.e_s);
            let r = Report::compare(check, ("sum", sum(&asm)?), ("product", product(&surf, q, n)?), args.orders.p_window)?;
            Ok(output::report(fmt, &r))
        }
    }
}

fn connected_report(
    store: &VertexStore,
    surf: &SurfaceData,
    orders: &OrderArgs,
    mode: ModeArg,
) -> Result<Report> {
    let (q, n) = (orders.q_order, orders.p_order());
    let asm = Assembly::new(store, n)?;
    if mode == ModeArg::SumRatio {
        warn_if_large(&heaviest(q), n);
    }
    let label = match mode {
        ModeArg::Ratio => "ratio",
        ModeArg::SumRatio => "sum-ratio",
        ModeArg::Jacobi => "jacobi",
    };
    Report::compare(
        format!("connected eB={} eS={}", surf.e_b, surf.e_s),
        (label, connected(&asm, surf, q, mode.into())?),
        ("jacobi", connected(&asm, surf, q, ConnectedMode::Jacobi)?),
        orders.p_window,
    )
}

pub fn connected_cmd(store: &VertexStore, fmt: Format, args: &ConnectedArgs) -> Result<Rendered> {
    let surf = args.surface.surface()?;
    Ok(output::report(fmt, &connected_report(store, &surf, &args.orders, args.mode)?))
}

pub fn kkv(store: &VertexStore, fmt: Format, args: &KkvArgs) -> Result<Rendered> {
    Ok(output::report(fmt, &connected_report(store, &SurfaceData::k3(), &args.orders, args.mode)?))
}

pub fn fd(store: &VertexStore, fmt: Format, args: &FdArgs) -> Result<Rendered> {
    let surf = args.surface.surface()?;
    let cfg = PointConfig::new(args.a.clone(), args.b.clone())?;
    let asm = Assembly::new(store, args.p_order)?;
    warn_if_large(&heaviest(cfg.a.iter().chain(&cfg.b).copied().max().unwrap_or(0)), args.p_order);
    let eval = |mode| asm.f_d(&cfg, &surf, mode).map(|s| p_series(&s));
    match args.mode {
        FdModeArg::Factored => Ok(output::series(fmt, &[("factored", &eval(FdMode::Factored)?)])),
        FdModeArg::Strata => Ok(output::series(fmt, &[("strata", &eval(FdMode::Strata)?)])),
        FdModeArg::Both => {
            let check = format!("f_d a={:?} b={:?} eB={} eS={}", cfg.a, cfg.b, surf.e_b, surf.e_s);
            let r = Report::compare(check, ("factored", eval(FdMode::Factored)?), ("strata", eval(FdMode::Strata)?), None)?;
            Ok(output::report(fmt, &r))
        }
    }
}

fn arrow_json(a: &HaimanArrow) -> Value {
    json!({"tail": [a.tail.0, a.tail.1], "head": [a.head.0, a.head.1], "kind": a.kind})
}

pub fn tangent(fmt: Format, args: &TangentArgs) -> Result<Rendered> {
    let surf = args.surface.surface()?;
    let desc = CombCurveDescriptor::new(surf, args.smooth.clone(), args.nodal.clone())?;
    let e = euler_data(&surf)?;
    let (chi, dim, sign) = (chi_oc(&desc)?, tangent_dim(&desc)?, behrend_sign(&desc)?);
    let mut fibers = Vec::new();
    for (kind, lam) in desc.smooth_fibers.iter().map(|l| ("smooth", l)).chain(desc.nodal_fibers.iter().map(|l| ("nodal", l))) {
        fibers.push((kind, lam, haiman_basis_2d(lam)?, vl_tangent_basis(lam)?, comb_fiber_arrow_classes(lam)?));
    }
    let text = match fmt {
        Format::Json => json_text(&json!({
            "surface": surf,
            "euler_data": e,
            "chi_OC": chi,
            "tangent_dim": dim,
            "behrend_sign": sign,
            "fibers": fibers.iter().map(|(kind, lam, basis, vl, classes)| json!({
                "kind": kind,
                "partition": lam.parts(),
                "haiman_basis": basis.iter().map(arrow_json).collect::<Vec<_>>(),
                "vl_basis": vl.iter().map(arrow_json).collect::<Vec<_>>(),
                "classes": classes,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("fiber,kind,partition,arrow,tail_r,tail_s,head_r,head_s,in_vl\n");
            for (i, (kind, lam, basis, vl, _)) in fibers.iter().enumerate() {
                for a in basis {
                    let _ = writeln!(
                        out,
                        "{i},{kind},\"{}\",{:?},{},{},{},{},{}",
                        lam.key(),
                        a.kind,
                        a.tail.0,
                        a.tail.1,
                        a.head.0,
                        a.head.1,
                        vl.contains(a)
                    );
                }
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            let _ = writeln!(out, "χ(O_S) = {}, χ(O_B) = {}, h⁰(N_B/T) = {}, h⁰(N_B/S) = {}", e.chi_os, e.chi_ob, e.h0_nbt, e.h0_nbs);
            let _ = writeln!(out, "χ(O_C) = {chi}, tangent dimension = {dim}, Behrend sign = {sign:+}");
            for (kind, lam, basis, vl, classes) in &fibers {
                let _ = writeln!(out, "{kind} fiber {:?}: {} arrows, {classes} along the comb", lam.parts(), basis.len());
                for a in basis {
                    let mark = if vl.contains(a) { ' ' } else { '×' };
                    let _ = writeln!(out, "  {mark} {:?} {:?} → {:?}", a.kind, a.tail, a.head);
                }
            }
            out
        }
    };
    Ok(Rendered { text, status: Status::Ok })
}

fn parse_g_table(s: &str) -> Result<Vec<HalfLaurent>> {
    let bad = |m: &str| Error::Precondition(format!("--g: {m}"));
    let v: Value = serde_json::from_str(s)?;
    v.as_array()
        .ok_or_else(|| bad("expected a JSON list of entries"))?
        .iter()
        .map(|entry| {
            let terms = entry.as_array().ok_or_else(|| bad("each entry is a list of [exp_half, coeff]"))?;
            let pairs = terms
                .iter()
                .map(|t| match t.as_array().map(Vec::as_slice) {
                    Some([e, c]) => match (e.as_i64(), c.as_i64()) {
                        (Some(e), Some(c)) => Ok((e, c)),
                        _ => Err(bad("exponents and coefficients must be integers")),
                    },
                    _ => Err(bad("each term is [exp_half, coeff]")),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(HalfLaurent::from_terms(pairs))
        })
        .collect()
}

pub fn symprod(fmt: Format, args: &SymprodArgs) -> Result<Rendered> {
    let g = match &args.g {
        Some(s) => parse_g_table(s)?,
        None => vec![HalfLaurent::one(); args.q_order + 1],
    };
    Ok(output::report(fmt, &symprod_check(&g, args.e, args.q_order)?))
}
