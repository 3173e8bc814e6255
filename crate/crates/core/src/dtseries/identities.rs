//! Vertex trace identities and the sum-versus-product checks built on them.
//!
//! The three identities are evaluated with the usual vertex `V` (not `Ṽ`)
//! and the literal `(1 − p)` factor, so they share no code path with the
//! sum sides assembled in [`Assembly`].

use rayon::prelude::*;

use super::products::theta_tail;
use super::{
    connected_jacobi, dt_fib_product, dt_hat_product, Assembly, ConnectedMode, FdMode, PointConfig, Report,
    SurfaceData,
};
use crate::error::Result;
use crate::partitions::{enumerate_partitions, Partition};
use crate::series::{standard_series, HalfLaurent, PQSeries, PSeries, StandardSeries};
use crate::vertex::{LegConfig, VertexStore};

fn vertex(store: &VertexStore, l: &Partition, m: &Partition, p_order: i64) -> Result<PSeries> {
    Ok(store.get(&LegConfig::new(l.clone(), m.clone(), Partition::empty()), p_order)?.vertex())
}

fn one_minus_p() -> PSeries {
    PSeries::exact(HalfLaurent::from_terms([(0, 1), (2, -1)]))
}

/// `Σ_{|λ|=d} term(λ)` for every `d ≤ q_order`, in parallel over partitions.
fn partition_sum(
    q_order: usize,
    term: impl Fn(&Partition) -> Result<PSeries> + Sync,
) -> Result<PQSeries> {
    let coeffs = (0..=q_order)
        .map(|d| {
            let terms = enumerate_partitions(d).par_iter().map(&term).collect::<Result<Vec<_>>>()?;
            Ok(terms.iter().fold(PSeries::zero(), |acc, t| acc.add(t)))
        })
        .collect::<Result<Vec<_>>>()?;
    PQSeries::from_coeffs(coeffs)
}

fn macmahon_q_tower(q_order: usize, p_order: i64) -> Result<PQSeries> {
    let mut acc = PQSeries::one(q_order);
    for d in 1..=q_order {
        acc = acc.mul(&standard_series(StandardSeries::MacMahon { q_power: d }, q_order, p_order)?);
    }
    Ok(acc)
}

/// Identity A: `Σ_λ (1−p) V_{λ□∅}/V_{λ∅∅} q^{|λ|} = ∏ (1−q^d)/((1−pq^d)(1−p^{−1}q^d))`.
pub fn identity_a(store: &VertexStore, q_order: usize, p_order: i64) -> Result<(PQSeries, PQSeries)> {
    let e = Partition::empty();
    let sq = Partition::single_box();
    let lhs = partition_sum(q_order, |lam| {
        let ratio = vertex(store, lam, &sq, p_order)?.mul(&vertex(store, lam, &e, p_order)?.invert()?);
        Ok(one_minus_p().mul(&ratio))
    })?;
    Ok((lhs, theta_tail(q_order, p_order)?))
}

/// Identity B: `Σ_μ (1−p) p^{‖μ‖²} V_{μμ′∅} V_{μ□∅}/V_{μ∅∅} q^{|μ|}
/// = M(p) ∏ M(p,q^d)/((1−pq^d)(1−p^{−1}q^d))`.
pub fn identity_b(store: &VertexStore, q_order: usize, p_order: i64) -> Result<(PQSeries, PQSeries)> {
    let e = Partition::empty();
    let sq = Partition::single_box();
    let lhs = partition_sum(q_order, |mu| {
        let num = vertex(store, mu, &mu.conjugate(), p_order)?.mul(&vertex(store, mu, &sq, p_order)?);
        let term = num.mul(&vertex(store, mu, &e, p_order)?.invert()?);
        Ok(one_minus_p().mul(&term).shift(2 * mu.norm_sq() as i64))
    })?;
    let m = standard_series(StandardSeries::MacMahonP, q_order, p_order)?;
    let rhs = m.mul(&macmahon_q_tower(q_order, p_order)?).mul(&theta_tail(q_order, p_order)?).mul(
        // theta_tail carries (1 − q^d); remove it again
        &standard_series(StandardSeries::EulerProduct, q_order, p_order)?.invert()?,
    );
    Ok((lhs, rhs))
}

/// Identity C: `Σ_μ Ṽ_{μμ′∅}/Ṽ_{∅∅∅} q^{|μ|} = ∏ (1−q^d)^{−1} M(p,q^d)`.
pub fn identity_c(store: &VertexStore, q_order: usize, p_order: i64) -> Result<(PQSeries, PQSeries)> {
    let e = Partition::empty();
    let empty = store.tilde(&LegConfig::empty(), p_order)?.invert()?;
    let lhs = partition_sum(q_order, |mu| {
        Ok(store.tilde(&LegConfig::new(mu.clone(), mu.conjugate(), e.clone()), p_order)?.mul(&empty))
    })?;
    let euler = standard_series(StandardSeries::EulerProduct, q_order, p_order)?;
    let rhs = euler.invert()?.mul(&macmahon_q_tower(q_order, p_order)?);
    Ok((lhs, rhs))
}

pub fn check_identity_a(store: &VertexStore, q_order: usize, p_order: i64, window: Option<(i64, i64)>) -> Result<Report> {
    let (lhs, rhs) = identity_a(store, q_order, p_order)?;
    Report::compare("identity A", ("vertex sum", lhs), ("product", rhs), window)
}

pub fn check_identity_b(store: &VertexStore, q_order: usize, p_order: i64, window: Option<(i64, i64)>) -> Result<Report> {
    let (lhs, rhs) = identity_b(store, q_order, p_order)?;
    Report::compare("identity B", ("vertex sum", lhs), ("product", rhs), window)
}

pub fn check_identity_c(store: &VertexStore, q_order: usize, p_order: i64, window: Option<(i64, i64)>) -> Result<Report> {
    let (lhs, rhs) = identity_c(store, q_order, p_order)?;
    Report::compare("identity C", ("vertex sum", lhs), ("product", rhs), window)
}

/// `DT̂` assembled from vertices against the closed product.
pub fn check_dt_hat(asm: &Assembly, surf: &SurfaceData, q_order: usize) -> Result<Report> {
    let sum = asm.dt_hat_sum(surf, q_order)?;
    let product = dt_hat_product(surf, q_order, asm.p_order())?;
    Report::compare(format!("dt eB={} eS={}", surf.e_b, surf.e_s), ("sum", sum), ("product", product), None)
}

/// `DT̂_fib` assembled from vertices against the closed product.
pub fn check_dt_fib(asm: &Assembly, surf: &SurfaceData, q_order: usize) -> Result<Report> {
    let sum = asm.dt_fib_sum(surf, q_order)?;
    let product = dt_fib_product(surf, q_order, asm.p_order())?;
    Report::compare(format!("dtfib eB={} eS={}", surf.e_b, surf.e_s), ("sum", sum), ("product", product), None)
}

/// The connected series in the requested mode.
pub fn connected(asm: &Assembly, surf: &SurfaceData, q_order: usize, mode: ConnectedMode) -> Result<PQSeries> {
    let n = asm.p_order();
    match mode {
        ConnectedMode::Ratio => Ok(dt_hat_product(surf, q_order, n)?.mul(&dt_fib_product(surf, q_order, n)?.invert()?)),
        ConnectedMode::SumRatio => {
            Ok(asm.dt_hat_sum(surf, q_order)?.mul(&asm.dt_fib_sum(surf, q_order)?.invert()?))
        }
        ConnectedMode::Jacobi => connected_jacobi(surf, q_order, n),
    }
}

/// `mode` against the Jacobi-form expression.
pub fn check_connected(asm: &Assembly, surf: &SurfaceData, q_order: usize, mode: ConnectedMode) -> Result<Report> {
    let label = match mode {
        ConnectedMode::Ratio => "ratio",
        ConnectedMode::SumRatio => "sum-ratio",
        ConnectedMode::Jacobi => "jacobi",
    };
    Report::compare(
        format!("connected eB={} eS={}", surf.e_b, surf.e_s),
        (label, connected(asm, surf, q_order, mode)?),
        ("jacobi", connected(asm, surf, q_order, ConnectedMode::Jacobi)?),
        None,
    )
}

/// Factored against strata evaluation of `f_d`.
pub fn check_f_d(asm: &Assembly, surf: &SurfaceData, cfg: &PointConfig) -> Result<Report> {
    let a = asm.f_d(cfg, surf, FdMode::Factored)?;
    let b = asm.f_d(cfg, surf, FdMode::Strata)?;
    Report::compare(
        format!("f_d a={:?} b={:?} eB={} eS={}", cfg.a, cfg.b, surf.e_b, surf.e_s),
        ("factored", PQSeries::constant(a, 0)),
        ("strata", PQSeries::constant(b, 0)),
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_at_low_order() {
        let store = VertexStore::new();
        let a = check_identity_a(&store, 2, 4, Some((-4, 4))).unwrap();
        assert!(a.equal, "{}", a.verdict());
        let b = check_identity_b(&store, 2, 4, None).unwrap();
        assert!(b.equal, "{}", b.verdict());
        assert!(b.verified_terms > 6);
        let c = check_identity_c(&store, 2, 4, None).unwrap();
        assert!(c.equal, "{}", c.verdict());
    }

    #[test]
    fn identity_a_window_must_be_known() {
        let store = VertexStore::new();
        assert!(check_identity_a(&store, 2, 2, Some((-4, 4))).is_err());
    }

    #[test]
    fn sums_match_products_at_low_order() {
        let store = VertexStore::new();
        let asm = Assembly::new(&store, 4).unwrap();
        for (eb, es) in [(2, 12), (0, 12), (-2, 12), (2, 0)] {
            let surf = SurfaceData::new(eb, es).unwrap();
            let r = check_dt_hat(&asm, &surf, 2).unwrap();
            assert!(r.equal, "{}", r.verdict());
            let r = check_dt_fib(&asm, &surf, 2).unwrap();
            assert!(r.equal, "{}", r.verdict());
            for mode in [ConnectedMode::Ratio, ConnectedMode::SumRatio] {
                let r = check_connected(&asm, &surf, 2, mode).unwrap();
                assert!(r.equal, "{}", r.verdict());
            }
        }
    }

    #[test]
    fn wrong_product_is_caught() {
        let store = VertexStore::new();
        let asm = Assembly::new(&store, 3).unwrap();
        let surf = SurfaceData::new(2, 12).unwrap();
        let sum = asm.dt_hat_sum(&surf, 1).unwrap();
        let wrong = dt_hat_product(&SurfaceData::new(2, 0).unwrap(), 1, 3).unwrap();
        let r = Report::compare("wrong", ("sum", sum), ("product", wrong), None).unwrap();
        assert!(!r.equal);
    }
}
