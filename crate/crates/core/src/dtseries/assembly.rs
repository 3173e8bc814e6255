use rayon::prelude::*;

use super::{PointConfig, SurfaceData};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::series::{HalfLaurent, PQSeries, PSeries};
use crate::vertex::{LegConfig, VertexStore};

/// Evaluation route for `f_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdMode {
    /// `F₁^{e(B)} F₂^{e(S)} ∏ g(aᵢ) ∏ h(bⱼ)`.
    Factored,
    /// Sum over strata of the product of local vertices, read off the fpqc
    /// cover literally (`Ṽ_{□∅λ}` at `xᵢ`, `Ṽ_{μ′∅μ}` at the node, …).
    Strata,
}

/// Sum-side assembly from enumerated vertices, all to p-order `N`.
pub struct Assembly<'a> {
    store: &'a VertexStore,
    p_order: i64,
}

fn legs(l: &Partition, m: &Partition, n: &Partition) -> LegConfig {
    LegConfig::new(l.clone(), m.clone(), n.clone())
}

fn ordered_sum(terms: Vec<PSeries>) -> PSeries {
    terms.iter().fold(PSeries::zero(), |acc, t| acc.add(t))
}

impl<'a> Assembly<'a> {
    pub fn new(store: &'a VertexStore, p_order: i64) -> Result<Self> {
        if p_order < 1 {
            return Err(Error::Precondition(format!("p-order must be at least 1, got {p_order}")));
        }
        Ok(Assembly { store, p_order })
    }

    pub fn p_order(&self) -> i64 {
        self.p_order
    }

    pub fn store(&self) -> &VertexStore {
        self.store
    }

    pub fn tilde(&self, l: &Partition, m: &Partition, n: &Partition) -> Result<PSeries> {
        self.store.tilde(&legs(l, m, n), self.p_order)
    }

    fn empty_vertex(&self) -> Result<PSeries> {
        let e = Partition::empty();
        self.tilde(&e, &e, &e)
    }

    fn box_vertex(&self) -> Result<PSeries> {
        let e = Partition::empty();
        self.tilde(&Partition::single_box(), &e, &e)
    }

    /// `F₁ = p^{1/2} Ṽ_{□∅∅} / Ṽ_{∅∅∅}`.
    pub fn f1(&self) -> Result<PSeries> {
        Ok(self.box_vertex()?.mul(&self.empty_vertex()?.invert()?).shift(1))
    }

    /// `F₂ = Ṽ_{∅∅∅}`.
    pub fn f2(&self) -> Result<PSeries> {
        self.empty_vertex()
    }

    /// `g(a) = Σ_{λ⊢a} p^{−λ₁} Ṽ_{∅∅∅} Ṽ_{λ□∅} / (Ṽ_{□∅∅} Ṽ_{λ∅∅})`, `g(0) = 1`.
    pub fn g(&self, a: usize) -> Result<PSeries> {
        if a == 0 {
            return Ok(PSeries::one());
        }
        let e = Partition::empty();
        let b = Partition::single_box();
        let outer = self.empty_vertex()?.mul(&self.box_vertex()?.invert()?);
        let terms = enumerate_partitions(a)
            .par_iter()
            .map(|lam| {
                let ratio = self.tilde(lam, &b, &e)?.mul(&self.tilde(lam, &e, &e)?.invert()?);
                Ok(ratio.shift(-2 * lam.first_part() as i64))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(outer.mul(&ordered_sum(terms)))
    }

    /// `h(b) = Σ_{μ⊢b} p^{−μ₁} Ṽ_{μμ′∅} Ṽ_{μ□∅} / (Ṽ_{□∅∅} Ṽ_{μ∅∅})`, `h(0) = 1`.
    pub fn h(&self, b: usize) -> Result<PSeries> {
        if b == 0 {
            return Ok(PSeries::one());
        }
        let e = Partition::empty();
        let sq = Partition::single_box();
        let outer = self.box_vertex()?.invert()?;
        let terms = enumerate_partitions(b)
            .par_iter()
            .map(|mu| {
                let num = self.tilde(mu, &mu.conjugate(), &e)?.mul(&self.tilde(mu, &sq, &e)?);
                let term = num.mul(&self.tilde(mu, &e, &e)?.invert()?);
                Ok(term.shift(-2 * mu.first_part() as i64))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(outer.mul(&ordered_sum(terms)))
    }

    /// `g_fib(a)`: the number of partitions of `a`.
    pub fn g_fib(&self, a: usize) -> PSeries {
        PSeries::exact(HalfLaurent::monomial(0, enumerate_partitions(a).len()))
    }

    /// `h_fib(b) = Σ_{μ⊢b} Ṽ_{μμ′∅} / Ṽ_{∅∅∅}`.
    pub fn h_fib(&self, b: usize) -> Result<PSeries> {
        if b == 0 {
            return Ok(PSeries::one());
        }
        let e = Partition::empty();
        let terms = enumerate_partitions(b)
            .par_iter()
            .map(|mu| self.tilde(mu, &mu.conjugate(), &e))
            .collect::<Result<Vec<_>>>()?;
        Ok(ordered_sum(terms).mul(&self.empty_vertex()?.invert()?))
    }

    fn q_series(&self, q_order: usize, f: impl Fn(usize) -> Result<PSeries>) -> Result<PQSeries> {
        PQSeries::from_coeffs((0..=q_order).map(f).collect::<Result<_>>()?)
    }

    /// `Σ_a g(a) qᵃ`.
    pub fn g_series(&self, q_order: usize) -> Result<PQSeries> {
        self.q_series(q_order, |a| self.g(a))
    }

    /// `Σ_b h(b) qᵇ`.
    pub fn h_series(&self, q_order: usize) -> Result<PQSeries> {
        self.q_series(q_order, |b| self.h(b))
    }

    /// `Σ_b h_fib(b) qᵇ`.
    pub fn h_fib_series(&self, q_order: usize) -> Result<PQSeries> {
        self.q_series(q_order, |b| self.h_fib(b))
    }

    /// `Σ_λ q^{|λ|}`.
    pub fn partition_series(&self, q_order: usize) -> PQSeries {
        PQSeries::from_coeffs((0..=q_order).map(|a| self.g_fib(a)).collect()).expect("nonempty")
    }

    /// `f_d(Σ aᵢxᵢ + Σ bⱼyⱼ)`.
    pub fn f_d(&self, cfg: &PointConfig, surf: &SurfaceData, mode: FdMode) -> Result<PSeries> {
        match mode {
            FdMode::Factored => self.f_d_factored(cfg, surf),
            FdMode::Strata => self.f_d_strata(cfg, surf),
        }
    }

    fn f_d_factored(&self, cfg: &PointConfig, surf: &SurfaceData) -> Result<PSeries> {
        let mut acc = self.f1()?.pow(surf.e_b)?.mul(&self.f2()?.pow(surf.e_s)?);
        for &a in &cfg.a {
            acc = acc.mul(&self.g(a)?);
        }
        for &b in &cfg.b {
            acc = acc.mul(&self.h(b)?);
        }
        Ok(acc)
    }

    fn f_d_strata(&self, cfg: &PointConfig, surf: &SurfaceData) -> Result<PSeries> {
        let e = Partition::empty();
        let sq = Partition::single_box();
        let (n, m) = (cfg.a.len() as i64, cfg.b.len() as i64);
        // e(W) = e(S) − e(B) + n and e(B°) = e(B) − n − m
        let common = self.empty_vertex()?.pow(surf.e_s - surf.e_b + n)?.mul(&self.box_vertex()?.pow(surf.e_b - n - m)?);

        // one local factor per choice of partition at each point
        let smooth: Vec<Vec<(usize, PSeries)>> = cfg
            .a
            .iter()
            .map(|&a| {
                enumerate_partitions(a)
                    .iter()
                    .map(|lam| {
                        let local = self.tilde(&sq, &e, lam)?.mul(&self.tilde(&e, &e, lam)?.invert()?);
                        Ok((lam.first_part(), local))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let nodal: Vec<Vec<(usize, PSeries)>> = cfg
            .b
            .iter()
            .map(|&b| {
                enumerate_partitions(b)
                    .iter()
                    .map(|mu| {
                        let local = self
                            .tilde(&sq, &e, mu)?
                            .mul(&self.tilde(&mu.conjugate(), &e, mu)?)
                            .mul(&self.tilde(&e, &e, mu)?.invert()?);
                        Ok((mu.first_part(), local))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;

        let slots: Vec<&Vec<(usize, PSeries)>> = smooth.iter().chain(nodal.iter()).collect();
        let mut total = PSeries::zero();
        let mut choice = vec![0usize; slots.len()];
        loop {
            // p^{χ(O_C)} with χ(O_C) = e(B)/2 − Σλ₁ − Σμ₁
            let mut chi = surf.chi_ob();
            let mut term = common.clone();
            for (slot, &k) in slots.iter().zip(&choice) {
                let (first, local) = &slot[k];
                chi -= *first as i64;
                term = term.mul(local);
            }
            total = total.add(&term.shift(2 * chi));

            // odometer over the Cartesian product of partition choices
            let mut i = 0;
            while i < slots.len() {
                choice[i] += 1;
                if choice[i] < slots[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == slots.len() {
                break;
            }
        }
        Ok(total)
    }

    /// `F₁^{e(B)} F₂^{e(S)} (Σ g(a)qᵃ)^{e(B)−e(S)} (Σ h(b)qᵇ)^{e(S)}`.
    pub fn dt_hat_sum(&self, surf: &SurfaceData, q_order: usize) -> Result<PQSeries> {
        self.warm_up(q_order)?;
        let front = self.f1()?.pow(surf.e_b)?.mul(&self.f2()?.pow(surf.e_s)?);
        let g = self.g_series(q_order)?.power(surf.e_b - surf.e_s)?;
        let h = self.h_series(q_order)?.power(surf.e_s)?;
        Ok(PQSeries::constant(front, q_order).mul(&g).mul(&h))
    }

    /// `Ṽ_{∅∅∅}^{e(S)} (Σ_λ q^{|λ|})^{e(B)−e(S)} (Σ h_fib(b) qᵇ)^{e(S)}`.
    pub fn dt_fib_sum(&self, surf: &SurfaceData, q_order: usize) -> Result<PQSeries> {
        self.warm_up(q_order)?;
        let front = self.f2()?.pow(surf.e_s)?;
        let parts = self.partition_series(q_order).power(surf.e_b - surf.e_s)?;
        let h = self.h_fib_series(q_order)?.power(surf.e_s)?;
        Ok(PQSeries::constant(front, q_order).mul(&parts).mul(&h))
    }

    /// Enumerates, in parallel, every vertex the sums up to `q_order` use.
    pub fn warm_up(&self, q_order: usize) -> Result<()> {
        let e = Partition::empty();
        let sq = Partition::single_box();
        let mut needed = vec![legs(&e, &e, &e), legs(&sq, &e, &e)];
        for d in 1..=q_order {
            for lam in enumerate_partitions(d) {
                needed.push(legs(&lam, &e, &e));
                needed.push(legs(&lam, &sq, &e));
                needed.push(legs(&lam, &lam.conjugate(), &e));
            }
        }
        needed.par_iter().try_for_each(|cfg| self.store.get(cfg, self.p_order).map(|_| ()))
    }
}
