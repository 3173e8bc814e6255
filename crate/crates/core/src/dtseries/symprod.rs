//! Euler characteristics of symmetric products: for `g` with `g(0) = 1`,
//! `Σ_d q^d ∫_{Sym^d} g de = (Σ_a g(a) qᵃ)^{e}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Report;
use crate::error::{Error, Result};
use crate::series::{HalfLaurent, PQSeries, PSeries};

/// Multiplicity vectors `(m₁, m₂, …)` with `Σ j·m_j = d`.
fn multiplicities(d: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for m in 0..=remaining / j {
            cur[j - 1] = m;
            rec(remaining - m * j, j - 1, cur, out);
        }
        cur[j - 1] = 0;
    }
    let mut out = Vec::new();
    rec(d, d, &mut vec![0; d], &mut out);
    out
}

fn falling_factorial(e: i64, k: usize) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(e - i))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn check_table(g: &[HalfLaurent], q_order: usize) -> Result<()> {
    if g.first() != Some(&HalfLaurent::one()) {
        return Err(Error::Precondition("g(0) must equal 1".into()));
    }
    if g.len() <= q_order {
        return Err(Error::Precondition(format!("g is tabulated only through {}", g.len() - 1)));
    }
    Ok(())
}

/// `Σ_{Σ j m_j = d} ∏ g(j)^{m_j} · e(e−1)⋯(e−k+1) / ∏ m_j!`, `k = Σ m_j`.
pub fn symprod_lhs(g: &[HalfLaurent], e: i64, q_order: usize) -> Result<PQSeries> {
    check_table(g, q_order)?;
    let mut coeffs = Vec::with_capacity(q_order + 1);
    for d in 0..=q_order {
        let mut acc = HalfLaurent::zero();
        for ms in multiplicities(d) {
            let k: usize = ms.iter().sum();
            let denom = ms.iter().fold(BigInt::one(), |acc, &m| acc * factorial(m));
            let (weight, rem) = falling_factorial(e, k).div_rem(&denom);
            debug_assert!(rem.is_zero(), "multinomial weights are integral");
            if weight.is_zero() {
                continue;
            }
            let mut term = HalfLaurent::monomial(0, weight);
            for (j, &m) in ms.iter().enumerate() {
                for _ in 0..m {
                    term = &term * &g[j + 1];
                }
            }
            acc = &acc + &term;
        }
        coeffs.push(PSeries::exact(acc));
    }
    PQSeries::from_coeffs(coeffs)
}

/// `(Σ_a g(a) qᵃ)^e`.
pub fn symprod_rhs(g: &[HalfLaurent], e: i64, q_order: usize) -> Result<PQSeries> {
    check_table(g, q_order)?;
    let base = PQSeries::from_coeffs(g[..=q_order].iter().cloned().map(PSeries::exact).collect())?;
    base.power(e)
}

/// Both sides of the symmetric-product identity, compared to `q^{q_order}`.
pub fn symprod_check(g: &[HalfLaurent], e: i64, q_order: usize) -> Result<Report> {
    Report::compare(
        format!("symprod e={e}"),
        ("multinomial", symprod_lhs(g, e, q_order)?),
        ("power", symprod_rhs(g, e, q_order)?),
        None,
    )
}
