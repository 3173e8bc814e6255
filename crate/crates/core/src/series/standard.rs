//! Expansions of the named infinite products.
//!
//! Every constructor takes the q-order and the largest power of `p` to keep;
//! coefficients are declared known through `p^{p_order}` (exact monomials stay
//! exact, see [`PSeries::limit`]).

use super::{HalfLaurent, PQSeries, PSeries};
use crate::error::{Error, Result};

/// The products the library knows how to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardSeries {
    /// `M(p) = ∏_{m≥1} (1 − p^m)^{−m}`.
    MacMahonP,
    /// `M(p, q^d) = ∏_{m≥1} (1 − p^m q^d)^{−m}` for `d ≥ 1`.
    MacMahon { q_power: usize },
    /// `∏_{k≥1} (1 − q^k)`.
    EulerProduct,
    /// `η = q^{1/24} ∏ (1 − q^k)`, the prefactor kept as a q-offset.
    Eta,
    /// `Θ = (p^{1/2} − p^{−1/2}) ∏_{k≥1} (1 − p q^k)(1 − p^{−1} q^k)(1 − q^k)^{−2}`.
    Theta,
    /// `(1 − p^a q^b)^{±1}`.
    LinearFactor { p_exp: i64, q_exp: usize, inverse: bool },
}

/// `1 − p^a q^b`, exact.
fn binomial(p_exp: i64, q_exp: usize, q_order: usize) -> PQSeries {
    let mut terms = vec![(0usize, 0i64, 1i64)];
    terms.push((q_exp, 2 * p_exp, -1));
    PQSeries::from_exact_terms(q_order, terms)
}

fn linear_factor(p_exp: i64, q_exp: usize, inverse: bool, q_order: usize, hi: i64) -> Result<PQSeries> {
    if p_exp == 0 && q_exp == 0 {
        return Err(Error::Precondition("the factor 1 − p^0 q^0 vanishes".into()));
    }
    let f = binomial(p_exp, q_exp, q_order);
    if !inverse {
        return f.limit_p(hi);
    }
    if q_exp > 0 {
        // 1 + X + X² + … is finite in each q-degree
        return f.invert()?.limit_p(hi);
    }
    f.limit_p(hi)?.invert()?.limit_p(hi)
}

fn macmahon(q_power: usize, q_order: usize, p_order: i64) -> Result<PQSeries> {
    let hi = 2 * p_order;
    let mut acc = PQSeries::one(q_order);
    for m in 1..=p_order.max(0) {
        let factor = linear_factor(m, q_power, true, q_order, hi)?;
        acc = acc.mul(&factor.power(m)?).limit_p(hi)?;
    }
    acc.limit_p(hi)
}

fn euler_product(q_order: usize) -> PQSeries {
    let mut acc = PQSeries::one(q_order);
    for k in 1..=q_order {
        acc = acc.mul(&binomial(0, k, q_order));
    }
    acc
}

fn theta(q_order: usize, p_order: i64) -> Result<PQSeries> {
    let hi = 2 * p_order;
    let mut acc = PQSeries::from_exact_terms(q_order, [(0usize, 1i64, 1i64), (0, -1, -1)]);
    for k in 1..=q_order {
        acc = acc.mul(&binomial(1, k, q_order)).mul(&binomial(-1, k, q_order));
        let inv = binomial(0, k, q_order).invert()?;
        acc = acc.mul(&inv).mul(&inv);
    }
    acc.limit_p(hi)
}

/// Expands `kind` through `q^{q_order}`, keeping powers of `p` up to `p_order`.
pub fn standard_series(kind: StandardSeries, q_order: usize, p_order: i64) -> Result<PQSeries> {
    let hi = 2 * p_order;
    let out = match kind {
        StandardSeries::MacMahonP => {
            let mut acc = PSeries::one();
            for m in 1..=p_order.max(0) {
                let f = PSeries::exact(HalfLaurent::from_terms([(0, 1), (2 * m, -1)])).limit(hi);
                acc = acc.mul(&f.pow(-m)?);
            }
            PQSeries::constant(acc.limit(hi), q_order)
        }
        StandardSeries::MacMahon { q_power } => {
            if q_power == 0 {
                return Err(Error::Precondition("use MacMahonP for M(p, 1)".into()));
            }
            macmahon(q_power, q_order, p_order)?
        }
        StandardSeries::EulerProduct => euler_product(q_order),
        StandardSeries::Eta => euler_product(q_order).with_q_offset(1),
        StandardSeries::Theta => theta(q_order, p_order)?,
        StandardSeries::LinearFactor { p_exp, q_exp, inverse } => {
            linear_factor(p_exp, q_exp, inverse, q_order, hi)?
        }
    };
    Ok(out)
}

/// `M(p)` as a q-free p-series through `p^{p_order}`.
pub fn macmahon_p(p_order: i64) -> Result<PSeries> {
    Ok(standard_series(StandardSeries::MacMahonP, 0, p_order)?.coeff(0).clone())
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    fn p_coeffs(s: &PSeries, from: i64, to: i64) -> Vec<i64> {
        (from..=to).map(|e| i64::try_from(s.value().coeff(2 * e)).unwrap()).collect()
    }

    #[test]
    fn macmahon_prefix() {
        let m = macmahon_p(5).unwrap();
        assert_eq!(p_coeffs(&m, 0, 5), vec![1, 1, 3, 6, 13, 24]);
        assert_eq!(m.ceil(), Some(10));
    }

    // Pentagonal-number oracle: multiply out ∏(1 − q^k) with plain integers.
    #[test]
    fn euler_product_matches_direct_multiplication() {
        let n = 12;
        let mut direct = vec![0i64; n + 1];
        direct[0] = 1;
        for k in 1..=n {
            for i in (k..=n).rev() {
                direct[i] -= direct[i - k];
            }
        }
        let e = standard_series(StandardSeries::EulerProduct, n, 0).unwrap();
        for (d, &c) in direct.iter().enumerate() {
            assert_eq!(e.coeff(d).value().coeff(0), BigInt::from(c));
            assert!(e.coeff(d).is_exact());
        }
        let four = standard_series(StandardSeries::EulerProduct, 4, 0).unwrap();
        let got: Vec<i64> = (0..=4).map(|d| i64::try_from(four.coeff(d).value().coeff(0)).unwrap()).collect();
        assert_eq!(got, vec![1, -1, -1, 0, 0]);
    }

    #[test]
    fn theta_leading_coefficient() {
        let t = standard_series(StandardSeries::Theta, 3, 4).unwrap();
        assert_eq!(t.coeff(0).value(), &HalfLaurent::from_terms([(1, 1), (-1, -1)]));
        // q¹: (p^{1/2} − p^{−1/2})(2 − p − p^{−1})
        assert_eq!(t.coeff(1).value(), &HalfLaurent::from_terms([(3, -1), (1, 3), (-1, -3), (-3, 1)]));
    }

    #[test]
    fn macmahon_in_q() {
        // q¹ coefficient of M(p, q) is Σ m p^m
        let m = standard_series(StandardSeries::MacMahon { q_power: 1 }, 2, 5).unwrap();
        assert_eq!(p_coeffs(m.coeff(1), 0, 5), vec![0, 1, 2, 3, 4, 5]);
        assert!(m.coeff(0).is_exact());
        // M(p, q²) has nothing in odd q-degrees
        let m2 = standard_series(StandardSeries::MacMahon { q_power: 2 }, 3, 4).unwrap();
        assert!(m2.coeff(1).value().is_zero());
        assert_eq!(p_coeffs(m2.coeff(2), 0, 4), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn macmahon_times_one_minus_p() {
        let m = standard_series(StandardSeries::MacMahonP, 0, 4).unwrap();
        let f = standard_series(StandardSeries::LinearFactor { p_exp: 1, q_exp: 0, inverse: false }, 0, 4).unwrap();
        let prod = m.mul(&f);
        assert_eq!(p_coeffs(prod.coeff(0), 0, 4), vec![1, 0, 2, 3, 7]);
        assert_eq!(prod.p_window(), super::super::PWindow { lo: 0, hi: Some(8) });
    }

    #[test]
    fn rejects_degenerate_factor() {
        let kind = StandardSeries::LinearFactor { p_exp: 0, q_exp: 0, inverse: true };
        assert!(standard_series(kind, 2, 3).is_err());
    }
}
