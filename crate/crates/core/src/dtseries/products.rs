use super::SurfaceData;
use crate::error::Result;
use crate::series::{standard_series, HalfLaurent, PQSeries, PSeries, StandardSeries};

fn factor(p_exp: i64, q_exp: usize, inverse: bool, q_order: usize, p_order: i64) -> Result<PQSeries> {
    standard_series(StandardSeries::LinearFactor { p_exp, q_exp, inverse }, q_order, p_order)
}

/// `M(p) ∏_{d≥1} M(p, q^d)`.
fn macmahon_tower(q_order: usize, p_order: i64) -> Result<PQSeries> {
    let mut acc = standard_series(StandardSeries::MacMahonP, q_order, p_order)?;
    for d in 1..=q_order {
        acc = acc.mul(&standard_series(StandardSeries::MacMahon { q_power: d }, q_order, p_order)?);
    }
    Ok(acc)
}

/// `∏_{d≥1} (1 − q^d) / ((1 − pq^d)(1 − p^{−1}q^d))`, exact in every q-degree.
pub(crate) fn theta_tail(q_order: usize, p_order: i64) -> Result<PQSeries> {
    let mut acc = PQSeries::one(q_order);
    for d in 1..=q_order {
        acc = acc
            .mul(&factor(0, d, false, q_order, p_order)?)
            .mul(&factor(1, d, true, q_order, p_order)?)
            .mul(&factor(-1, d, true, q_order, p_order)?);
    }
    Ok(acc)
}

/// `(p^{1/2} − p^{−1/2})^k`, windowed at `p^{p_order}` when `k < 0`.
fn half_binomial_power(k: i64, p_order: i64) -> Result<PSeries> {
    let base = PSeries::exact(HalfLaurent::from_terms([(1, 1), (-1, -1)]));
    if k >= 0 {
        base.pow(k)
    } else {
        base.limit(2 * p_order).pow(k)
    }
}

/// The closed product for `DT̂(X)`:
/// `{M(p) ∏ M(p,q^d)/(1−q^d)}^{e(S)} {(p^{1/2}−p^{−1/2})^{−1} ∏ (1−q^d)/((1−pq^d)(1−p^{−1}q^d))}^{e(B)}`.
pub fn dt_hat_product(surf: &SurfaceData, q_order: usize, p_order: i64) -> Result<PQSeries> {
    let euler = standard_series(StandardSeries::EulerProduct, q_order, p_order)?;
    let fib = macmahon_tower(q_order, p_order)?.mul(&euler.invert()?);
    let base = PQSeries::constant(half_binomial_power(-surf.e_b, p_order)?, q_order);
    Ok(fib.power(surf.e_s)?.mul(&base).mul(&theta_tail(q_order, p_order)?.power(surf.e_b)?))
}

/// The closed product for `DT̂_fib(X)`: `{M(p) ∏ M(p,q^d)}^{e(S)} {∏ (1−q^d)^{−1}}^{e(B)}`.
pub fn dt_fib_product(surf: &SurfaceData, q_order: usize, p_order: i64) -> Result<PQSeries> {
    let euler = standard_series(StandardSeries::EulerProduct, q_order, p_order)?;
    Ok(macmahon_tower(q_order, p_order)?.power(surf.e_s)?.mul(&euler.power(-surf.e_b)?))
}

/// `(q^{−1/24} η)^{−e(S)} Θ^{−e(B)}`.
pub fn connected_jacobi(surf: &SurfaceData, q_order: usize, p_order: i64) -> Result<PQSeries> {
    let eta = standard_series(StandardSeries::Eta, q_order, p_order)?.with_q_offset(-1);
    let theta = standard_series(StandardSeries::Theta, q_order, p_order)?;
    Ok(eta.power(-surf.e_s)?.mul(&theta.power(-surf.e_b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_coeffs(s: &PSeries, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).map(|k| i64::try_from(s.coeff(2 * k).expect("known")).unwrap()).collect()
    }

    #[test]
    fn k3_constant_term() {
        // M(p)^{24} · p(1−p)^{−2}: lowest term p
        let s = dt_hat_product(&SurfaceData::k3(), 1, 4).unwrap();
        let c0 = s.coeff(0);
        assert_eq!(c0.value().leading(), Some((2, &1.into())));
        // p(1 + 2p + …)(1 + 24p + …) = p + 26p² + …
        assert_eq!(p_coeffs(c0, 1, 2), vec![1, 26]);
    }

    #[test]
    fn trivial_surface() {
        let s = SurfaceData::new(0, 0).unwrap();
        assert_eq!(dt_hat_product(&s, 3, 4).unwrap(), PQSeries::one(3));
        assert_eq!(dt_fib_product(&s, 3, 4).unwrap(), PQSeries::one(3));
        assert_eq!(connected_jacobi(&s, 3, 4).unwrap(), PQSeries::one(3));
    }

    #[test]
    fn fiber_product_without_singular_fibers_is_p_free() {
        let s = dt_fib_product(&SurfaceData::new(2, 0).unwrap(), 4, 3).unwrap();
        for (d, w) in [1, 2, 5, 10, 20].iter().enumerate() {
            assert_eq!(*s.coeff(d).value(), HalfLaurent::monomial(0, *w));
        }
    }

    #[test]
    fn kkv_constant_term() {
        let s = connected_jacobi(&SurfaceData::k3(), 2, 6).unwrap();
        assert_eq!(p_coeffs(s.coeff(0), 1, 6), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(s.q_offset_24(), 0);
    }
}
