use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{HalfLaurent, PSeries};
use crate::error::{Error, Result};

/// The aggregate known range of a series: every coefficient with exponent in
/// `[lo, hi]` (half-units) is exact at every q-degree. `hi = None` means no
/// upper limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PWindow {
    pub lo: i64,
    pub hi: Option<i64>,
}

/// A power series in `q` truncated at `q^{q_order}` whose coefficients are
/// windowed Laurent series in `p^{1/2}`.
///
/// `q_offset_24` records an overall factor `q^{q_offset_24/24}` kept outside
/// the coefficients (the prefactor of `η`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PQSeries {
    coeffs: Vec<PSeries>,
    q_offset_24: i64,
}

/// Kinds of ring operations, for callers that dispatch on a tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Where two series first disagree: `(q-degree, half-exponent, lhs, rhs)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub q_degree: usize,
    pub exp_half: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl PQSeries {
    /// Builds a series from its q-coefficients `c_0, …, c_{q_order}`.
    pub fn from_coeffs(coeffs: Vec<PSeries>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Malformed("a series needs at least the q^0 coefficient".into()));
        }
        Ok(PQSeries { coeffs, q_offset_24: 0 })
    }

    /// A q-free series.
    pub fn constant(c: PSeries, q_order: usize) -> Self {
        let mut coeffs = vec![PSeries::zero(); q_order + 1];
        coeffs[0] = c;
        PQSeries { coeffs, q_offset_24: 0 }
    }

    pub fn one(q_order: usize) -> Self {
        Self::constant(PSeries::one(), q_order)
    }

    /// Exact series from `(q-degree, half-exponent, coefficient)` triples.
    pub fn from_exact_terms<T: Into<BigInt>>(
        q_order: usize,
        terms: impl IntoIterator<Item = (usize, i64, T)>,
    ) -> Self {
        let mut polys = vec![HalfLaurent::zero(); q_order + 1];
        for (d, e, c) in terms {
            if d <= q_order {
                polys[d].add_term(e, c.into());
            }
        }
        PQSeries { coeffs: polys.into_iter().map(PSeries::exact).collect(), q_offset_24: 0 }
    }

    pub fn q_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q_offset_24(&self) -> i64 {
        self.q_offset_24
    }

    /// Multiplies by the symbolic prefactor `q^{k/24}`.
    pub fn with_q_offset(mut self, k: i64) -> Self {
        self.q_offset_24 += k;
        self
    }

    pub fn coeff(&self, d: usize) -> &PSeries {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[PSeries] {
        &self.coeffs
    }

    /// Aggregate window: lowest floor and lowest ceiling over all q-degrees.
    pub fn p_window(&self) -> PWindow {
        let live = self.coeffs.iter().filter(|c| !c.is_exact_zero());
        let lo = live.clone().map(PSeries::floor).min().unwrap_or(0);
        let hi = live.filter_map(PSeries::ceil).min();
        PWindow { lo, hi }
    }

    pub fn truncate_q(&self, q_order: usize) -> Self {
        let n = q_order.min(self.q_order());
        PQSeries { coeffs: self.coeffs[..=n].to_vec(), q_offset_24: self.q_offset_24 }
    }

    /// Lowers every p-ceiling to `hi_half`; see [`PSeries::limit`].
    pub fn limit_p(&self, hi_half: i64) -> Result<Self> {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.limit(hi_half)).collect())
            .map(|s| s.with_q_offset(self.q_offset_24))
    }

    pub fn ring_op(kind: RingOp, a: &Self, b: &Self) -> Result<Self> {
        match kind {
            RingOp::Add => a.add(b),
            RingOp::Sub => a.sub(b),
            RingOp::Mul => Ok(a.mul(b)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, PSeries::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, PSeries::sub)
    }

    fn zip(&self, other: &Self, f: impl Fn(&PSeries, &PSeries) -> PSeries) -> Result<Self> {
        if self.q_offset_24 != other.q_offset_24 {
            return Err(Error::OffsetMismatch(self.q_offset_24, other.q_offset_24));
        }
        let n = self.q_order().min(other.q_order());
        let coeffs = (0..=n).map(|d| f(&self.coeffs[d], &other.coeffs[d])).collect();
        Ok(PQSeries { coeffs, q_offset_24: self.q_offset_24 })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.q_order().min(other.q_order());
        let coeffs = (0..=n)
            .map(|d| {
                (0..=d).fold(PSeries::zero(), |acc, i| {
                    acc.add(&self.coeffs[i].mul(&other.coeffs[d - i]))
                })
            })
            .collect();
        PQSeries { coeffs, q_offset_24: self.q_offset_24 + other.q_offset_24 }
    }

    pub fn neg(&self) -> Self {
        PQSeries { coeffs: self.coeffs.iter().map(PSeries::neg).collect(), q_offset_24: self.q_offset_24 }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        PQSeries { coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(), q_offset_24: self.q_offset_24 }
    }

    /// Multiplies by `p^{half_shift/2}`.
    pub fn shift_p(&self, half_shift: i64) -> Self {
        PQSeries {
            coeffs: self.coeffs.iter().map(|c| c.shift(half_shift)).collect(),
            q_offset_24: self.q_offset_24,
        }
    }

    /// Multiplies by `q^k`, dropping what falls beyond the q-order.
    pub fn shift_q(&self, k: usize) -> Self {
        let n = self.q_order();
        let coeffs = (0..=n)
            .map(|d| if d < k { PSeries::zero() } else { self.coeffs[d - k].clone() })
            .collect();
        PQSeries { coeffs, q_offset_24: self.q_offset_24 }
    }

    /// Inverse via the q-recursion `B_0 = A_0^{-1}`,
    /// `B_d = −B_0 Σ_{i=1}^{d} A_i B_{d−i}`.
    pub fn invert(&self) -> Result<Self> {
        let b0 = self.coeffs[0].invert()?;
        let mut out: Vec<PSeries> = vec![b0.clone()];
        for d in 1..=self.q_order() {
            let acc = (1..=d).fold(PSeries::zero(), |acc, i| acc.add(&self.coeffs[i].mul(&out[d - i])));
            out.push(b0.mul(&acc).neg());
        }
        Ok(PQSeries { coeffs: out, q_offset_24: -self.q_offset_24 })
    }

    /// `A^k` by repeated squaring; negative `k` inverts first.
    pub fn power(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.invert()? } else { self.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = Self::one(self.q_order());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// `p ↦ −p` coefficientwise.
    pub fn substitute_neg_p(&self) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(PSeries::substitute_neg_p).collect::<Result<_>>()?;
        Ok(PQSeries { coeffs, q_offset_24: self.q_offset_24 })
    }

    /// Compares on the common q-order and, per degree, on the common p-range.
    /// With `window = Some((lo, hi))` only exponents in `[lo, hi]` are compared
    /// and both sides must be known through `hi` at every degree.
    pub fn compare(&self, other: &Self, window: Option<(i64, i64)>) -> Result<Option<Discrepancy>> {
        if self.q_offset_24 != other.q_offset_24 {
            return Err(Error::OffsetMismatch(self.q_offset_24, other.q_offset_24));
        }
        let n = self.q_order().min(other.q_order());
        for d in 0..=n {
            let (a, b) = (&self.coeffs[d], &other.coeffs[d]);
            let (lo, hi) = a.common_window(b);
            let (lo, hi) = match window {
                Some((wlo, whi)) => {
                    if hi.is_some_and(|h| h < whi) {
                        return Err(Error::WindowExhausted(format!(
                            "q^{d} is known only through p^({}/2), below the requested p^({}/2)",
                            hi.unwrap_or_default(),
                            whi
                        )));
                    }
                    (wlo, whi)
                }
                None => {
                    let top = hi.unwrap_or_else(|| {
                        let m = |c: &PSeries| c.value().max_exp().unwrap_or(lo);
                        m(a).max(m(b))
                    });
                    (lo, top)
                }
            };
            if let Some(e) = a.value().first_difference(b.value(), lo, hi) {
                return Ok(Some(Discrepancy {
                    q_degree: d,
                    exp_half: e,
                    lhs: a.value().coeff(e),
                    rhs: b.value().coeff(e),
                }));
            }
        }
        Ok(None)
    }

    /// Equality on the common window (see [`PQSeries::compare`]).
    pub fn agrees_with(&self, other: &Self) -> bool {
        matches!(self.compare(other, None), Ok(None))
    }

    /// Per-degree windows `(floor, ceil)` shared by two series.
    pub fn common_windows(&self, other: &Self) -> Vec<(i64, Option<i64>)> {
        let n = self.q_order().min(other.q_order());
        (0..=n).map(|d| self.coeffs[d].common_window(&other.coeffs[d])).collect()
    }
}

impl fmt::Display for PQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q_offset_24 != 0 {
            write!(f, "q^({}/24) · ", self.q_offset_24)?;
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.value().is_zero() && c.is_exact() {
                continue;
            }
            if !first {
                f.write_str("\n  + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}] q")?,
                _ => write!(f, "[{c}] q^{d}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.q_order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(q_order: usize, terms: &[(usize, i64, i64)]) -> PQSeries {
        PQSeries::from_exact_terms(q_order, terms.iter().copied())
    }

    #[test]
    fn difference_of_squares() {
        let a = exact(2, &[(0, 0, 1), (1, 2, 1)]);
        let b = exact(2, &[(0, 0, 1), (1, 2, -1)]);
        let prod = PQSeries::ring_op(RingOp::Mul, &a, &b).unwrap();
        assert_eq!(prod, exact(2, &[(0, 0, 1), (2, 4, -1)]));
        let zero = PQSeries::from_exact_terms::<i64>(2, []);
        assert_eq!(PQSeries::ring_op(RingOp::Add, &a, &zero).unwrap(), a);
    }

    #[test]
    fn q_inverse_and_powers() {
        let a = exact(3, &[(0, 0, 1), (1, 0, -1)]);
        assert_eq!(a.invert().unwrap(), exact(3, &[(0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 0, 1)]));
        let b = exact(3, &[(0, 0, 1), (1, 0, 1)]);
        assert_eq!(b.power(-1).unwrap(), exact(3, &[(0, 0, 1), (1, 0, -1), (2, 0, 1), (3, 0, -1)]));
        assert_eq!(b.power(0).unwrap(), PQSeries::one(3));
    }

    #[test]
    fn neg_p_substitution() {
        let a = exact(1, &[(0, 2, 1), (0, 4, 2)]);
        assert_eq!(a.substitute_neg_p().unwrap(), exact(1, &[(0, 2, -1), (0, 4, 2)]));
        let q_only = exact(2, &[(0, 0, 1), (2, 0, 5)]);
        assert_eq!(q_only.substitute_neg_p().unwrap(), q_only);
        assert!(exact(0, &[(0, 1, 1)]).substitute_neg_p().is_err());
    }

    #[test]
    fn compare_reports_first_discrepancy() {
        let a = exact(2, &[(0, 0, 1), (2, 2, 3)]);
        let b = exact(2, &[(0, 0, 1), (2, 2, 4)]);
        let d = a.compare(&b, None).unwrap().unwrap();
        assert_eq!((d.q_degree, d.exp_half), (2, 2));
        assert_eq!((d.lhs, d.rhs), (BigInt::from(3), BigInt::from(4)));
        assert!(a.compare(&a, None).unwrap().is_none());
    }

    #[test]
    fn requested_window_must_be_known() {
        let a = PQSeries::constant(PSeries::from_p_prefix(&[1, 1, 3]).unwrap(), 0);
        assert!(a.compare(&a, Some((0, 4))).is_ok());
        assert!(matches!(a.compare(&a, Some((0, 6))), Err(Error::WindowExhausted(_))));
    }

    #[test]
    fn offsets_must_match() {
        let a = PQSeries::one(1).with_q_offset(1);
        assert!(a.add(&PQSeries::one(1)).is_err());
        assert_eq!(a.invert().unwrap().q_offset_24(), -1);
    }
}
