use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::HalfLaurent;
use crate::error::{Error, Result};

/// A Laurent series in `p^{1/2}` known through a finite prefix.
///
/// The true series vanishes below `floor` and agrees with `value` at every
/// exponent `≤ ceil`; above `ceil` nothing is known. `ceil = None` means the
/// value is exact. All exponents are counted in halves of a power of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSeries {
    value: HalfLaurent,
    floor: i64,
    ceil: Option<i64>,
}

fn min_ceil(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn add_ceil(a: i64, b: Option<i64>) -> Option<i64> {
    b.map(|b| a + b)
}

impl PSeries {
    /// Builds a windowed series, rejecting support outside `[floor, ceil]`.
    /// `floor > ceil` is allowed: the series is then known to vanish through
    /// `ceil`.
    pub fn new(value: HalfLaurent, floor: i64, ceil: Option<i64>) -> Result<Self> {
        if let Some(c) = ceil {
            if value.max_exp().is_some_and(|m| m > c) {
                return Err(Error::Malformed(format!("term above ceiling {c}")));
            }
        }
        if value.min_exp().is_some_and(|m| m < floor) {
            return Err(Error::Malformed(format!("term below floor {floor}")));
        }
        Ok(Self::raw(value, floor, ceil))
    }

    fn raw(value: HalfLaurent, floor: i64, ceil: Option<i64>) -> Self {
        let floor = match (value.min_exp(), ceil) {
            (Some(m), _) => m,
            // the floor of an exact zero carries no information
            (None, None) => 0,
            (None, Some(_)) => floor,
        };
        PSeries { value, floor, ceil }
    }

    pub fn exact(value: HalfLaurent) -> Self {
        Self::raw(value, 0, None)
    }

    pub fn zero() -> Self {
        Self::exact(HalfLaurent::zero())
    }

    pub fn one() -> Self {
        Self::exact(HalfLaurent::one())
    }

    /// `Σ c_k p^k` for `k = 0..len`, known exactly through `p^{len−1}`.
    pub fn from_p_prefix<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Result<Self> {
        let value = HalfLaurent::from_p_coeffs(0, coeffs);
        let ceil = 2 * (coeffs.len() as i64 - 1);
        Self::new(value, 0, Some(ceil))
    }

    pub fn value(&self) -> &HalfLaurent {
        &self.value
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn ceil(&self) -> Option<i64> {
        self.ceil
    }

    pub fn is_exact(&self) -> bool {
        self.ceil.is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.ceil.is_none() && self.value.is_zero()
    }

    /// Lowers the ceiling to `ceil`. Exact monomials (and exact zero) stay
    /// exact when they fit under it, since their inverses are exact too.
    pub fn limit(&self, ceil: i64) -> Self {
        let fits = self.value.max_exp().is_none_or(|m| m <= ceil);
        if self.is_exact() && fits && (self.value.is_zero() || self.value.is_monomial()) {
            return self.clone();
        }
        let mut value = self.value.clone();
        value.truncate_above(ceil);
        Self::raw(value, self.floor, min_ceil(self.ceil, Some(ceil)))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let rhs = if negate { other.neg() } else { other.clone() };
        if self.is_exact_zero() {
            return rhs;
        }
        if rhs.is_exact_zero() {
            return self.clone();
        }
        let ceil = min_ceil(self.ceil, rhs.ceil);
        let mut value = &self.value + &rhs.value;
        if let Some(c) = ceil {
            value.truncate_above(c);
        }
        Self::raw(value, self.floor.min(rhs.floor), ceil)
    }

    pub fn neg(&self) -> Self {
        PSeries { value: -&self.value, floor: self.floor, ceil: self.ceil }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let ceil = min_ceil(add_ceil(self.floor, other.ceil), add_ceil(other.floor, self.ceil));
        let value = self.value.mul_truncated(&other.value, ceil);
        Self::raw(value, self.floor + other.floor, ceil)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        PSeries { value: self.value.scale(k), floor: self.floor, ceil: self.ceil }
    }

    /// Multiplies by `p^{half_shift/2}`.
    pub fn shift(&self, half_shift: i64) -> Self {
        PSeries {
            value: self.value.shift(half_shift),
            floor: self.floor + half_shift,
            ceil: self.ceil.map(|c| c + half_shift),
        }
    }

    /// Multiplicative inverse. The lowest known term must be `±p^{e/2}`.
    pub fn invert(&self) -> Result<Self> {
        let Some((e0, c0)) = self.value.leading() else {
            return Err(if self.is_exact() {
                Error::ZeroSeries
            } else {
                Error::WindowExhausted("no nonzero coefficient is known, cannot invert".into())
            });
        };
        if !c0.abs().is_one() {
            return Err(Error::NonUnitLeading(c0.to_string()));
        }
        let c0 = c0.clone();
        let Some(ceil) = self.ceil else {
            if self.value.is_monomial() {
                return Ok(Self::exact(HalfLaurent::monomial(-e0, c0)));
            }
            return Err(Error::InexactInverse);
        };
        // unit u = value · p^{−e0/2} known through relative order `prec`;
        // v = u^{-1} by the triangular recurrence v_k = −c0 Σ_{j≥1} u_j v_{k−j}.
        let prec = (ceil - e0) as usize;
        let unit: Vec<(usize, BigInt)> =
            self.value.terms().skip(1).map(|(e, c)| ((e - e0) as usize, c.clone())).collect();
        let mut inv = vec![BigInt::zero(); prec + 1];
        inv[0] = c0.clone();
        for k in 1..=prec {
            let mut acc = BigInt::zero();
            for (j, uj) in &unit {
                if *j > k {
                    break;
                }
                acc += uj * &inv[k - j];
            }
            inv[k] = -(&c0 * acc);
        }
        let value = HalfLaurent::from_terms(inv.into_iter().enumerate().map(|(k, c)| (k as i64 - e0, c)));
        Ok(Self::raw(value, -e0, Some(ceil - 2 * e0)))
    }

    /// `self^k`, inverting first when `k < 0`.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.invert()? } else { self.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = Self::one();
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

    /// `p ↦ −p`; fails on genuinely half-integer exponents.
    pub fn substitute_neg_p(&self) -> Result<Self> {
        let value = self.value.negate_p().ok_or_else(|| {
            let bad = self.value.terms().map(|(e, _)| e).find(|e| e % 2 != 0).unwrap_or(0);
            Error::HalfIntegerExponent(bad)
        })?;
        Ok(PSeries { value, floor: self.floor, ceil: self.ceil })
    }

    /// The range `[lo, hi]` on which both series are known, or `None` when
    /// both are exact.
    pub fn common_window(&self, other: &Self) -> (i64, Option<i64>) {
        let lo = match (self.is_exact_zero(), other.is_exact_zero()) {
            (true, true) => 0,
            (true, false) => other.floor,
            (false, true) => self.floor,
            (false, false) => self.floor.min(other.floor),
        };
        (lo, min_ceil(self.ceil, other.ceil))
    }

    /// First exponent in the common window where the two disagree.
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        let (lo, hi) = self.common_window(other);
        let hi = hi.unwrap_or_else(|| {
            let a = self.value.max_exp().unwrap_or(lo);
            let b = other.value.max_exp().unwrap_or(lo);
            a.max(b)
        });
        self.value.first_difference(&other.value, lo, hi)
    }

    /// Coefficient of `p^{half_exp/2}`, or `None` when outside the known range.
    pub fn coeff(&self, half_exp: i64) -> Option<BigInt> {
        if self.ceil.is_some_and(|c| half_exp > c) {
            return None;
        }
        Some(self.value.coeff(half_exp))
    }
}

impl fmt::Display for PSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        match self.ceil {
            Some(c) if c % 2 == 0 => write!(f, " + O(p^{})", c / 2 + 1),
            Some(c) => write!(f, " + O(p^({}/2))", c + 1),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(coeffs: &[i64]) -> PSeries {
        PSeries::exact(HalfLaurent::from_p_coeffs(0, coeffs))
    }

    #[test]
    fn geometric_inverse() {
        let a = lin(&[1, -1]).limit(8);
        let inv = a.invert().unwrap();
        assert_eq!(inv.value(), &HalfLaurent::from_p_coeffs(0, &[1, 1, 1, 1, 1]));
        assert_eq!(inv.ceil(), Some(8));
        let back = inv.mul(&a);
        assert!(back.first_difference(&PSeries::one()).is_none());
    }

    // p^{1/2} − p^{−1/2} = −p^{−1/2}(1 − p), so its inverse is −p^{1/2}(1 + p + …).
    #[test]
    fn theta_prefactor_inverse() {
        let t = PSeries::exact(HalfLaurent::from_terms([(1, 1), (-1, -1)])).limit(9);
        let inv = t.invert().unwrap();
        assert_eq!(inv.floor(), 1);
        assert_eq!(inv.value(), &HalfLaurent::from_terms((0..6).map(|k| (1 + 2 * k, -1))));
        assert!(inv.mul(&t).first_difference(&PSeries::one()).is_none());

        let sq = t.pow(-2).unwrap();
        assert_eq!(sq.value().coeff(2), BigInt::from(1));
        assert_eq!(sq.value().coeff(4), BigInt::from(2));
        assert_eq!(sq.value().coeff(6), BigInt::from(3));
    }

    #[test]
    fn inverse_errors() {
        assert!(matches!(lin(&[2, 1]).limit(4).invert(), Err(Error::NonUnitLeading(_))));
        assert!(matches!(PSeries::zero().invert(), Err(Error::ZeroSeries)));
        assert!(matches!(lin(&[1, 1]).invert(), Err(Error::InexactInverse)));
        assert_eq!(
            PSeries::exact(HalfLaurent::monomial(3, -1)).invert().unwrap(),
            PSeries::exact(HalfLaurent::monomial(-3, -1))
        );
    }

    #[test]
    fn window_rules() {
        let a = PSeries::new(HalfLaurent::from_p_coeffs(-1, &[1, 2]), -2, Some(6)).unwrap();
        let b = PSeries::new(HalfLaurent::from_p_coeffs(0, &[1, 1]), 0, Some(4)).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.floor(), -2);
        assert_eq!(ab.ceil(), Some(2)); // min(−2 + 4, 0 + 6)
        let s = a.add(&b);
        assert_eq!((s.floor(), s.ceil()), (-2, Some(4)));
        let vanishing = PSeries::new(HalfLaurent::zero(), 3, Some(1)).unwrap();
        assert_eq!(vanishing.coeff(0), Some(0.into()));
        assert_eq!(vanishing.coeff(2), None);
    }

    #[test]
    fn exact_zero_absorbs() {
        let a = lin(&[1, 2]).limit(2);
        assert!(a.mul(&PSeries::zero()).is_exact_zero());
        assert_eq!(a.add(&PSeries::zero()), a);
    }
}
