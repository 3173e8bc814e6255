use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A finite Laurent polynomial in `x = p^{1/2}` with integer coefficients.
///
/// Keys are exponents of `x`, i.e. exponents of `p` counted in halves. No zero
/// coefficient is ever stored, so the empty map is the zero polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c · p^{half_exp/2}`.
    pub fn monomial(half_exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(half_exp, coeff.into());
        out
    }

    /// `Σ coeffs[k] p^{start + k}` with integer `start` in whole powers of `p`.
    pub fn from_p_coeffs<T: Into<BigInt> + Clone>(start: i64, coeffs: &[T]) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out.add_term(2 * (start + k as i64), c.clone().into());
        }
        out
    }

    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Coefficient at `p^{half_exp/2}`.
    pub fn coeff(&self, half_exp: i64) -> BigInt {
        self.terms.get(&half_exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading(&self) -> Option<(i64, &BigInt)> {
        self.terms.iter().next().map(|(&e, c)| (e, c))
    }

    pub fn add_term(&mut self, half_exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(half_exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&half_exp);
        }
    }

    /// Drops every term with exponent above `max_half`.
    pub fn truncate_above(&mut self, max_half: i64) {
        self.terms.split_off(&(max_half.saturating_add(1)));
    }

    /// Multiplies by `p^{half_shift/2}`.
    pub fn shift(&self, half_shift: i64) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(&e, c)| (e + half_shift, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        HalfLaurent {
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    /// Product keeping only exponents `≤ max_half` (all of them for `None`).
    pub fn mul_truncated(&self, other: &Self, max_half: Option<i64>) -> Self {
        let mut out = Self::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &other.terms {
                let e = ea + eb;
                if let Some(m) = max_half {
                    if e > m {
                        // exponents of `other` are sorted
                        break;
                    }
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Whether every exponent is an integer power of `p`.
    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// `c_e ↦ (−1)^{e} c_e` on whole powers `p^e`; `None` if some exponent is
    /// a genuine half-integer.
    pub fn negate_p(&self) -> Option<Self> {
        if !self.has_integer_exponents() {
            return None;
        }
        Some(HalfLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, if (e / 2) % 2 == 0 { c.clone() } else { -c.clone() }))
                .collect(),
        })
    }

    /// Whether the coefficients agree at every exponent in `[lo, hi]`.
    pub fn agrees_on(&self, other: &Self, lo: i64, hi: i64) -> bool {
        self.first_difference(other, lo, hi).is_none()
    }

    /// Smallest exponent in `[lo, hi]` where the two polynomials differ.
    pub fn first_difference(&self, other: &Self, lo: i64, hi: i64) -> Option<i64> {
        if hi < lo {
            return None;
        }
        let keys = self.terms.range(lo..=hi).map(|(e, _)| *e);
        let other_keys = other.terms.range(lo..=hi).map(|(e, _)| *e);
        let mut candidates: Vec<i64> = keys.chain(other_keys).collect();
        candidates.sort_unstable();
        candidates.dedup();
        candidates.into_iter().find(|&e| self.coeff(e) != other.coeff(e))
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;

    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;

    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;

    fn neg(self) -> HalfLaurent {
        HalfLaurent {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;

    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        self.mul_truncated(rhs, None)
    }
}

fn fmt_exp(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    match e {
        0 => Ok(()),
        2 => f.write_str("p"),
        e if e % 2 == 0 => write!(f, "p^{}", e / 2),
        e => write!(f, "p^({e}/2)"),
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            fmt_exp(f, e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_zero_terms_stored() {
        let a = HalfLaurent::from_p_coeffs(0, &[1, -1]);
        let b = HalfLaurent::from_p_coeffs(0, &[-1, 1]);
        assert!((&a + &b).is_zero());
        assert_eq!((&a - &a).terms().count(), 0);
    }

    #[test]
    fn product_and_truncation() {
        let a = HalfLaurent::from_terms([(1, 1), (-1, -1)]); // p^{1/2} − p^{−1/2}
        let sq = &a * &a;
        assert_eq!(sq, HalfLaurent::from_terms([(2, 1), (0, -2), (-2, 1)]));
        let t = a.mul_truncated(&a, Some(0));
        assert_eq!(t, HalfLaurent::from_terms([(0, -2), (-2, 1)]));
    }

    #[test]
    fn negate_p_rule() {
        let a = HalfLaurent::from_p_coeffs(1, &[1, 2]);
        assert_eq!(a.negate_p().unwrap(), HalfLaurent::from_p_coeffs(1, &[-1, 2]));
        assert!(HalfLaurent::monomial(1, 1).negate_p().is_none());
    }

    #[test]
    fn display() {
        let a = HalfLaurent::from_terms([(-2, 1), (0, -1), (2, 2), (1, 3)]);
        assert_eq!(a.to_string(), "p^-1 - 1 + 3p^(1/2) + 2p");
    }
}
