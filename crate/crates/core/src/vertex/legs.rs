use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Lattice point `(ρ, σ, τ)`, the box with lower corner at that point.
pub type Point = [usize; 3];

/// Outgoing legs of a vertex along the `r`, `s` and `t` axes.
///
/// The box `(ρ, σ, τ)` lies in the first leg iff `(σ, τ) ∈ λ`, in the second
/// iff `(τ, ρ) ∈ μ` and in the third iff `(ρ, σ) ∈ ν`. Their union is the
/// minimal 3D partition `π_min` asymptotic to `(λ, μ, ν)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LegConfig {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

impl LegConfig {
    pub fn new(lambda: Partition, mu: Partition, nu: Partition) -> Self {
        LegConfig { lambda, mu, nu }
    }

    /// `(∅, ∅, ∅)`.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Number of legs (0 to 3) containing the box `x`.
    pub fn legs_containing(&self, x: Point) -> usize {
        let [r, s, t] = x;
        usize::from(self.lambda.contains_cell(s, t))
            + usize::from(self.mu.contains_cell(t, r))
            + usize::from(self.nu.contains_cell(r, s))
    }

    pub fn in_min(&self, x: Point) -> bool {
        self.legs_containing(x) > 0
    }

    /// Largest first part or length among the three legs; pairwise leg
    /// intersections live in `[0, extent)^3`.
    pub fn extent(&self) -> usize {
        [&self.lambda, &self.mu, &self.nu]
            .iter()
            .flat_map(|p| [p.first_part(), p.length()])
            .max()
            .unwrap_or(0)
    }

    pub fn total_size(&self) -> usize {
        self.lambda.size() + self.mu.size() + self.nu.size()
    }

    /// `(ν, λ, μ)`, induced by `(r, s, t) ↦ (t, r, s)`.
    pub fn cyclic(&self) -> Self {
        LegConfig::new(self.nu.clone(), self.lambda.clone(), self.mu.clone())
    }

    /// `(μ′, λ′, ν′)`, induced by `(r, s, t) ↦ (s, r, t)`.
    pub fn transposed(&self) -> Self {
        LegConfig::new(self.mu.conjugate(), self.lambda.conjugate(), self.nu.conjugate())
    }

    /// Normalized volume of `π_min`: `Σ (1 − #legs containing the box)`,
    /// which only sees boxes lying in two or three legs.
    pub fn minimal_volume(&self) -> i64 {
        let m = self.extent();
        let mut vol = 0i64;
        for r in 0..m {
            for s in 0..m {
                for t in 0..m {
                    let k = self.legs_containing([r, s, t]);
                    if k >= 2 {
                        vol += 1 - k as i64;
                    }
                }
            }
        }
        vol
    }

    /// Canonical cache key `λ|μ|ν` with comma-separated parts.
    pub fn key(&self) -> String {
        format!("{}|{}|{}", self.lambda.key(), self.mu.key(), self.nu.key())
    }

    /// Parses the command-line form `"λ;μ;ν"`, e.g. `"2,1;;"`.
    pub fn parse_legs(s: &str) -> Result<Self> {
        let slots: Vec<&str> = s.split(';').collect();
        if slots.len() != 3 {
            return Err(Error::InvalidPartition(format!(
                "legs {s:?} must have three ';'-separated slots"
            )));
        }
        Ok(LegConfig::new(slots[0].parse()?, slots[1].parse()?, slots[2].parse()?))
    }
}

impl fmt::Display for LegConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.lambda, self.mu, self.nu)
    }
}

impl FromStr for LegConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_legs(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn minimal_volume_cases() {
        for n in 0..=5 {
            for lam in enumerate_partitions(n) {
                let one_leg = LegConfig::new(lam.clone(), Partition::empty(), Partition::empty());
                assert_eq!(one_leg.minimal_volume(), 0);
                let with_box = LegConfig::new(lam.clone(), Partition::single_box(), Partition::empty());
                assert_eq!(with_box.minimal_volume(), -(lam.first_part() as i64));
                let mm = LegConfig::new(lam.clone(), lam.conjugate(), Partition::empty());
                assert_eq!(mm.minimal_volume(), -(lam.norm_sq() as i64));
            }
        }
        let cfg = LegConfig::new(p(&[2, 1]), p(&[2, 1]), Partition::empty());
        assert_eq!(cfg.minimal_volume(), -5);
    }

    #[test]
    fn triple_intersection_counts_minus_two() {
        let b = Partition::single_box();
        let cfg = LegConfig::new(b.clone(), b.clone(), b);
        assert_eq!(cfg.minimal_volume(), -2);
    }

    #[test]
    fn parse_legs() {
        let cfg = LegConfig::parse_legs("2,1;;").unwrap();
        assert_eq!(cfg, LegConfig::new(p(&[2, 1]), Partition::empty(), Partition::empty()));
        assert_eq!(cfg.key(), "2,1||");
        assert!(LegConfig::parse_legs("1;1").is_err());
        assert!(LegConfig::parse_legs("1,2;;").is_err());
    }
}
