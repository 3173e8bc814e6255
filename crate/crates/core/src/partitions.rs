//! Integer partitions and the monomial ideals attached to them.
//!
//! A partition is stored as its weakly decreasing list of positive parts.
//! Its Young diagram uses one convention throughout the crate: the cell
//! `(ρ, σ)` (column `ρ`, row `σ`) lies in `λ` iff `ρ < λ_{σ+1}`. Row `σ` is
//! the `σ`-th part, so the ideal `I_λ ⊂ C[r, s]` contains `r^ρ s^σ` exactly
//! when `(ρ, σ)` is outside the diagram.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty sequence is `∅`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

/// Summary statistics of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub size: usize,
    pub first_part: usize,
    pub norm_sq: usize,
    pub conjugate: Partition,
    pub length: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-box partition `□`.
    pub fn single_box() -> Self {
        Partition { parts: vec![1] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ₁`, or 0 for `∅`.
    pub fn first_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Number of parts `ℓ(λ)`.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// `‖λ‖² = Σ λⱼ²`.
    pub fn norm_sq(&self) -> usize {
        self.parts.iter().map(|p| p * p).sum()
    }

    /// Part `λ_{i+1}` (zero-indexed), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let parts = (0..self.first_part())
            .map(|col| self.parts.iter().take_while(|&&p| p > col).count())
            .collect();
        Partition { parts }
    }

    /// Whether the cell in column `col`, row `row` belongs to the diagram.
    pub fn contains_cell(&self, col: usize, row: usize) -> bool {
        col < self.part(row)
    }

    /// Cells `(ρ, σ)` of the diagram, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(row, &len)| (0..len).map(move |col| (col, row)))
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            size: self.size(),
            first_part: self.first_part(),
            norm_sq: self.norm_sq(),
            conjugate: self.conjugate(),
            length: self.length(),
        }
    }

    /// Comma-separated parts; the empty string for `∅`.
    pub fn key(&self) -> String {
        self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            f.write_str("∅")
        } else {
            write!(f, "({})", self.key())
        }
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"3,1,1"`; the empty (or all-whitespace) string is `∅`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Every partition of `n`, in reverse-lexicographic order of parts.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn fill(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            fill(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`, grouped by size.
pub fn partitions_up_to(n: usize) -> impl Iterator<Item = Partition> {
    (0..=n).flat_map(enumerate_partitions)
}

/// Exponents `(ρ, σ)` of the generators of `I_λ ⊂ C[r, s]`:
/// `r^{λ₁}, r^{λ₂}s, …, r^{λ_l}s^{l−1}, s^l`.
pub fn monomial_generators_2d(lambda: &Partition) -> Vec<(usize, usize)> {
    let l = lambda.length();
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(row, &p)| (p, row))
        .chain(std::iter::once((0, l)))
        .collect()
}

/// Exponents `(ρ, σ, τ)` of the generators of the ideal of a comb curve
/// thickened along `λ`: `(λ₁,0,1), (λ₂,1,0), …, (λ_l,l−1,0), (0,l,0)`.
pub fn comb_ideal_generators(lambda: &Partition) -> Result<Vec<(usize, usize, usize)>> {
    if lambda.is_empty() {
        return Err(Error::EmptyPartition("comb_ideal_generators"));
    }
    Ok(monomial_generators_2d(lambda)
        .into_iter()
        .enumerate()
        .map(|(i, (rho, sigma))| (rho, sigma, usize::from(i == 0)))
        .collect())
}
