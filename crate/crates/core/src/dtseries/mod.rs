//! Donaldson–Thomas partition functions of the local elliptic surface
//! `X = Tot(K_S)` in the classes `B + dF` and `dF`.
//!
//! Each function is available in two independent forms:
//!
//! - the *sum side*, assembled from enumerated vertices: local weights
//!   `F₁`, `F₂`, `g(a)`, `h(b)` combined over symmetric products;
//! - the *product side*, expanded from the closed infinite products.
//!
//! The checks in [`identities`] and [`Report`] compare them coefficient by
//! coefficient on the p-range both sides actually know.

mod assembly;
pub mod identities;
mod products;
mod report;
mod symprod;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::PQSeries;

pub use assembly::{Assembly, FdMode};
pub use products::{connected_jacobi, dt_fib_product, dt_hat_product};
pub use report::Report;
pub use symprod::{symprod_check, symprod_lhs, symprod_rhs};

/// Topological Euler characteristics of the base curve and the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    #[serde(rename = "eB")]
    pub e_b: i64,
    #[serde(rename = "eS")]
    pub e_s: i64,
}

impl SurfaceData {
    /// `e(B)` must be even; `e(S)` is unconstrained for series purposes.
    pub fn new(e_b: i64, e_s: i64) -> Result<Self> {
        if e_b % 2 != 0 {
            return Err(Error::Precondition(format!("e(B) = {e_b} must be even")));
        }
        Ok(SurfaceData { e_b, e_s })
    }

    /// The elliptic K3 surface over `P¹`.
    pub fn k3() -> Self {
        SurfaceData { e_b: 2, e_s: 24 }
    }

    /// `χ(O_B) = e(B)/2`.
    pub fn chi_ob(&self) -> i64 {
        self.e_b / 2
    }
}

/// Multiplicities `a` at points over smooth fibers and `b` at points over
/// nodal fibers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfig {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl PointConfig {
    pub fn new(a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        if a.iter().chain(&b).any(|&x| x == 0) {
            return Err(Error::Precondition("point multiplicities must be positive".into()));
        }
        Ok(PointConfig { a, b })
    }

    pub fn degree(&self) -> usize {
        self.a.iter().chain(&self.b).sum()
    }

    /// Every configuration of degree `d`: each composition of `d`, with each
    /// part assigned to a smooth or a nodal point.
    pub fn all_of_degree(d: usize) -> Vec<PointConfig> {
        fn compositions(d: usize) -> Vec<Vec<usize>> {
            if d == 0 {
                return vec![vec![]];
            }
            (1..=d)
                .flat_map(|first| {
                    compositions(d - first).into_iter().map(move |mut rest| {
                        rest.insert(0, first);
                        rest
                    })
                })
                .collect()
        }
        let mut out = Vec::new();
        for comp in compositions(d) {
            for mask in 0u32..(1 << comp.len()) {
                let (mut a, mut b) = (Vec::new(), Vec::new());
                for (i, &part) in comp.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        b.push(part);
                    } else {
                        a.push(part);
                    }
                }
                out.push(PointConfig { a, b });
            }
        }
        out
    }
}

/// Which form of a partition function to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Sum,
    Product,
}

/// How to build the connected series `DT̂ / DT̂_fib`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConnectedMode {
    /// Quotient of the two product formulas.
    Ratio,
    /// Quotient of the two vertex-assembled sums.
    SumRatio,
    /// `(q^{−1/24}η)^{−e(S)} Θ^{−e(B)}`.
    Jacobi,
}

/// Automatic p-order for sums through `q^{q_order}`: `λ₁ ≤ q_order` for every
/// partition involved, so `q_order·q_order + 4` keeps every `g`/`h` window nonempty.
pub fn default_p_order(q_order: usize) -> i64 {
    (q_order * q_order) as i64 + 4
}

/// `(−1)^{χ(O_S)} A|_{p = −y}`, read as a series in `y`.
pub fn behrend_transform(a: &PQSeries, chi_os: i64) -> Result<PQSeries> {
    let sub = a.substitute_neg_p()?;
    Ok(if chi_os.rem_euclid(2) == 1 { sub.neg() } else { sub })
}
