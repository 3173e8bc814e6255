//! Deformation data of partition thickened comb curves: tangent dimensions,
//! Behrend signs and the Haiman-arrow bases behind them.
//!
//! Diagram cells are `(ρ, σ)` = (column, row), as in [`Partition::cells`].

use serde::{Deserialize, Serialize};

use crate::dtseries::SurfaceData;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Holomorphic Euler characteristics and normal-bundle sections for `B ⊂ S ⊂ X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerData {
    pub chi_os: i64,
    pub chi_ob: i64,
    /// `h⁰(N_{B/T})`, `T` the total space of the canonical bundle over `S`.
    pub h0_nbt: i64,
    pub h0_nbs: i64,
}

/// Requires `e(S) > 0`, `12 | e(S)` and `e(B)` even.
pub fn euler_data(surf: &SurfaceData) -> Result<EulerData> {
    if surf.e_s <= 0 || surf.e_s % 12 != 0 {
        return Err(Error::Precondition(format!(
            "e(S) = {} must be a positive multiple of 12",
            surf.e_s
        )));
    }
    if surf.e_b % 2 != 0 {
        return Err(Error::Precondition(format!("e(B) = {} must be even", surf.e_b)));
    }
    let chi_os = surf.e_s / 12;
    let chi_ob = surf.chi_ob();
    Ok(EulerData { chi_os, chi_ob, h0_nbt: chi_os - chi_ob, h0_nbs: 0 })
}

/// `B ∪ λ⁽ⁱ⁾F_{xᵢ} ∪ μ⁽ʲ⁾F_{yⱼ}` with smooth fibers `F_{xᵢ}` and nodal fibers `F_{yⱼ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombCurveDescriptor {
    pub surf: SurfaceData,
    pub smooth_fibers: Vec<Partition>,
    pub nodal_fibers: Vec<Partition>,
}

impl CombCurveDescriptor {
    pub fn new(surf: SurfaceData, smooth_fibers: Vec<Partition>, nodal_fibers: Vec<Partition>) -> Result<Self> {
        if smooth_fibers.iter().chain(&nodal_fibers).any(Partition::is_empty) {
            return Err(Error::EmptyPartition("a fiber thickening"));
        }
        Ok(CombCurveDescriptor { surf, smooth_fibers, nodal_fibers })
    }

    /// Fiber class multiplicity `d`.
    pub fn degree(&self) -> usize {
        self.fibers().map(Partition::size).sum()
    }

    pub fn fibers(&self) -> impl Iterator<Item = &Partition> {
        self.smooth_fibers.iter().chain(&self.nodal_fibers)
    }
}

/// `χ(O_C) = χ(O_B) − Σ λ⁽ⁱ⁾₁ − Σ μ⁽ʲ⁾₁`.
pub fn chi_oc(desc: &CombCurveDescriptor) -> Result<i64> {
    let e = euler_data(&desc.surf)?;
    Ok(e.chi_ob - desc.fibers().map(|p| p.first_part() as i64).sum::<i64>())
}

/// Zariski tangent dimension at `[C]`: `h⁰(N_{B/T}) + Σ (2|λ| − λ₁)`,
/// nodal fibers counted like smooth ones.
pub fn tangent_dim(desc: &CombCurveDescriptor) -> Result<i64> {
    let e = euler_data(&desc.surf)?;
    Ok(e.h0_nbt + desc.fibers().map(|p| (2 * p.size() - p.first_part()) as i64).sum::<i64>())
}

/// Behrend function at `[C]`: `(−1)^{χ(O_S) − χ(O_C)}`.
pub fn behrend_sign(desc: &CombCurveDescriptor) -> Result<i8> {
    let e = euler_data(&desc.surf)?;
    Ok(parity_sign(e.chi_os - chi_oc(desc)?))
}

/// Behrend function at a thickened fiber curve `∪ λ⁽ⁱ⁾F_{xᵢ}` with no base
/// component: `χ(O_C) = 0`, so the sign is always `+1`.
pub fn fiber_curve_behrend_sign(fibers: &[Partition]) -> Result<i8> {
    if fibers.iter().any(Partition::is_empty) {
        return Err(Error::EmptyPartition("a fiber thickening"));
    }
    let chi_oc = 0;
    Ok(parity_sign(chi_oc))
}

fn parity_sign(n: i64) -> i8 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowKind {
    Northwest,
    Southeast,
}

/// A tangent direction at a monomial ideal: move the generator at `tail`
/// (outside the diagram) to the cell `head` (inside it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HaimanArrow {
    pub tail: (usize, usize),
    pub head: (usize, usize),
    pub kind: ArrowKind,
}

fn require_nonempty(lambda: &Partition) -> Result<()> {
    if lambda.is_empty() {
        return Err(Error::EmptyPartition("a Haiman basis"));
    }
    Ok(())
}

/// Haiman's basis of the tangent space to `Hilb^d(C²)` at `I_λ`.
///
/// For each cell `(ρ, σ)`: a southeast arrow from just above column `ρ` to the
/// last cell of row `σ`, and a northwest arrow from just right of row `σ` to
/// the top cell of column `ρ`. Southeast arrows come first, cells row by row.
pub fn haiman_basis_2d(lambda: &Partition) -> Result<Vec<HaimanArrow>> {
    require_nonempty(lambda)?;
    let conj = lambda.conjugate();
    let southeast = lambda.cells().map(|(r, s)| HaimanArrow {
        tail: (r, conj.part(r)),
        head: (lambda.part(s) - 1, s),
        kind: ArrowKind::Southeast,
    });
    let northwest = lambda.cells().map(|(r, s)| HaimanArrow {
        tail: (lambda.part(s), s),
        head: (r, conj.part(r) - 1),
        kind: ArrowKind::Northwest,
    });
    Ok(southeast.chain(northwest).collect())
}

/// Southeast arrows ending in the last cell of row 0: these move `B` off the
/// fiber and do not survive on the comb.
fn is_case_one(lambda: &Partition, arrow: &HaimanArrow) -> bool {
    arrow.kind == ArrowKind::Southeast && arrow.head == (lambda.first_part() - 1, 0)
}

/// The tangent directions along the locus of ideals whose row 0 stays attached
/// to the base: the Haiman basis minus its `λ₁` case-one arrows.
pub fn vl_tangent_basis(lambda: &Partition) -> Result<Vec<HaimanArrow>> {
    Ok(haiman_basis_2d(lambda)?.into_iter().filter(|a| !is_case_one(lambda, a)).collect())
}

/// Classes of arrows into a `λF` block that do not point into the base block:
/// `2|λ| − λ₁`.
pub fn comb_fiber_arrow_classes(lambda: &Partition) -> Result<usize> {
    Ok(vl_tangent_basis(lambda)?.len())
}
