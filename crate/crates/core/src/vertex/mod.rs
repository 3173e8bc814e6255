//! The normalized topological vertex `Ṽ_{λμν}(p)`, computed by exhaustive
//! enumeration of 3D partitions asymptotic to three leg partitions.
//!
//! `Ṽ_{λμν} = Σ c_n pⁿ` where `c_n` counts 3D partitions containing `π_min`
//! with `n` boxes outside every leg. The usual vertex is
//! `V_{λμν} = p^{|π_min|} Ṽ_{λμν}` with `|π_min|` the normalized volume of
//! [`LegConfig::minimal_volume`].
//!
//! ```
//! use dtvertex::vertex::{tilde_vertex, LegConfig};
//!
//! let rec = tilde_vertex(&LegConfig::empty(), 5).unwrap();
//! assert_eq!(rec.counts, vec![1, 1, 3, 6, 13, 24]);
//! ```

mod enumerate;
mod legs;
mod store;

pub use enumerate::{count_ideals, estimate_search_nodes};
pub use legs::{LegConfig, Point};
pub use store::{VertexRecord, VertexStore, CACHE_ENV};

use crate::error::{Error, Result};
use crate::series::PSeries;

/// Counts of 3D partitions asymptotic to `cfg` with up to `n` extra boxes.
pub fn tilde_vertex(cfg: &LegConfig, n: i64) -> Result<VertexRecord> {
    if n < 0 {
        return Err(Error::NegativeOrder(n));
    }
    let counts = count_ideals(cfg, n as usize);
    Ok(VertexRecord { legs: cfg.clone(), p_order: n as usize, counts, min_volume: cfg.minimal_volume() })
}

/// `V_{λμν} = p^{|π_min|} Ṽ_{λμν}`, known on `[|π_min|, |π_min| + n]`.
pub fn vertex(cfg: &LegConfig, n: i64) -> Result<PSeries> {
    Ok(tilde_vertex(cfg, n)?.vertex())
}
