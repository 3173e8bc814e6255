//! Exact computation of the topological vertex by enumeration of 3D
//! partitions, and of the Donaldson–Thomas partition functions of the local
//! elliptic surface `X = Tot(K_S)` assembled from it.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: integer partitions and their monomial ideals.
//! - [`series`]: exact `Z((p^{1/2}))[[q]]` arithmetic with knowledge windows.
//! - [`vertex`]: the normalized vertex `Ṽ_{λμν}` by order-ideal enumeration.
//! - [`dtseries`]: both sides of the product formulas and the checks between them.
//! - [`deform`]: tangent dimensions, Behrend signs and Haiman arrows.

pub mod deform;
pub mod dtseries;
pub mod error;
pub mod partitions;
pub mod series;
pub mod vertex;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use series::{HalfLaurent, PQSeries, PSeries};
pub use vertex::{LegConfig, VertexRecord, VertexStore};
