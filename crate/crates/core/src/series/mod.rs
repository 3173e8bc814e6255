//! Exact truncated series in two variables: Laurent in `p^{1/2}`, power
//! series in `q`, with explicit tracking of which coefficients are known.
//!
//! Every coefficient of a [`PQSeries`] is a [`PSeries`]: a Laurent polynomial
//! plus a floor (the true series vanishes below it) and a ceiling (the value
//! is exact up to it). Products know exactly as much as the convolution
//! allows, so an equality reported by [`PQSeries::compare`] is a statement
//! about genuinely known coefficients, never about a silent truncation.

mod json;
mod laurent;
mod pqseries;
mod pseries;
mod standard;

pub use json::{from_json, to_csv, to_json};
pub use laurent::HalfLaurent;
pub use pqseries::{Discrepancy, PQSeries, PWindow, RingOp};
pub use pseries::PSeries;
pub use standard::{macmahon_p, standard_series, StandardSeries};
