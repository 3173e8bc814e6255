//! Every chapter of the guide is included here so `cargo test` runs its Rust
//! code blocks as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/series.md")]
mod series {}

#[doc = include_str!("../../../book/src/partitions.md")]
mod partitions {}

#[doc = include_str!("../../../book/src/vertex.md")]
mod vertex {}

#[doc = include_str!("../../../book/src/dt-series.md")]
mod dt_series {}

#[doc = include_str!("../../../book/src/symprod.md")]
mod symprod {}

#[doc = include_str!("../../../book/src/deformations.md")]
mod deformations {}

#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
