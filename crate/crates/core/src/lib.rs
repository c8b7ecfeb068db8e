//! Exact computations with centered valuations of `ℚ[x,y]` at the origin
//! and with rooted non-metric trees.

pub mod algebra;
pub mod valuation;
pub mod testkit;
pub mod tree;
