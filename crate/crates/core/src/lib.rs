//! Exact combinatorics and generating-series tools for the logarithmic
//! GW/PT correspondence on toric threefold pairs.

pub mod arith;
pub mod geometry;
pub mod lattice;
pub mod poset;
pub mod series;
pub mod stars;
