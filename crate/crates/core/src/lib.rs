//! Finite, computable order theory around better quasi orders.
//!
//! - [`poset`]: finite partial orders, sums, embeddings and order reflecting maps;
//! - [`decomp`]: linear sums of antichains and the forbidden suborders `1 ⊕ 2`, `3̄`;
//! - [`barrier`]: finite sequences, the relation `⊲`, block and barrier fragments;
//! - [`array`]: arrays on fragments, bad-array search and minimal bad arrays;
//! - [`hset`]: hereditarily finite sets with urelements and their order;
//! - [`ordinal`]: Cantor normal forms below ε₀, `2̄·γ` and `ω^α`;
//! - [`mba`]: the majorization order on `[Q]^{≤n}` and bad triples.

pub mod array;
pub mod barrier;
pub mod decomp;
pub mod hset;
pub mod mba;
pub mod ordinal;
pub mod poset;
pub mod search;

pub use search::SearchLimits;
