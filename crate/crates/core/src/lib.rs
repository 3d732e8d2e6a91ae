//! Generalized toggle groups.
//!
//! A family `L` of subsets of a ground set `E` carries one involution per
//! element `e`: the toggle sending `X` to `X △ {e}` whenever that set is in
//! `L`. This crate builds the group those toggles generate, analyzes its
//! block structure, factors families along toggle-disjoint Cartesian
//! products, and runs certification sweeps over generated families.
//!
//! Permutations act on member indices of the family, in ingestion order.
//! Composition is right-to-left: `p.compose(&q)` applies `q` first.

pub mod certify;
pub mod cli;
pub mod config;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod permgroup;
pub mod toggle;

pub use config::RunConfig;
pub use error::{Error, Result};
