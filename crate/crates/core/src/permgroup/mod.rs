//! Exact permutation-group machinery: permutations, stabilizer chains,
//! block systems and cycle containment.

pub mod blocks;
pub mod chain;
pub mod cycles;
pub mod perm;

pub use blocks::{
    is_primitive, minimal_block, nontrivial_block_systems, primitivity, BlockSystem, Primitivity,
};
pub use chain::{
    contains_element, factorial, is_transitive, orbits, schreier_sims, GroupDescription,
};
pub use cycles::{
    cycle_containment, cycle_containment_with_limit, Branch, Containment, CycleCensus, CycleOracle,
    DEFAULT_ENUMERATION_LIMIT,
};
pub use perm::{compose, cycle_decomposition, parity, CycleStructure, Parity, Permutation};
