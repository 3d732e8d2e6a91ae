//! Sources of set families: order ideals of posets and enumeration streams.

pub mod poset;
pub mod stream;

pub use poset::{all_posets, hasse_connected, order_ideals, parse_poset, Poset, PosetFile};
pub use stream::{enumerate_families, FamilyIter, FamilyStream, StreamMode, StreamStats};
