//! Set families, toggles, type classification and Cartesian factorization.

pub mod factor;
pub mod family;
pub mod toggles;

pub use factor::{decompose, try_factor, verify_direct_product, Factorization, FactorizationTree};
pub use family::{cartesian_product, normalize, FamilyFile, SetFamily};
pub use toggles::{
    build_toggles, classify_toggles, layers, toggle_group, LayerPartition, ToggleSet, ToggleType,
    ToggleTypeMap,
};
