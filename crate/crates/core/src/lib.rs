//! Dependency structures with choice (DSCs) and their order theory.
//!
//! A DSC assigns to each event a family of alternative dependency sets.
//! The crate computes reachable dependency lattices, converts between DSCs
//! and antimatroids, classifies maps between DSCs, builds limits and related
//! constructions, computes Bruns-Lakser completions (read as Merkle stores)
//! and analyses the higher-version relation.

pub mod antimatroid;
pub mod bitset;
pub mod category;
pub mod completion;
pub mod dsc;
pub mod error;
pub mod exec;
pub mod ground;
pub mod lattice;
pub mod morphisms;
pub mod random;
pub mod versions;

pub use antimatroid::{phi, psi, Antimatroid};
pub use bitset::EventSet;
pub use category::ConstructionResult;
pub use completion::{bruns_lakser, merkle_dsnc, merkle_hashes, DistributiveLatticeView, MerkleStore};
pub use dsc::{Axiom, Dsc, GeneralEventStructure, PreDsc, ValidationReport};
pub use error::{Error, Result};
pub use exec::{Caps, Exec, Settings};
pub use ground::{EventId, Ground};
pub use lattice::{FiniteLattice, FinitePoset, SetLattice, Shape};
pub use morphisms::{DscMorphism, GroundMap, MorphismClass};
pub use versions::{VersionClosure, VersionRelation};
