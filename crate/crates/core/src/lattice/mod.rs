//! Finite posets and lattices.

mod dot;
mod finite;
mod iso;
mod poset;
mod props;
mod sets;

pub use finite::FiniteLattice;
pub use iso::poset_isomorphism;
pub use poset::{CoverRelation, FinitePoset};
pub use props::{Shape, Sublattice};
pub use sets::{downsets, downsets_with, SetLattice};

pub(crate) use sets::downset_family;
