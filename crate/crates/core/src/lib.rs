//! Structural analysis of finite ordered sets: orbit frames, orbit graphs,
//! interdependent orbit unions, prune-and-compact deconstruction, primitive
//! nestings of permutation groups, and certified exponent bounds on
//! automorphism group sizes, all verified against brute-force oracles.

pub mod bounds;
pub mod catalog;
pub mod counting;
pub mod deconstruction;
pub mod error;
pub mod exact;
pub mod orbit_structure;
pub mod permgroup;
pub mod poset_core;

pub use error::Error;
pub use poset_core::Poset;

pub type Result<T> = std::result::Result<T, Error>;
