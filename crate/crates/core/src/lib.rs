//! Exact invariants of configurations of flags in `C^n`.

pub mod derangements;
pub mod flags;
pub mod invariants;
pub mod numeric;
pub mod realforms;
pub mod sample;
pub mod schema;
pub mod semistability;
pub mod triangulation;
