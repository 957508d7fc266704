//! Bundled example inputs and seeded random generators.

pub mod bundled;
pub mod random;
