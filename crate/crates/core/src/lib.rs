//! Involutive Khovanov and Bar-Natan homology of strongly invertible and
//! 2-periodic link diagrams, and the equivariant Rasmussen invariants
//! `(s̲, s̄)` extracted from them.

pub mod coeffs;
pub mod diagram;
pub mod complex;
pub mod homology;
pub mod invariants;
pub mod sparse;
pub mod acceptance;
pub mod cli;
