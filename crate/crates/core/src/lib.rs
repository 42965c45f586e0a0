//! Finite multiplicative lattices: validation, element predicates,
//! constructions, factorization closures and ideal lattices of finite rings.
//!
//! Everything here is `no_std` with `alloc`; file formats, the corpus harness
//! and the command line live in the `mlcheck` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod canonical;
pub mod classify;
pub mod constructions;
pub mod enumerate;
pub mod factor;
pub mod lattice;
pub mod ring;

pub use canonical::CanonicalForm;
pub use lattice::{Axiom, Elem, Lattice, LatticeSpec, ValidationReport, Violation};
