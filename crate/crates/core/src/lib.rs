//! Finite-model workbench for monadic distributive lattices (m-lattices) and
//! their dual mq-spaces, a.k.a. monadic augmented Kripke frames.
//!
//! The crate is `no_std` and only needs `alloc`. Every structure is small
//! enough that subsets of a carrier fit a single `u64` mask, so carriers are
//! capped at [`MAX_CARRIER`] elements.
//!
//! Layout:
//!
//! * [`poset`]: finite posets, element sets and binary relations.
//! * [`lattice`]: bounded distributive lattices, prime filters, homomorphisms.
//! * [`monadic`]: the quantifier pair (∇, △) and the M1–M11 axioms.
//! * [`duality`]: spectra, dual algebras and the natural isomorphisms.
//! * [`congruence`]: saturated sets, congruence lattices, classification.
//! * [`frames`]: frame and morphism condition checkers.
//! * [`universe`]: exhaustive enumeration of small posets and partitions.
//! * [`verify`]: the theorem-instance suite run over a universe.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod congruence;
pub mod duality;
mod error;
pub mod frames;
pub mod lattice;
pub mod monadic;
pub mod poset;
mod report;
mod set;
pub mod universe;
pub mod verify;

pub use error::{Error, Result};
pub use report::Outcome;
pub use set::{ElementSet, MAX_CARRIER};

/// Resource caps for the exhaustive parts of the workbench.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest poset size for exhaustive space enumeration.
    pub max_poset: usize,
    /// Largest lattice for congruence computations.
    pub max_congruence_lattice: usize,
    /// Largest lattice for monadic-structure enumeration.
    pub max_monadic_lattice: usize,
    /// Largest space whose subsets are scanned (2^n) for saturated families.
    pub max_saturation_space: usize,
    /// Largest number of candidate maps between two spaces.
    pub max_maps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_poset: 5,
            max_congruence_lattice: 12,
            max_monadic_lattice: 32,
            max_saturation_space: 20,
            max_maps: 1_000_000,
        }
    }
}

impl Limits {
    /// Caps wide enough for the full acceptance universe (posets up to five
    /// points, lattices up to 32 elements).
    pub fn universe() -> Self {
        Limits {
            max_poset: 5,
            max_congruence_lattice: MAX_CARRIER,
            max_monadic_lattice: 32,
            max_saturation_space: 20,
            max_maps: 1_000_000,
        }
    }
}
