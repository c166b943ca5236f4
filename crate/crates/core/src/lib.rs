//! Finite connectivity systems: a ground set `X` together with a symmetric
//! submodular function `f` on its subsets.
//!
//! The crate provides
//!
//! - built-in and user-supplied set-function oracles with memoized
//!   evaluation and exhaustive verification of symmetry, submodularity and
//!   their standard consequences ([`ConnectivitySystem`]),
//! - branch decomposition trees, their widths and exact branch-width via a
//!   subset dynamic program, with a brute-force tree enumerator as an
//!   independent oracle ([`decomposition`]),
//! - axiom checks for weak ultrafilters of order `k + 1` (and the classical
//!   Boolean-algebra filter axioms), plus a backtracking search that finds
//!   or enumerates them ([`filter`]),
//! - verdicts auditing the duality between the two notions on concrete
//!   instances ([`duality`]).
//!
//! Everything here is pure computation over `alloc`; file formats, instance
//! generators and the command-line tool live in the `connsys` crate.
//!
//! Subsets are bitmasks over at most [`MAX_ELEMENTS`] elements.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod decomposition;
pub mod duality;
mod error;
pub mod filter;
mod function;
mod report;
mod set;
mod system;

pub use error::Error;
pub use function::{gf2_rank, FunctionSpec, SetFunction};
pub use report::{AxiomEntry, AxiomId, AxiomReport, Witness};
pub use set::{canonical_subsets, ElementSet, GroundSet, MAX_ELEMENTS};
pub use system::{ConnectivitySystem, PAIRWISE_CAP, SUBSET_CAP};

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
