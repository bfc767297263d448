//! Deciding equality of diagrams: circuit isomorphism by canonical forms,
//! and teleological equivalence by searching for a single reflected subset.

mod canonical;
mod reflect;

pub use canonical::{canonical_form, circuit_iso, CanonicalForm};
pub use reflect::{reflect_subset, teleo_eq, teleo_witness, ReflectionSubset};
