//! Exact arithmetic for auditing the numerical side of a moduli-space
//! argument: lattice classes on a K3 surface, surface invariants, dimension
//! counts and tautological intersection numbers.

pub mod dimension;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod lattice;
pub mod surface;
pub mod taut;

pub use error::{Error, Result};
pub use lattice::{BasisChange, Lattice, LatticeClass, Signature, Sublattice};
pub use enumerate::CertificateKind;
