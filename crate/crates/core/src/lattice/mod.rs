//! ω, τ and n of a finite Galois action on a lattice, from cyclotomic data
//! or from an explicit integer matrix.

pub mod explicit;
pub mod omega;

pub use explicit::{lattice_invariants, LatticeReport};
pub use omega::{omega_from_decomposition, possible_omegas, OmegaProfile};
