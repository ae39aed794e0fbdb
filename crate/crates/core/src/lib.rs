pub mod error;
pub mod exact_math;
pub mod lattice;
pub(crate) mod serde_util;
pub mod enumeration;
pub mod surface;
pub mod weil;

pub use error::{Error, Result};
pub use exact_math::{IntMatrix, IntPolynomial, Rational};
pub use weil::{CycloDecomposition, NewtonSlopes, WeilPolynomial};
