//! Weil polynomials: validation, the real transform, Newton slopes and the
//! split into cyclotomic and transcendental parts.

pub mod cyclo;
pub mod newton;
pub mod polynomial;
pub mod transform;

pub use cyclo::{ltr_value, strip_cyclotomic_factors, CycloDecomposition, LtrValue};
pub use newton::{l_polynomial_slopes, newton_slopes, NewtonSlopes};
pub use polynomial::{is_weil_polynomial, WeilCertificate, WeilFailure, WeilPolynomial};
pub use transform::{check_trace_bound, real_weil_transform, RealTransform, TraceBound};
