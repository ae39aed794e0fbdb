//! Exact integer and rational arithmetic: polynomials, cyclotomics, Sturm
//! chains and Smith normal form.

pub mod arith;
pub mod cyclotomic;
pub mod matrix;
pub mod poly;
pub mod sturm;

pub use cyclotomic::{cyclotomic, cyclotomic_at_one, scaled_cyclotomic};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use poly::IntPolynomial;
pub use sturm::{count_real_roots_in_interval, count_real_roots_with_multiplicity, RootCount};

pub type Rational = num_rational::BigRational;

/// `n` as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `n / d` as a reduced rational.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
