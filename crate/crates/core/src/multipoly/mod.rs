//! Exact sparse multivariate polynomials over the rationals.
//!
//! All objects in this crate have rational structure constants, so the base
//! field is fixed to Q: algebraic independence of rational polynomials over
//! the algebraic closure coincides with independence over Q.

mod modular;
mod monomial;
mod poly;
mod text;

pub use modular::{
    add_mod, inv_mod, mul_mod, rank_mod, reduce_scalar, sub_mod, DenominatorNotInvertible, PRIMES,
};
pub use monomial::{Exp, ExponentVector, WeightVector};
pub use poly::{ModPoly, SparsePoly, TermAccumulator};
pub use text::ParseError;

/// Coefficient field.
pub type Scalar = num_rational::BigRational;

/// Integer as a scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

/// `num/den` as a scalar. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(num.into(), den.into())
}
