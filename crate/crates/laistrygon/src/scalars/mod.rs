//! Exact coefficient arithmetic: integer polynomials, rational functions
//! in q, specializations (numeric and root-of-unity), multivariate
//! polynomials, and the scalar text grammar.

pub mod field;
pub mod intpoly;
pub mod multipoly;
pub mod parse;
pub mod ratfun;

pub use field::{binomial, FieldElem, QSpec};
pub use multipoly::MultiPoly;
pub use parse::parse_scalar;
pub use ratfun::{partial_fraction_identity, RatFun};
