//! Exact symbolic engine for the Laistrygonian Nichols algebras
//! B(L_q(1, G)): PBW normal forms and graded data, quotient and Ore
//! structure, braiding twists, finite-dimensional simple modules, and
//! point-module classification, all over exact coefficient fields.

pub mod error;
pub mod maps;
pub mod matrix;
pub mod par;
pub mod pbw;
pub mod point;
pub mod repr;
pub mod scalars;
pub mod suite;
pub mod systems;

pub use error::{Error, Result};
