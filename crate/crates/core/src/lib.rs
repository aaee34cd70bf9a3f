//! Exact computation of local symbols on `k(t)` and `k(s, t)` and
//! verification of their reciprocity laws.

pub mod arith;
pub mod curve;
pub mod error;
pub mod function_field;
pub mod group;
pub mod parse;
pub mod report;
pub mod segal_wilson;
pub mod surface;
pub mod tate;

pub use error::{Error, Result};
