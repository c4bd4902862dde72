//! Supertropical matrix algebra over the rationals in logarithmic notation.
//!
//! Elements are `-inf`, tangible values `q` and ghost values `qν` (written
//! `qv`). Addition takes the larger ν-value and ghosts ties; multiplication
//! adds values.

extern crate self as stmat;

pub mod digraph;
pub mod eigen;
pub mod element;
pub mod error;
pub mod jordan;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod stability;

#[cfg(test)]
#[path = "../tests/common/gen.rs"]
pub(crate) mod testutil;

pub use element::{Element, Tag};
pub use error::{Error, Result};
pub use matrix::{Matrix, Vector};
pub use poly::Poly;
