//! Finite-type classification and orbit enumeration for joint and double
//! flag varieties of `GL_n`.
//!
//! A joint flag configuration is a triple of flags `(A, B, C)` in a space
//! `V` whose `B` and `C` tops are complementary. Its dimension data is a
//! [`DimVector`]; the crate decides when such configurations form finitely
//! many `GL(V)`-orbits, lists those orbits as decompositions into rigid
//! pieces, and cross-checks everything against a brute-force enumeration
//! over small prime fields.

pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod finiteness;
pub mod lambda;
pub mod oracle;
pub mod orbits;
pub mod relaxation;
pub mod universe;
pub mod verify;

pub use error::{Error, Result};
pub use lambda::{min_norm_partition, Composition, DimVector, NormalizedVector, Shape};
