//! Exact-arithmetic verification of q-congruences, supercongruences and
//! basic hypergeometric identities.

pub mod arith;
pub mod cases;
pub mod congruence;
pub mod error;
pub mod qpoly;
pub mod qseries;
pub mod transforms;

pub use error::{Error, Result};
