//! Generation and exact verification of elementary-integrable
//! `(integrand, integral)` pairs over log/exp towers of `Q(x)`.
//!
//! Integrands are built backwards from a planted antiderivative in
//! Liouville form (rational part plus constant multiples of logarithms and
//! arctangents) and checked forward with Hermite reduction and the
//! Rothstein–Trager resultant.

pub mod algebra;
mod error;
pub mod kernel;
pub mod tower;
pub mod verifier;
pub mod generator;
pub mod dataset;
pub mod cli;

pub use error::{Error, Result};
