//! Exact q-expansions of vector-valued modular forms for `SL₂(ℤ)`.
//!
//! A multiplier system is described by its rank, weight and eigenvalue
//! multiplicities ([`multiplier::MultiplierData`]); a bijective exponent `Λ`
//! and first coefficient `χ` then determine the fundamental matrix
//! ([`fundamental::FundamentalMatrix`]) through an exact recursion. Everything
//! else (bases, duality, dimensions, weight shifts) is derived from it.

pub mod basis;
pub mod cli;
pub mod dimensions;
pub mod error;
pub mod families;
pub mod forms;
pub mod fundamental;
pub mod io;
pub mod linalg;
pub mod multiplier;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use fundamental::FundamentalMatrix;
pub use linalg::QMatrix;
pub use multiplier::MultiplierData;
pub use rational::{rat, Rational};
pub use series::QSeries;
