//! Exact computations for the trigonometric Cherednik algebra acting on
//! coinvariants of affine `sl_m` Verma modules, and the Zhelobenko
//! intertwiners between them.

pub mod affine_coinvariants;
pub mod affine_lie;
pub mod affine_weyl;
pub mod error;
pub mod finite_weight;
pub mod cherednik_algebra;
pub mod cli;
pub mod hecke_algebra;
pub mod matrix;
pub mod permutations;
pub mod report;
pub mod scalars;
pub mod zhelobenko;

pub use error::{Error, Result};
pub use scalars::Scalar;
