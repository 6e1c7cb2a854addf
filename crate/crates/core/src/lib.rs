//! Reduced digital nets over prime fields.
//!
//! The crate constructs digital nets from generating matrices over
//! `F_b`, applies row/column/column-row reductions to the matrices,
//! certifies the quality parameters of the reduced nets against the
//! two-sided bounds they satisfy, evaluates a computable upper bound on
//! the weighted star discrepancy, and computes the product `XA` of the
//! point matrix with an arbitrary real matrix by structure-exploiting
//! algorithms whose operation counts match the closed-form predictions.
//!
//! Net points are exact integer numerators over `b^m`; real arithmetic
//! is generic over [`scalar::Scalar`] (`f64`, `f32`, or `BigRational`
//! for exact cross-checks), with `f64` aliases at the crate root.

pub mod discrepancy;
pub mod error;
pub mod gf;
pub mod integrate;
pub mod nets;
pub mod product;
pub mod quality;
pub mod reduction;
pub mod scalar;

pub use error::{Error, Result};
pub use gf::GfMatrix;
pub use nets::{DigitalNet, GeneratingSet};
pub use product::{Algorithm, Mat, OpCounts, TheoreticalCosts};
pub use reduction::{ReductionIndices, ReductionKind, Schedule};
pub use scalar::Scalar;

/// Dense real matrix in the working precision.
pub type DenseMatrix = Mat<f64>;

/// Dense matrix with exact rational entries (test oracles, exact mode).
pub type ExactMatrix = Mat<num_rational::BigRational>;
