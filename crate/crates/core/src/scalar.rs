//! Scalar abstraction for the real-arithmetic layer.
//!
//! The product and quadrature code is generic over [`Scalar`] so the same
//! algorithms run in `f64` (production), `f32`, or exact rational
//! arithmetic (`BigRational`, used by tests to assert bit-for-bit
//! structural agreement between algorithms).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::NumAssign;

/// Field-like scalar with an exact embedding of net coordinates
/// `numerator / denominator`.
pub trait Scalar: NumAssign + Clone + PartialOrd + std::fmt::Debug {
    fn from_ratio(numerator: u64, denominator: u64) -> Self;
}

impl Scalar for f64 {
    fn from_ratio(numerator: u64, denominator: u64) -> Self {
        numerator as f64 / denominator as f64
    }
}

impl Scalar for f32 {
    fn from_ratio(numerator: u64, denominator: u64) -> Self {
        numerator as f32 / denominator as f32
    }
}

impl Scalar for BigRational {
    fn from_ratio(numerator: u64, denominator: u64) -> Self {
        BigRational::new(BigInt::from(numerator), BigInt::from(denominator))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_embeddings_agree() {
        let f = f64::from_ratio(3, 16);
        assert_eq!(f, 0.1875);
        let q = BigRational::from_ratio(3, 16);
        assert_eq!(q, BigRational::new(BigInt::from(3), BigInt::from(16)));
    }
}
