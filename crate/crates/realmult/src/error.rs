//! Error type shared by all modules.

use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced by exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The leading coefficient of a quadratic equation is zero.
    #[error("leading coefficient is zero; the number is not quadratic")]
    ZeroLeadingCoefficient,

    /// The discriminant l^2 - 4km is not positive or is a perfect square,
    /// so the equation has no real irrational root.
    #[error("discriminant {discriminant} is not positive or is a perfect square")]
    NotIrrational { discriminant: BigInt },

    /// A matrix expected to lie in GL(2,Z) has determinant other than +-1.
    #[error("matrix is not unimodular (determinant {determinant})")]
    NotUnimodular { determinant: BigInt },

    /// D is not a valid discriminant of a real quadratic order:
    /// it must be positive, not a perfect square, and congruent to 0 or 1 mod 4.
    #[error("{d} is not a valid discriminant (positive, nonsquare, 0 or 1 mod 4)")]
    InvalidDiscriminant { d: BigInt },

    /// Two units over different discriminants were combined.
    #[error("units live in different orders (discriminants {left} and {right})")]
    MixedDiscriminants { left: BigInt, right: BigInt },

    /// A unit was paired with a quadratic irrational of a different discriminant.
    #[error("discriminant of theta is {theta} but the unit has discriminant {unit}")]
    DiscriminantMismatch { theta: BigInt, unit: BigInt },

    /// A trace value must be a positive unit; negative units are rejected.
    #[error("unit has negative value; traces of projections are positive")]
    NonPositiveUnit,

    /// The trivial unit 1 (power n = 0) does not define real multiplication.
    #[error("the trivial unit 1 (n = 0) is excluded")]
    TrivialUnit,

    /// An operation required theta in the open unit interval.
    #[error("theta must lie in (0,1); normalize it first")]
    ThetaNotNormalized,

    /// Malformed textual input (matrix or coefficient syntax).
    #[error("cannot parse input: {0}")]
    ParseInput(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
