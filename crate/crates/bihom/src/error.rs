//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Operand dimensions disagree.
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    /// A structure map that must be invertible is not.
    #[error("Singular: {0}")]
    Singular(String),

    /// A perturbation element is not fixed by the required map powers.
    #[error("NotFixed: {0}")]
    NotFixed(String),

    /// A twisting map fails to be multiplicative for some product.
    #[error("NotMorphism: {0}")]
    NotMorphism(String),

    /// Two maps that must commute do not.
    #[error("MapsDontCommute: {0}")]
    MapsDontCommute(String),

    /// The base product handed to the derivation construction is not
    /// commutative and associative.
    #[error("NotCommutativeAssociative: {0}")]
    NotCommutativeAssociative(String),

    /// The supplied map is not a derivation of the product.
    #[error("NotDerivation: {0}")]
    NotDerivation(String),

    /// A classical (untwisted) check was requested with non-identity
    /// structure maps.
    #[error("NotClassical: {0}")]
    NotClassical(String),

    /// A check whose meaning depends on another identity was run on a
    /// bundle where that prerequisite identity fails.
    #[error("PrereqFailed: {0}")]
    PrereqFailed(String),

    /// Bundle data violates a structural invariant (maps must commute and
    /// be multiplicative for every product).
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    /// Two routes that are proven to agree disagreed; this indicates a bug
    /// in this crate, never in the input.
    #[error("invariant violation (implementation bug): {0}")]
    InvariantViolation(String),

    /// The requested suite needs a product the input does not carry.
    #[error("SuiteInapplicable: {0}")]
    SuiteInapplicable(String),

    /// Malformed input file or parameter.
    #[error("parse error: {0}")]
    Parse(String),
}
