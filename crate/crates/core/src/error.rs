//! Error type shared by every subsystem.

use thiserror::Error;

/// Errors produced by the symbolic and numeric operations.
///
/// Structural errors (mismatched orders, specs, arities, dimensions) mean the
/// operands cannot be combined at all; domain errors mean the operands are
/// structurally fine but the operation is undefined for their values.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("coefficient list has {got} entries, expected {expected}")]
    CoefficientCount { expected: usize, got: usize },

    #[error("Lie algebra spec mismatch: {left} vs {right}")]
    SpecMismatch { left: String, right: String },

    #[error("tensor arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("tensor leg {leg} out of range for arity {arity}")]
    LegOutOfRange { leg: usize, arity: usize },

    #[error("model dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("not invertible: {what}")]
    NotInvertible { what: String },

    #[error("exponent has nonzero constant term: {term}")]
    NonzeroConstantTerm { term: String },

    #[error("gauge head does not divide the coefficient at order {order}")]
    GaugeDivision { order: usize },

    #[error("gauge head fails to commute with the coproduct of generator {generator}")]
    GaugeCommutation { generator: String },

    #[error("input depends on h where an h-constant value is required: {what}")]
    NotHConstant { what: String },

    #[error("no Poisson structure is defined for this model (dimension {dim})")]
    NoPoissonStructure { dim: usize },

    #[error("equivalence map does not fix the unit: T(1) = {value}")]
    UnitNotFixed { value: String },

    #[error("invalid Lie algebra: {details}")]
    InvalidLieAlgebra { details: String },

    #[error("action is not a Lie algebra homomorphism: {details}")]
    NotAHomomorphism { details: String },

    #[error("twist failed validation: {details}")]
    InvalidTwist { details: String },

    #[error("section operator is not periodic: {what}")]
    NonPeriodic { what: String },

    #[error("Leibniz rule violated by {operator} on test function {function}")]
    LeibnizViolation { operator: String, function: String },

    #[error("section operators do not commute: [op_x, op_y] = {commutator}")]
    NonCommutingAction { commutator: String },

    #[error("declared degree {declared} does not match computed Chern number {computed}")]
    DegreeMismatch { declared: i64, computed: f64 },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
