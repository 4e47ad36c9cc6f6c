//! Symbolic-numeric engine for deformation quantization by cocycle twists.
//!
//! The engine works with exact Q(i) coefficients and formal power series in
//! the deformation parameter h truncated at a configurable order, so every
//! algebraic identity (cocycle condition, star-product axioms, module laws)
//! is decided by exact equality. The only floating-point corner is the
//! Chern-number quadrature in [`chern`].

pub mod chern;
pub mod error;
pub mod model;
pub mod module;
pub mod report;
pub mod scalar;
pub mod series;
pub mod star;
pub mod twist;
pub mod uea;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use series::TruncatedSeries;
