//! Sequential-rank encoding of the continuous Bernoulli scheme.
//!
//! A uniform prefix `(x_1, ..., x_n)` is encoded by its sequential ranks
//! `t_k ∈ {1..k}`, a point of the triangular compactum. Under this map the
//! shift becomes a local transfer on paths, which the crate computes,
//! inverts, and verifies exhaustively and statistically. The same machinery
//! is set up for general graded graphs; on the Young graph the transfer is
//! Schützenberger's promotion.

pub mod domain;
pub mod enumerate;
pub mod error;
mod fenwick;
pub mod graded;
pub mod measure_lab;
pub mod perm_limits;
pub mod sampling;
pub mod scalar;
pub mod transfer_tri;
pub mod weyl_codec;

pub use domain::{IPerm, MeasureSpec, Perm, SeedSpec, TriPath, UnitSample};
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Prefix with `f64` coordinates.
pub type Sample = UnitSample<f64>;
/// Prefix with `f32` coordinates.
pub type Sample32 = UnitSample<f32>;
/// Prefix with exact rational coordinates.
pub type ExactSample = UnitSample<Rational>;
