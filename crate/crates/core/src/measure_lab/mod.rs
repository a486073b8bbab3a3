//! Statistical and exact verification harness.

mod entropy;
mod isometry;
mod report;
mod stats;
mod suites;

pub use entropy::{entropy_curve, EntropyCurve, EntropyPoint, FrameKind, FACTORIAL_CURVE_MAX, YOUNG_CURVE_MAX};
pub use isometry::{isometry_check, ISOMETRY_MAX_N};
pub use report::{CheckRecord, Relation, TestReport};
pub use stats::{binomial_z, chi_square, chi_square_quantile, contingency_chi_square};
pub use suites::*;
