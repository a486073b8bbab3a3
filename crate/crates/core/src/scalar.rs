//! Scalar abstraction for coordinates of Bernoulli prefixes.
//!
//! The encodings only ever compare coordinates, so any ordered numeric type
//! works: `f32`, `f64`, or exact rationals. Samplers draw `f64` values and
//! convert them with [`FromPrimitive`].

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// An ordered field-like scalar usable as a coordinate of the unit cube.
pub trait Scalar:
    Num + PartialOrd + Clone + Debug + FromPrimitive + ToPrimitive + Send + Sync
{
    /// `numer / denom` as a scalar.
    fn ratio(numer: usize, denom: usize) -> Self {
        Self::from_usize(numer).expect("count fits scalar")
            / Self::from_usize(denom).expect("count fits scalar")
    }
}

impl<T> Scalar for T where
    T: Num + PartialOrd + Clone + Debug + FromPrimitive + ToPrimitive + Send + Sync
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn ratio_is_exact_for_rationals() {
        let r = BigRational::ratio(1, 3);
        assert_eq!(r * BigRational::ratio(3, 1), BigRational::ratio(1, 1));
        assert_eq!(f64::ratio(1, 4), 0.25);
        assert_eq!(f32::ratio(3, 4), 0.75);
    }
}
