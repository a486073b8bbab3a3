//! Seeded samplers for cube prefixes and paths of the triangular compactum.
//!
//! Every stream is a ChaCha8 keystream keyed by the master seed, with the
//! trial index selecting the stream number, so trial `i` draws the same
//! values no matter which worker runs it.

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::{sorted_order, MeasureSpec, SeedSpec, TriPath, UnitSample};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Resamples allowed per coordinate before giving up.
pub const MAX_RESAMPLES: u32 = 100;

pub fn stream(seed: SeedSpec) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.master_seed);
    rng.set_stream(seed.trial_index);
    rng
}

fn draw_open<T: Scalar, R: Rng + ?Sized>(rng: &mut R, index: usize, tries: &mut u32) -> Result<T> {
    loop {
        let u: f64 = rng.sample(Open01);
        // Narrow types may round onto the boundary.
        if let Some(v) = T::from_f64(u) {
            if v > T::zero() && v < T::one() {
                return Ok(v);
            }
        }
        *tries += 1;
        if *tries > MAX_RESAMPLES {
            return Err(Error::GeneratorFailure(index + 1));
        }
    }
}

/// Draws `n` i.i.d. uniform coordinates from `rng`, resampling exact collisions.
pub fn unit_prefix_from_rng<T: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<UnitSample<T>> {
    if n == 0 {
        return Err(Error::Length("prefix length must be at least 1".into()));
    }
    let mut tries = vec![0u32; n];
    let mut values = Vec::with_capacity(n);
    for (i, tries) in tries.iter_mut().enumerate() {
        values.push(draw_open::<T, R>(rng, i, tries)?);
    }
    loop {
        match sorted_order(&values) {
            Ok(_) => return Ok(UnitSample::from_distinct(values)),
            Err(Error::Tie(_, j)) => {
                let j = j - 1;
                tries[j] += 1;
                if tries[j] > MAX_RESAMPLES {
                    return Err(Error::GeneratorFailure(j + 1));
                }
                values[j] = draw_open::<T, R>(rng, j, &mut tries[j])?;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Prefix of length `n` of an `m^∞`-distributed trajectory.
pub fn sample_unit_prefix<T: Scalar>(n: usize, seed: SeedSpec) -> Result<UnitSample<T>> {
    unit_prefix_from_rng(n, &mut stream(seed))
}

pub fn tri_path_from_rng<R: Rng + ?Sized>(n: usize, spec: MeasureSpec, rng: &mut R) -> Result<TriPath> {
    if n == 0 {
        return Err(Error::Length("path length must be at least 1".into()));
    }
    spec.validate()?;
    let ranks = match spec {
        MeasureSpec::LebesgueProduct => {
            return Err(Error::InvalidMeasure(
                "paths under the Lebesgue product are obtained by encoding cube samples".into(),
            ))
        }
        MeasureSpec::Haar => (1..=n).map(|k| rng.gen_range(1..=k)).collect(),
        MeasureSpec::EwensLike(t) => (1..=n)
            .map(|k| {
                let u = rng.gen::<f64>() * (t + (k - 1) as f64);
                if u < (k - 1) as f64 {
                    u as usize + 1
                } else {
                    k
                }
            })
            .collect(),
    };
    Ok(TriPath::from_valid(ranks))
}

/// Path of length `n` with independent levels distributed by `spec`.
pub fn sample_tri_path(n: usize, spec: MeasureSpec, seed: SeedSpec) -> Result<TriPath> {
    tri_path_from_rng(n, spec, &mut stream(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use rand::rngs::mock::StepRng;

    #[test]
    fn deterministic_per_seed() {
        let a: UnitSample<f64> = sample_unit_prefix(3, SeedSpec::new(7, 0)).unwrap();
        let b: UnitSample<f64> = sample_unit_prefix(3, SeedSpec::new(7, 0)).unwrap();
        let c: UnitSample<f64> = sample_unit_prefix(3, SeedSpec::new(7, 1)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn single_coordinate_inside_unit_interval() {
        for trial in 0..100 {
            let x: UnitSample<f64> = sample_unit_prefix(1, SeedSpec::new(3, trial)).unwrap();
            assert!(x.values()[0] > 0.0 && x.values()[0] < 1.0);
        }
    }

    #[test]
    fn narrow_and_exact_scalars() {
        let x: UnitSample<f32> = sample_unit_prefix(1000, SeedSpec::new(1, 2)).unwrap();
        assert_eq!(x.len(), 1000);
        let r: UnitSample<BigRational> = sample_unit_prefix(20, SeedSpec::new(1, 2)).unwrap();
        let f: UnitSample<f64> = sample_unit_prefix(20, SeedSpec::new(1, 2)).unwrap();
        // from_f64 on rationals is exact
        for (a, b) in r.values().iter().zip(f.values()) {
            assert_eq!(num_traits::ToPrimitive::to_f64(a).unwrap(), *b);
        }
    }

    #[test]
    fn constant_generator_fails_after_cap() {
        // StepRng with zero increment returns the same word forever.
        let mut rng = StepRng::new(1 << 40, 0);
        let r: Result<UnitSample<f64>> = unit_prefix_from_rng(2, &mut rng);
        assert_eq!(r, Err(Error::GeneratorFailure(2)));
    }

    #[test]
    fn tri_path_level_one() {
        let t = sample_tri_path(1, MeasureSpec::Haar, SeedSpec::new(0, 0)).unwrap();
        assert_eq!(t.ranks(), &[1]);
        assert!(sample_tri_path(3, MeasureSpec::LebesgueProduct, SeedSpec::new(0, 0)).is_err());
        assert!(sample_tri_path(3, MeasureSpec::EwensLike(-0.5), SeedSpec::new(0, 0)).is_err());
    }
}
