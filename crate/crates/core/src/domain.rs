//! Value types shared by every module: unit-cube prefixes, paths of the
//! triangular compactum, i-permutations and permutations, measure and seed
//! descriptors.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Finite prefix `(x_1, ..., x_n)` of a Bernoulli trajectory: pairwise
/// distinct values strictly inside `(0,1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitSample<T> {
    values: Vec<T>,
}

impl<T: Scalar> UnitSample<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Length("a unit sample needs at least one coordinate".into()));
        }
        let zero = T::zero();
        let one = T::one();
        for (i, v) in values.iter().enumerate() {
            // NaN fails both comparisons.
            if !(*v > zero && *v < one) {
                return Err(Error::OutOfUnitInterval { index: i + 1 });
            }
        }
        sorted_order(&values)?;
        Ok(Self { values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The first `n` coordinates.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::Range(format!(
                "prefix length {n} outside 1..={}",
                self.len()
            )));
        }
        Ok(Self { values: self.values[..n].to_vec() })
    }

    pub(crate) fn from_distinct(values: Vec<T>) -> Self {
        debug_assert!(sorted_order(&values).is_ok());
        Self { values }
    }
}

/// Indices of `values` in increasing order of value, or the first tie found.
pub(crate) fn sorted_order<T: PartialOrd>(values: &[T]) -> Result<Vec<usize>> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    let mut incomparable = None;
    idx.sort_by(|&a, &b| {
        values[a].partial_cmp(&values[b]).unwrap_or_else(|| {
            incomparable.get_or_insert((a.min(b), a.max(b)));
            Ordering::Equal
        })
    });
    if let Some((a, b)) = incomparable {
        return Err(Error::Tie(a + 1, b + 1));
    }
    for w in idx.windows(2) {
        if values[w[0]] == values[w[1]] {
            return Err(Error::Tie(w[0].min(w[1]) + 1, w[0].max(w[1]) + 1));
        }
    }
    Ok(idx)
}

/// 1-based ranks of distinct values.
pub(crate) fn ranks_of<T: PartialOrd>(values: &[T]) -> Result<Vec<usize>> {
    let order = sorted_order(values)?;
    let mut ranks = vec![0; values.len()];
    for (r, &i) in order.iter().enumerate() {
        ranks[i] = r + 1;
    }
    Ok(ranks)
}

fn write_csv(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

pub(crate) fn parse_csv_ints(s: &str) -> Result<Vec<usize>> {
    s.trim()
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{p:?}: {e}")))
        })
        .collect()
}

/// Point of the triangular compactum truncated at level `n`: `t_k ∈ {1..k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct TriPath {
    ranks: Vec<usize>,
}

impl TriPath {
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidPath("empty path".into()));
        }
        for (k, &t) in ranks.iter().enumerate() {
            if t == 0 || t > k + 1 {
                return Err(Error::InvalidPath(format!(
                    "t_{} = {t} outside 1..={}",
                    k + 1,
                    k + 1
                )));
            }
        }
        Ok(Self { ranks })
    }

    pub(crate) fn from_valid(ranks: Vec<usize>) -> Self {
        debug_assert!(Self::new(ranks.clone()).is_ok());
        Self { ranks }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::Range(format!("prefix length {n} outside 1..={}", self.len())));
        }
        Ok(Self { ranks: self.ranks[..n].to_vec() })
    }
}

impl TryFrom<Vec<usize>> for TriPath {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<TriPath> for Vec<usize> {
    fn from(t: TriPath) -> Self {
        t.ranks
    }
}

impl fmt::Display for TriPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.ranks)
    }
}

impl std::str::FromStr for TriPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_csv_ints(s)?)
    }
}

fn check_permutation(xs: &[usize]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::InvalidPermutation("empty".into()));
    }
    let n = xs.len();
    let mut seen = vec![false; n];
    for &x in xs {
        if x == 0 || x > n {
            return Err(Error::InvalidPermutation(format!("entry {x} outside 1..={n}")));
        }
        if std::mem::replace(&mut seen[x - 1], true) {
            return Err(Error::InvalidPermutation(format!("entry {x} repeated")));
        }
    }
    Ok(())
}

macro_rules! permutation_type {
    ($(#[$meta:meta])* $name:ident, $field:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
        pub struct $name {
            $field: Vec<usize>,
        }

        impl $name {
            pub fn new($field: Vec<usize>) -> Result<Self> {
                check_permutation(&$field)?;
                Ok(Self { $field })
            }

            pub fn identity(n: usize) -> Self {
                assert!(n >= 1, "identity of length 0");
                Self { $field: (1..=n).collect() }
            }

            #[allow(dead_code)]
            pub(crate) fn from_valid($field: Vec<usize>) -> Self {
                debug_assert!(check_permutation(&$field).is_ok());
                Self { $field }
            }

            pub fn $field(&self) -> &[usize] {
                &self.$field
            }

            pub fn len(&self) -> usize {
                self.$field.len()
            }

            pub fn is_empty(&self) -> bool {
                self.$field.is_empty()
            }
        }

        impl TryFrom<Vec<usize>> for $name {
            type Error = Error;
            fn try_from(v: Vec<usize>) -> Result<Self> {
                Self::new(v)
            }
        }

        impl From<$name> for Vec<usize> {
            fn from(p: $name) -> Self {
                p.$field
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_csv(f, &self.$field)
            }
        }

        impl std::str::FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                Self::new(parse_csv_ints(s)?)
            }
        }
    };
}

permutation_type!(
    /// Rank vector `(k_1, ..., k_n)`: `k_i` is the 1-based rank of `x_i`.
    /// Labels a Weyl simplex of the unit cube.
    IPerm,
    ranks
);

permutation_type!(
    /// Element of the symmetric group, `images[i-1] = g(i)`.
    Perm,
    images
);

impl Perm {
    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &g) in self.images.iter().enumerate() {
            inv[g - 1] = i + 1;
        }
        Perm { images: inv }
    }
}

impl IPerm {
    /// Rank vector of the first `n` entries, re-standardized.
    pub fn prefix(&self, n: usize) -> Result<IPerm> {
        if n == 0 || n > self.len() {
            return Err(Error::Range(format!("prefix length {n} outside 1..={}", self.len())));
        }
        Ok(IPerm { ranks: ranks_of(&self.ranks[..n])? })
    }
}

/// Measures on the cube or on the triangular compactum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MeasureSpec {
    /// Product of Lebesgue measures on the cube.
    LebesgueProduct,
    /// Product of uniform measures on `{1..k}`.
    Haar,
    /// Level `k` puts mass `t/(t+k-1)` on `k` and `1/(t+k-1)` on each of `1..k-1`.
    EwensLike(f64),
}

impl MeasureSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MeasureSpec::EwensLike(t) if !(t > 0.0 && t.is_finite()) => {
                Err(Error::InvalidMeasure(format!("parameter t = {t} must be a positive real")))
            }
            _ => Ok(()),
        }
    }

    /// Level-`k` marginal of a path measure as a probability vector over `1..=k`.
    pub fn level_distribution(&self, k: usize) -> Result<Vec<f64>> {
        self.validate()?;
        match *self {
            MeasureSpec::LebesgueProduct => Err(Error::InvalidMeasure(
                "the Lebesgue product lives on the cube, not on paths".into(),
            )),
            MeasureSpec::Haar => Ok(vec![1.0 / k as f64; k]),
            MeasureSpec::EwensLike(t) => {
                let denom = t + k as f64 - 1.0;
                let mut p = vec![1.0 / denom; k];
                p[k - 1] = t / denom;
                Ok(p)
            }
        }
    }
}

/// Seed of a reproducible random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub trial_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        Self { master_seed, trial_index }
    }

    /// Same master seed, different trial.
    pub fn trial(&self, trial_index: u64) -> Self {
        Self { master_seed: self.master_seed, trial_index }
    }
}
