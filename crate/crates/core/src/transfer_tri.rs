//! The shift on cube prefixes and its image on the triangular compactum.

use serde::{Deserialize, Serialize};

use crate::domain::{IPerm, TriPath, UnitSample};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::weyl_codec::iperm_from_path;

/// Drops the first coordinate.
pub fn shift<T: Scalar>(x: &UnitSample<T>) -> Result<UnitSample<T>> {
    if x.len() <= 1 {
        return Err(Error::Length("shift needs at least two coordinates".into()));
    }
    Ok(UnitSample::from_distinct(x.values()[1..].to_vec()))
}

/// Marked positions of a path and their running totals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkVector {
    pub marks: Vec<bool>,
    /// `counts[k-1]` = number of marked positions among the first `k`.
    pub counts: Vec<usize>,
}

impl MarkVector {
    pub fn total(&self) -> usize {
        *self.counts.last().expect("paths are nonempty")
    }
}

/// Position 1 is marked; position `k+1` is marked iff `t_{k+1} ≤ m_k`.
///
/// For `t = encode(x)`, position `k` is marked exactly when `x_k ≤ x_1`, and
/// `m_k` is the rank of `x_1` among the first `k` coordinates.
pub fn marked_positions(t: &TriPath) -> MarkVector {
    let mut marks = Vec::with_capacity(t.len());
    let mut counts = Vec::with_capacity(t.len());
    let mut m = 0;
    for (k, &tk) in t.ranks().iter().enumerate() {
        let marked = k == 0 || tk <= m;
        if marked {
            m += 1;
        }
        marks.push(marked);
        counts.push(m);
    }
    MarkVector { marks, counts }
}

/// `t'_k = t_{k+1}` if position `k+1` is marked, else `t_{k+1} - 1`.
pub fn transfer(t: &TriPath) -> Result<TriPath> {
    if t.len() <= 1 {
        return Err(Error::Length("transfer needs a path of length at least 2".into()));
    }
    let mv = marked_positions(t);
    let out = t.ranks()[1..]
        .iter()
        .zip(&mv.marks[1..])
        .map(|(&tk, &marked)| if marked { tk } else { tk - 1 })
        .collect();
    Ok(TriPath::from_valid(out))
}

/// Rank vector after dropping the first coordinate: ranks above `k_1` move down.
pub fn translate_iperm(k: &IPerm) -> Result<IPerm> {
    if k.len() <= 1 {
        return Err(Error::Length("translation needs length at least 2".into()));
    }
    let first = k.ranks()[0];
    let out = k.ranks()[1..]
        .iter()
        .map(|&r| if r < first { r } else { r - 1 })
        .collect();
    Ok(IPerm::from_valid(out))
}

/// Checks `t_{k+1} − t'_k = 1 − (m_{k+1} − m_k)` at every position.
pub fn delta_relation_check(t: &TriPath) -> bool {
    let Ok(image) = transfer(t) else {
        return true;
    };
    let m = marked_positions(t).counts;
    (0..image.len()).all(|k| {
        let lhs = t.ranks()[k + 1] as isize - image.ranks()[k] as isize;
        let rhs = 1 - (m[k + 1] as isize - m[k] as isize);
        lhs == rhs
    })
}

/// `m_n / n`, which converges to `x_1`.
pub fn estimate_first<T: Scalar>(t: &TriPath) -> T {
    T::ratio(marked_positions(t).total(), t.len())
}

/// `x̂_k = rank_k / (n+1)` for `k = 1..=k_max`.
pub fn reconstruct<T: Scalar>(t: &TriPath, k_max: usize) -> Result<Vec<T>> {
    if k_max == 0 || k_max > t.len() {
        return Err(Error::Range(format!("k_max = {k_max} outside 1..={}", t.len())));
    }
    let n = t.len();
    let ranks = iperm_from_path(t);
    Ok(ranks.ranks()[..k_max].iter().map(|&r| T::ratio(r, n + 1)).collect())
}

/// Outcome of [`separate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Separation {
    /// The first level at which the order types differ, and the least pair
    /// `i < j` compared in opposite directions there.
    Witness { level: usize, i: usize, j: usize },
    NotSeparated,
}

pub fn separate<T: Scalar>(x: &UnitSample<T>, y: &UnitSample<T>) -> Result<Separation> {
    if x.len() != y.len() {
        return Err(Error::Length(format!(
            "cannot compare prefixes of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    let (xs, ys) = (x.values(), y.values());
    for n in 1..xs.len() {
        for i in 0..n {
            if (xs[i] < xs[n]) != (ys[i] < ys[n]) {
                return Ok(Separation::Witness { level: n + 1, i: i + 1, j: n + 1 });
            }
        }
    }
    Ok(Separation::NotSeparated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl_codec::{encode, iperm_of};

    fn sample(v: &[f64]) -> UnitSample<f64> {
        UnitSample::new(v.to_vec()).unwrap()
    }

    fn path(v: &[usize]) -> TriPath {
        TriPath::new(v.to_vec()).unwrap()
    }

    #[test]
    fn shift_examples() {
        let x = sample(&[0.3, 0.9, 0.1]);
        assert_eq!(shift(&x).unwrap().values(), &[0.9, 0.1]);
        let mut y = x.clone();
        for _ in 0..2 {
            y = shift(&y).unwrap();
        }
        assert_eq!(y.values(), &[0.1]);
        assert!(shift(&y).is_err());
        let inc = sample(&[0.1, 0.2, 0.4]);
        let s = shift(&inc).unwrap();
        assert!(s.values().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn marks_example() {
        let mv = marked_positions(&path(&[1, 2, 1, 3]));
        assert_eq!(mv.marks, vec![true, false, true, false]);
        assert_eq!(mv.counts, vec![1, 1, 2, 2]);
        // x = (0.3, 0.9, 0.1, 0.6): marked iff x_k <= x_1
        let x = [0.3, 0.9, 0.1, 0.6];
        let direct: Vec<bool> = x.iter().map(|&v| v <= x[0]).collect();
        assert_eq!(encode(&sample(&x)).ranks(), &[1, 2, 1, 3]);
        assert_eq!(mv.marks, direct);

        let inc = marked_positions(&path(&[1, 2, 3, 4, 5]));
        assert_eq!(inc.marks, vec![true, false, false, false, false]);
        let dec = marked_positions(&path(&[1; 5]));
        assert!(dec.marks.iter().all(|&m| m));
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(transfer(&path(&[1, 2, 1, 3])).unwrap().ranks(), &[1, 1, 2]);
        let x = sample(&[0.3, 0.9, 0.1, 0.6]);
        assert_eq!(encode(&shift(&x).unwrap()).ranks(), &[1, 1, 2]);
        assert_eq!(transfer(&path(&[1; 6])).unwrap().ranks(), &[1; 5]);
        assert_eq!(transfer(&path(&[1, 2, 3, 4])).unwrap().ranks(), &[1, 2, 3]);
        assert!(transfer(&path(&[1])).is_err());
    }

    #[test]
    fn translate_examples() {
        let k = IPerm::new(vec![2, 4, 1, 3]).unwrap();
        assert_eq!(translate_iperm(&k).unwrap().ranks(), &[3, 1, 2]);
        assert_eq!(iperm_of(&sample(&[0.9, 0.1, 0.6])).ranks(), &[3, 1, 2]);
        assert_eq!(translate_iperm(&IPerm::identity(5)).unwrap(), IPerm::identity(4));
        let k = IPerm::new(vec![5, 1, 2, 3, 4]).unwrap();
        assert_eq!(translate_iperm(&k).unwrap(), IPerm::identity(4));
        assert!(translate_iperm(&IPerm::identity(1)).is_err());
    }

    #[test]
    fn delta_relation_examples() {
        assert!(delta_relation_check(&path(&[1, 2, 1, 3])));
        assert!(delta_relation_check(&path(&[1, 1])));
    }

    #[test]
    fn estimate_first_extremes() {
        assert_eq!(estimate_first::<f64>(&path(&[1; 100])), 1.0);
        let inc: Vec<usize> = (1..=100).collect();
        assert_eq!(estimate_first::<f64>(&path(&inc)), 0.01);
    }

    #[test]
    fn reconstruct_examples() {
        let r: Vec<f64> = reconstruct(&path(&[1, 1, 3]), 3).unwrap();
        assert_eq!(r, vec![0.5, 0.25, 0.75]);
        let r: Vec<f64> = reconstruct(&path(&[1]), 1).unwrap();
        assert_eq!(r, vec![0.5]);
        assert!(reconstruct::<f64>(&path(&[1, 1]), 3).is_err());
    }

    #[test]
    fn separate_examples() {
        let x = sample(&[0.5, 0.2]);
        let y = sample(&[0.2, 0.5]);
        assert_eq!(separate(&x, &y).unwrap(), Separation::Witness { level: 2, i: 1, j: 2 });
        assert_eq!(separate(&x, &x).unwrap(), Separation::NotSeparated);
        assert!(separate(&x, &sample(&[0.1])).is_err());
        let x = sample(&[0.1, 0.2, 0.3]);
        let y = sample(&[0.1, 0.2, 0.05]);
        assert_eq!(separate(&x, &y).unwrap(), Separation::Witness { level: 3, i: 1, j: 3 });
    }
}
