//! Projections `S_n → S_{n-1}` and the pairwise-comparison encoding.

use std::fmt;
use std::str::FromStr;

use crate::domain::{IPerm, Perm, UnitSample};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn need_two(len: usize, what: &str) -> Result<()> {
    if len < 2 {
        return Err(Error::Length(format!("{what} needs length at least 2")));
    }
    Ok(())
}

/// Removes the symbol `n` from the cycle structure: the preimage of `n` is
/// sent to `g(n)` instead.
pub fn derivative_perm(g: &Perm) -> Result<Perm> {
    need_two(g.len(), "derivative permutation")?;
    let n = g.len();
    let imgs = g.images();
    let out = imgs[..n - 1]
        .iter()
        .map(|&v| if v == n { imgs[n - 1] } else { v })
        .collect();
    Ok(Perm::from_valid(out))
}

/// Deletes the entry equal to `n`, keeping the order of the rest.
pub fn shrink_iperm(k: &IPerm) -> Result<IPerm> {
    need_two(k.len(), "smaller i-permutation")?;
    let n = k.len();
    Ok(IPerm::from_valid(k.ranks().iter().copied().filter(|&r| r != n).collect()))
}

/// Deletes `1` and lowers every value: with `r = g⁻¹(1)`, position `r-1`
/// receives `g(1) - 1` and every other position `i` receives `g(i+1) - 1`.
pub fn delete_one(g: &Perm) -> Result<Perm> {
    need_two(g.len(), "delete-one")?;
    let imgs = g.images();
    let r = imgs.iter().position(|&v| v == 1).expect("permutation contains 1") + 1;
    let out = (1..imgs.len())
        .map(|i| if r >= 2 && i == r - 1 { imgs[0] - 1 } else { imgs[i] - 1 })
        .collect();
    Ok(Perm::from_valid(out))
}

/// Signs `ε_ij ∈ {+1, −1}` on unordered index pairs: `ε_ij = +1` iff `x_i > x_j`.
///
/// Only the strict lower triangle (`i > j`) is stored; the rest follows from
/// `ε_ji = −ε_ij` and `ε_ii = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComparisonMatrix {
    n: usize,
    lower: Vec<i8>,
}

fn lower_index(i: usize, j: usize) -> usize {
    (i - 1) * (i - 2) / 2 + (j - 1)
}

impl ComparisonMatrix {
    /// Builds a matrix from its strict lower triangle in row order
    /// `ε_21, ε_31, ε_32, ε_41, ...`. Realizability is not checked here.
    pub fn from_lower(n: usize, lower: Vec<i8>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Length("comparison matrix of dimension 0".into()));
        }
        if lower.len() != n * (n - 1) / 2 {
            return Err(Error::Length(format!(
                "dimension {n} needs {} entries, got {}",
                n * (n - 1) / 2,
                lower.len()
            )));
        }
        if let Some(bad) = lower.iter().find(|&&e| e != 1 && e != -1) {
            return Err(Error::Parse(format!("entry {bad} is not ±1")));
        }
        Ok(Self { n, lower })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `ε_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> i8 {
        assert!(i >= 1 && j >= 1 && i <= self.n && j <= self.n, "index out of range");
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => self.lower[lower_index(i, j)],
            std::cmp::Ordering::Less => -self.lower[lower_index(j, i)],
        }
    }

    pub fn lower(&self) -> &[i8] {
        &self.lower
    }

    /// A cyclic triple `(i, j, k)` with `ε_ij = ε_jk = ε_ki = +1`, if any.
    pub fn cyclic_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for i in 1..=n {
            for j in 1..=n {
                if self.get(i, j) != 1 {
                    continue;
                }
                for k in 1..=n {
                    if self.get(j, k) == 1 && self.get(k, i) == 1 {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_realizable(&self) -> bool {
        self.cyclic_triple().is_none()
    }
}

/// One row per line, row `i` listing `ε_i1 .. ε_i,i-1` as `+`/`-`; the first
/// row is empty.
impl fmt::Display for ComparisonMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            for j in 1..i {
                f.write_str(if self.get(i, j) > 0 { "+" } else { "-" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl FromStr for ComparisonMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.split_terminator('\n').collect();
        let n = rows.len();
        let mut lower = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for (i, row) in rows.iter().enumerate() {
            let row = row.strip_suffix('\r').unwrap_or(row);
            let mut count = 0;
            for c in row.chars() {
                lower.push(match c {
                    '+' => 1,
                    '-' | '\u{2212}' => -1,
                    other => return Err(Error::Parse(format!("row {}: unexpected {other:?}", i + 1))),
                });
                count += 1;
            }
            if count != i {
                return Err(Error::Parse(format!(
                    "row {} has {count} entries, expected {i}",
                    i + 1
                )));
            }
        }
        Self::from_lower(n, lower)
    }
}

pub fn matrix_encode<T: Scalar>(x: &UnitSample<T>) -> ComparisonMatrix {
    let v = x.values();
    let n = v.len();
    let mut lower = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..n {
        for j in 0..i {
            lower.push(if v[i] > v[j] { 1 } else { -1 });
        }
    }
    ComparisonMatrix { n, lower }
}

/// `rank_i = 1 + #{j : ε_ij = +1}`.
pub fn matrix_decode(m: &ComparisonMatrix) -> Result<IPerm> {
    let n = m.dim();
    let ranks: Vec<usize> = (1..=n)
        .map(|i| 1 + (1..=n).filter(|&j| m.get(i, j) == 1).count())
        .collect();
    // Scores are distinct exactly for transitive tournaments.
    IPerm::new(ranks).map_err(|_| {
        let (i, j, k) = m.cyclic_triple().expect("intransitive tournament has a 3-cycle");
        Error::NonRealizable(i, j, k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    /// Derivative via cycles: splice `n` out of the cycle containing it.
    fn derivative_by_cycles(g: &Perm) -> Perm {
        let n = g.len();
        let img = g.images();
        let mut out = vec![0; n - 1];
        for i in 1..n {
            let mut next = img[i - 1];
            if next == n {
                next = img[n - 1];
            }
            out[i - 1] = next;
        }
        Perm::new(out).unwrap()
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(derivative_perm(&perm(&[2, 4, 1, 3])).unwrap(), perm(&[2, 3, 1]));
        assert_eq!(derivative_perm(&Perm::identity(5)).unwrap(), Perm::identity(4));
        assert_eq!(derivative_perm(&perm(&[1, 3, 2])).unwrap(), perm(&[1, 2]));
        assert_eq!(derivative_by_cycles(&perm(&[1, 3, 2])), perm(&[1, 2]));
        assert!(derivative_perm(&Perm::identity(1)).is_err());
    }

    #[test]
    fn shrink_examples() {
        let k = IPerm::new(vec![2, 4, 1, 3]).unwrap();
        assert_eq!(shrink_iperm(&k).unwrap().ranks(), &[2, 1, 3]);
        assert_eq!(shrink_iperm(&IPerm::identity(4)).unwrap(), IPerm::identity(3));
        let rev = IPerm::new(vec![4, 3, 2, 1]).unwrap();
        assert_eq!(shrink_iperm(&rev).unwrap().ranks(), &[3, 2, 1]);
    }

    #[test]
    fn delete_one_examples() {
        assert_eq!(delete_one(&Perm::identity(4)).unwrap(), Perm::identity(3));
        assert_eq!(delete_one(&perm(&[3, 1, 2])).unwrap(), perm(&[2, 1]));
        assert_eq!(delete_one(&perm(&[2, 4, 1, 3])).unwrap(), perm(&[3, 1, 2]));
        assert!(delete_one(&Perm::identity(1)).is_err());
    }

    #[test]
    fn matrix_examples() {
        let x = UnitSample::new(vec![0.3, 0.9, 0.1]).unwrap();
        let m = matrix_encode(&x);
        assert_eq!((m.get(2, 1), m.get(3, 1), m.get(3, 2)), (1, -1, -1));
        assert_eq!(m.get(1, 2), -1);
        assert_eq!(m.get(2, 2), 0);
        assert_eq!(matrix_decode(&m).unwrap().ranks(), &[2, 3, 1]);

        let inc = UnitSample::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let m = matrix_encode(&inc);
        for i in 1..=4 {
            for j in 1..=4 {
                if i != j {
                    assert_eq!(m.get(i, j) == 1, i > j);
                }
            }
        }
        assert_eq!(matrix_decode(&m).unwrap(), IPerm::identity(4));

        let one = matrix_encode(&UnitSample::new(vec![0.5]).unwrap());
        assert!(one.lower().is_empty());
    }

    #[test]
    fn cyclic_matrix_rejected() {
        // ε_12 = ε_23 = ε_31 = +1, i.e. ε_21 = -1, ε_31 = +1, ε_32 = -1
        let m = ComparisonMatrix::from_lower(3, vec![-1, 1, -1]).unwrap();
        assert_eq!((m.get(1, 2), m.get(2, 3), m.get(3, 1)), (1, 1, 1));
        assert!(!m.is_realizable());
        assert!(matches!(matrix_decode(&m), Err(Error::NonRealizable(..))));
    }

    #[test]
    fn text_dump() {
        let x = UnitSample::new(vec![0.3, 0.9, 0.1]).unwrap();
        let m = matrix_encode(&x);
        let text = m.to_string();
        assert_eq!(text, "\n+\n--\n");
        assert_eq!(text.parse::<ComparisonMatrix>().unwrap(), m);
        assert_eq!("\n+\n\u{2212}\u{2212}\n".parse::<ComparisonMatrix>().unwrap(), m);
        assert!("\n++\n".parse::<ComparisonMatrix>().is_err());
        assert!("\n*\n".parse::<ComparisonMatrix>().is_err());
    }
}
