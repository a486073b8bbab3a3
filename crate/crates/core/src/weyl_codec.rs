//! The sequential-rank encoding of cube prefixes into the triangular
//! compactum, its inverse on i-permutations, and the order-kernel
//! generalization.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::distributions::Open01;
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::domain::{ranks_of, IPerm, TriPath, UnitSample};
use crate::error::{Error, Result};
use crate::fenwick::Fenwick;
use crate::scalar::Scalar;

/// Sequential ranks of distinct ranks `1..=n`.
fn sequential_ranks(ranks: &[usize]) -> Vec<usize> {
    let mut seen = Fenwick::new(ranks.len());
    ranks
        .iter()
        .map(|&r| {
            let t = 1 + seen.prefix_sum(r - 1);
            seen.add(r, 1);
            t
        })
        .collect()
}

/// `t_k = 1 + #{i < k : x_i < x_k}`.
pub fn encode<T: Scalar>(x: &UnitSample<T>) -> TriPath {
    let ranks = ranks_of(x.values()).expect("unit samples are tie-free");
    TriPath::from_valid(sequential_ranks(&ranks))
}

/// [`encode`] on an unchecked slice; only the order of the values matters.
pub fn encode_slice<T: PartialOrd>(values: &[T]) -> Result<TriPath> {
    if values.is_empty() {
        return Err(Error::Length("cannot encode an empty prefix".into()));
    }
    let ranks = ranks_of(values)?;
    Ok(TriPath::from_valid(sequential_ranks(&ranks)))
}

/// `k_i = 1 + #{s : x_s < x_i}`, the label of the Weyl simplex containing `x`.
pub fn iperm_of<T: Scalar>(x: &UnitSample<T>) -> IPerm {
    IPerm::from_valid(ranks_of(x.values()).expect("unit samples are tie-free"))
}

pub fn iperm_of_slice<T: PartialOrd>(values: &[T]) -> Result<IPerm> {
    if values.is_empty() {
        return Err(Error::Length("cannot rank an empty prefix".into()));
    }
    Ok(IPerm::from_valid(ranks_of(values)?))
}

/// The unique i-permutation whose sequential ranks are `t`.
///
/// Scanning from the last position down, `x_j` is the `t_j`-th smallest of
/// the ranks not yet claimed by later positions.
pub fn iperm_from_path(t: &TriPath) -> IPerm {
    let n = t.len();
    let mut free = Fenwick::full(n);
    let mut ranks = vec![0; n];
    for j in (0..n).rev() {
        let r = free.select(t.ranks()[j]);
        free.add(r, -1);
        ranks[j] = r;
    }
    IPerm::from_valid(ranks)
}

/// Inverse of [`iperm_from_path`]: `t_j = 1 + #{i < j : k_i < k_j}`.
pub fn path_from_iperm(k: &IPerm) -> TriPath {
    TriPath::from_valid(sequential_ranks(k.ranks()))
}

/// Binary relation standing in for `<` on an abstract state space, with a
/// sampler for the underlying measure.
pub trait OrderKernel {
    type State;

    /// Whether `u` sits below `v`.
    fn precedes(&self, u: &Self::State, v: &Self::State) -> bool;

    fn sample_state(&self, rng: &mut dyn RngCore) -> Self::State;
}

/// `u < v` on `(0,1)` with uniform states.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardKernel;

impl OrderKernel for StandardKernel {
    type State = f64;

    fn precedes(&self, u: &f64, v: &f64) -> bool {
        u < v
    }

    fn sample_state(&self, rng: &mut dyn RngCore) -> f64 {
        rng.sample(Open01)
    }
}

/// `φ(u) < φ(v)` with `φ(u) = u + 1/2 mod 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShiftedKernel;

impl ShiftedKernel {
    pub fn phi(u: f64) -> f64 {
        let s = u + 0.5;
        if s >= 1.0 {
            s - 1.0
        } else {
            s
        }
    }
}

impl OrderKernel for ShiftedKernel {
    type State = f64;

    fn precedes(&self, u: &f64, v: &f64) -> bool {
        Self::phi(*u) < Self::phi(*v)
    }

    fn sample_state(&self, rng: &mut dyn RngCore) -> f64 {
        rng.sample(Open01)
    }
}

/// Kernel built from closures.
pub struct FnKernel<P, G> {
    pub pred: P,
    pub gen: G,
}

impl<S, P, G> OrderKernel for FnKernel<P, G>
where
    P: Fn(&S, &S) -> bool,
    G: Fn(&mut dyn RngCore) -> S,
{
    type State = S;

    fn precedes(&self, u: &S, v: &S) -> bool {
        (self.pred)(u, v)
    }

    fn sample_state(&self, rng: &mut dyn RngCore) -> S {
        (self.gen)(rng)
    }
}

/// One element of the level-`n` order partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellLabel {
    level: usize,
    iperm: IPerm,
}

impl CellLabel {
    pub fn new(iperm: IPerm) -> Self {
        Self { level: iperm.len(), iperm }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn iperm(&self) -> &IPerm {
        &self.iperm
    }
}

/// Cell labels of every prefix of `states`, ranking with `kernel` in place of `<`.
pub fn generalized_encode<K: OrderKernel>(states: &[K::State], kernel: &K) -> Result<Vec<CellLabel>> {
    let mut ranks: Vec<usize> = Vec::with_capacity(states.len());
    let mut labels = Vec::with_capacity(states.len());
    for (n, new) in states.iter().enumerate() {
        let mut below = 0;
        for (s, old) in states[..n].iter().enumerate() {
            let old_below = kernel.precedes(old, new);
            if old_below == kernel.precedes(new, old) {
                return Err(Error::KernelUndecided(s + 1, n + 1));
            }
            if old_below {
                below += 1;
            } else {
                ranks[s] += 1;
            }
        }
        ranks.push(below + 1);
        let iperm = IPerm::new(ranks.clone())
            .map_err(|_| intransitive_triple(&states[..=n], kernel))?;
        labels.push(CellLabel::new(iperm));
    }
    Ok(labels)
}

fn intransitive_triple<K: OrderKernel>(states: &[K::State], kernel: &K) -> Error {
    let n = states.len();
    let a = |i: usize, j: usize| kernel.precedes(&states[i], &states[j]);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k && a(i, j) && a(j, k) && a(k, i) {
                    return Error::NonRealizable(i + 1, j + 1, k + 1);
                }
            }
        }
    }
    unreachable!("a tournament with non-distinct scores has a 3-cycle")
}

/// Measure of a level-`n` cell: exactly `1/n!`.
pub fn cell_measure(label: &CellLabel) -> BigRational {
    let fact: BigInt = (1..=label.level()).map(BigInt::from).product();
    BigRational::new(BigInt::one(), fact)
}
