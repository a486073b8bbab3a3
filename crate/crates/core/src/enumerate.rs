//! Exhaustive enumerations used by the verification suites.

use itertools::Itertools;

use crate::domain::{IPerm, TriPath, UnitSample};

/// All i-permutations of length `n` in lexicographic order.
pub fn iperms(n: usize) -> Vec<IPerm> {
    (1..=n).permutations(n).map(IPerm::from_valid).collect()
}

/// All paths of length `n` in the triangular compactum, lexicographically.
pub fn tri_paths(n: usize) -> Vec<TriPath> {
    let mut out = Vec::new();
    let mut cur = vec![1; n];
    loop {
        out.push(TriPath::from_valid(cur.clone()));
        // odometer with digit k ranging over 1..=k+1
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < k + 1 {
                cur[k] += 1;
                break;
            }
            cur[k] = 1;
        }
    }
}

/// A point of the open Weyl simplex labelled `k`: `x_i = k_i / (n+1)`.
pub fn representative(k: &IPerm) -> UnitSample<f64> {
    let n = k.len() as f64;
    UnitSample::from_distinct(k.ranks().iter().map(|&r| r as f64 / (n + 1.0)).collect())
}
