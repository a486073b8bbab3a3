//! Weyl simplices against delta functions on `S_n`.
//!
//! `l²(S_n)` carries the counting measure scaled by `1/n!`, so a delta
//! function has squared norm `1/n!`, the same as an indicator of a simplex.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::report::{Relation, TestReport};
use super::stats::binomial_z;
use crate::domain::{IPerm, SeedSpec};
use crate::enumerate::iperms;
use crate::error::{Error, Result};
use crate::sampling::{stream, unit_prefix_from_rng};
use crate::weyl_codec::{cell_measure, iperm_of, CellLabel};

pub const ISOMETRY_MAX_N: usize = 6;
const MC_CHUNK: u64 = 10_000;

/// Volume of `{x ∈ [0,1]^n : x_{c_1} < … < x_{c_n}}` by integrating the
/// innermost coordinate first; an exact polynomial computation.
fn chain_volume(n: usize) -> BigRational {
    // p(x) = coefficients of the running integrand in x
    let mut p: Vec<BigRational> = vec![BigRational::one()];
    for _ in 0..n {
        let mut q = vec![BigRational::zero()];
        for (d, c) in p.iter().enumerate() {
            q.push(c / BigRational::from_integer(BigInt::from(d + 1)));
        }
        p = q;
    }
    p.into_iter().fold(BigRational::zero(), |a, c| a + c)
}

/// Number of linear orders of `0..n` satisfying every `a < b` in `rel`.
fn linear_extensions(n: usize, rel: &[(usize, usize)]) -> u64 {
    let mut below = vec![0u32; n];
    for &(a, b) in rel {
        below[b] |= 1 << a;
    }
    let mut ways = vec![0u64; 1 << n];
    ways[0] = 1;
    for set in 0..(1u32 << n) {
        let w = ways[set as usize];
        if w == 0 {
            continue;
        }
        for v in 0..n {
            if set & (1 << v) == 0 && below[v] & !set == 0 {
                ways[(set | 1 << v) as usize] += w;
            }
        }
    }
    ways[(1 << n) - 1]
}

/// Chain constraints `x_a < x_b` of the simplex labelled `k`.
fn constraints(k: &IPerm) -> Vec<(usize, usize)> {
    let mut by_rank = vec![0; k.len()];
    for (i, &r) in k.ranks().iter().enumerate() {
        by_rank[r - 1] = i;
    }
    by_rank.windows(2).map(|w| (w[0], w[1])).collect()
}

/// `⟨1_{Δ_w}, 1_{Δ_v}⟩`: the intersection is a union of simplices, one per
/// linear extension of the combined constraints.
fn indicator_product(n: usize, vol: &BigRational, w: &IPerm, v: &IPerm) -> BigRational {
    let mut rel = constraints(w);
    rel.extend(constraints(v));
    vol * BigRational::from_integer(BigInt::from(linear_extensions(n, &rel)))
}

fn delta_product(n_fact: &BigInt, w: &IPerm, v: &IPerm) -> BigRational {
    if w == v {
        BigRational::new(BigInt::one(), n_fact.clone())
    } else {
        BigRational::zero()
    }
}

/// Exact comparison of the Gram matrices plus, when `mc_points > 0`, a
/// Monte Carlo census of the simplices.
pub fn isometry_check(n: usize, mc_points: u64, seed: SeedSpec) -> Result<TestReport> {
    if !(2..=ISOMETRY_MAX_N).contains(&n) {
        return Err(Error::Domain(format!("isometry check needs 2 <= n <= {ISOMETRY_MAX_N}, got {n}")));
    }
    let mut report = TestReport::new("isometry", Some(seed.master_seed));
    let cells = iperms(n);
    let vol = chain_volume(n);
    let n_fact: BigInt = (1..=n).map(BigInt::from).product();

    let volume_mismatch = cells.iter().filter(|k| cell_measure(&CellLabel::new((*k).clone())) != vol).count();
    report.zero(format!("n={n} simplex volume equals cell measure"), volume_mismatch as u64, cells.len() as u64);

    let gram_mismatch: u64 = cells
        .par_iter()
        .map(|w| {
            cells
                .iter()
                .filter(|v| indicator_product(n, &vol, w, v) != delta_product(&n_fact, w, v))
                .count() as u64
        })
        .sum();
    report.zero(
        format!("n={n} Gram matrices agree exactly"),
        gram_mismatch,
        (cells.len() * cells.len()) as u64,
    );
    report.note(&format!("n{n}_volume"), serde_json::Value::String(vol.to_string()));

    if mc_points > 0 {
        let index = |k: &IPerm| cells.binary_search(k).expect("every label is enumerated");
        let chunks = mc_points.div_ceil(MC_CHUNK);
        let counts = (0..chunks)
            .into_par_iter()
            .map(|c| -> Result<Vec<u64>> {
                let mut rng = stream(seed.trial(seed.trial_index.wrapping_add(c)));
                let mut counts = vec![0u64; cells.len()];
                let len = MC_CHUNK.min(mc_points - c * MC_CHUNK);
                for _ in 0..len {
                    let x = unit_prefix_from_rng::<f64, _>(n, &mut rng)?;
                    counts[index(&iperm_of(&x))] += 1;
                }
                Ok(counts)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(vec![0u64; cells.len()], |mut acc, c| {
                acc.iter_mut().zip(c).for_each(|(a, b)| *a += b);
                acc
            });
        let p = 1.0 / cells.len() as f64;
        let worst = counts.iter().map(|&h| binomial_z(h, mc_points, p)).fold(0.0, f64::max);
        report.check(format!("n={n} worst simplex frequency z-score"), worst, Relation::AtMost, 3.0, mc_points);
        report.note(&format!("n{n}_counts"), serde_json::json!(counts));
    }
    Ok(report)
}
