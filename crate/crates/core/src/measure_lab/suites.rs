//! Verification suites.
//!
//! Every suite is a deterministic function of its arguments. Random trials draw
//! from independent streams keyed by trial index and are collected in trial
//! order, so the worker count never changes a report.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::index::sample as sample_indices;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::entropy::{entropy_curve, FrameKind};
use super::isometry::isometry_check;
use super::report::{Relation, TestReport};
use super::stats::{binomial_z, chi_square, chi_square_quantile, contingency_chi_square};
use crate::domain::{IPerm, MeasureSpec, Perm, SeedSpec, TriPath, UnitSample};
use crate::enumerate::{iperms, representative, tri_paths};
use crate::error::{Error, Result};
use crate::graded::{
    factorial_tree, partitions, promotion, promotion_deletion, rsk, standard_tableaux, Syt, YoungLattice,
    young_transfer,
};
use crate::perm_limits::{delete_one, derivative_perm, matrix_decode, matrix_encode, shrink_iperm, ComparisonMatrix};
use crate::sampling::{stream, tri_path_from_rng, unit_prefix_from_rng};
use crate::transfer_tri::{
    delta_relation_check, estimate_first, reconstruct, separate, shift, transfer, translate_iperm, Separation,
};
use crate::weyl_codec::{
    encode, generalized_encode, iperm_from_path, iperm_of, path_from_iperm, OrderKernel, ShiftedKernel,
    StandardKernel,
};

type Sample = UnitSample<f64>;

/// Significance level of every chi-square check.
pub const CHI_SQUARE_LEVEL: f64 = 0.999;
/// Width of binomial bands, in standard deviations.
pub const BINOMIAL_SIGMAS: f64 = 3.0;
/// Band for the generalized-kernel census.
pub const KERNEL_SIGMAS: f64 = 4.0;

/// Independent sub-stream family for one part of a suite.
fn lane(seed: SeedSpec, lane: u64) -> SeedSpec {
    SeedSpec::new(seed.master_seed ^ lane.wrapping_mul(0x9E37_79B9_7F4A_7C15), seed.trial_index)
}

fn trial_rng(seed: SeedSpec, k: u64) -> ChaCha8Rng {
    stream(seed.trial(seed.trial_index.wrapping_add(k)))
}

/// Runs `f` once per trial on its own stream; results come back in trial order.
fn par_trials<R, F>(seed: SeedSpec, count: u64, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(&mut ChaCha8Rng) -> Result<R> + Sync,
{
    (0..count).into_par_iter().map(|k| f(&mut trial_rng(seed, k))).collect()
}

fn count_where<T: Sync>(items: &[T], bad: impl Fn(&T) -> bool + Sync) -> u64 {
    items.par_iter().filter(|t| bad(t)).count() as u64
}

fn need_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    Ok(())
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Oracle for the codec: earlier coordinates below, counted directly.
fn sequential_ranks_oracle(v: &[f64]) -> Vec<usize> {
    (0..v.len()).map(|k| 1 + (0..k).filter(|&i| v[i] < v[k]).count()).collect()
}

// ---------------------------------------------------------------- codec

/// Exhaustive codec checks for `n ≤ n_max`.
pub fn codec_suite(n_max: usize) -> Result<TestReport> {
    let mut r = TestReport::new("codec", None);
    for n in 1..=n_max {
        let cells = iperms(n);
        let total = cells.len() as u64;
        let bad = count_where(&cells, |k| {
            let x = representative(k);
            encode(&x).ranks() != sequential_ranks_oracle(x.values()).as_slice() || iperm_of(&x) != *k
        });
        r.zero(format!("n={n} encode matches the sequential-rank oracle"), bad, total);
        let paths = tri_paths(n);
        let bad = count_where(&paths, |t| path_from_iperm(&iperm_from_path(t)) != *t);
        r.zero(format!("n={n} path and i-permutation round trip"), bad, total);
        let distinct: HashSet<TriPath> = cells.par_iter().map(|k| encode(&representative(k))).collect();
        r.check(format!("n={n} distinct codes"), distinct.len() as f64, Relation::Equal, total as f64, total);
    }
    Ok(r)
}

// ---------------------------------------------------------------- conjugacy

/// Transfer against the shift: all order types up to `n_max` and random prefixes.
pub fn conjugacy_suite(n_max: usize, random_prefixes: u64, prefix_len: usize, seed: SeedSpec) -> Result<TestReport> {
    let mut r = TestReport::new("conjugacy", Some(seed.master_seed));
    for n in 2..=n_max {
        let cells = iperms(n);
        let bad = count_where(&cells, |k| {
            let x = representative(k);
            transfer(&encode(&x)).ok() != shift(&x).ok().map(|s| encode(&s))
        });
        r.zero(format!("n={n} exhaustive conjugacy"), bad, cells.len() as u64);
    }
    if random_prefixes > 0 {
        if prefix_len < 2 {
            return Err(Error::Domain("random prefixes need length at least 2".into()));
        }
        let outcomes = par_trials(seed, random_prefixes, |rng| {
            let x: Sample = unit_prefix_from_rng(prefix_len, rng)?;
            let t = encode(&x);
            Ok((transfer(&t)? == encode(&shift(&x)?), delta_relation_check(&t)))
        })?;
        let bad = outcomes.iter().filter(|o| !o.0).count() as u64;
        r.zero(format!("random prefixes of length {prefix_len}"), bad, random_prefixes);
        let bad = outcomes.iter().filter(|o| !o.1).count() as u64;
        r.zero("increment relation of marked counts", bad, random_prefixes);
    }
    Ok(r)
}

// ---------------------------------------------------------------- translation

/// `translate_iperm` against the order type of a shifted representative point.
pub fn translation_suite(n_max: usize) -> Result<TestReport> {
    let mut r = TestReport::new("translation", None);
    for n in 2..=n_max {
        let cells = iperms(n);
        let bad = count_where(&cells, |k| {
            let oracle = shift(&representative(k)).map(|s| iperm_of(&s));
            translate_iperm(k).ok() != oracle.ok()
        });
        r.zero(format!("n={n} translation matches the shifted representative"), bad, cells.len() as u64);
    }
    Ok(r)
}

// ---------------------------------------------------------------- fibers

/// Every path of length `n − 1` has exactly `n` transfer preimages.
pub fn fibers_suite(n_max: usize) -> Result<TestReport> {
    let mut r = TestReport::new("fibers", None);
    let mut census = BTreeMap::new();
    for n in 2..=n_max {
        let mut fibers: HashMap<TriPath, u64> = HashMap::new();
        for t in tri_paths(n) {
            *fibers.entry(transfer(&t)?).or_default() += 1;
        }
        let targets = factorial(n - 1);
        let deviations = fibers.values().filter(|&&c| c != n as u64).count() as u64
            + targets.saturating_sub(fibers.len() as u64);
        r.zero(format!("n={n} every fiber has size {n}"), deviations, targets);
        census.insert(n.to_string(), fibers.len());
    }
    r.note("targets_hit", json!(census));
    Ok(r)
}

// ---------------------------------------------------------------- decoder

/// Tolerances for [`decoder_suite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoderTolerance {
    pub first_tol: f64,
    pub first_rate: f64,
    pub recon_tol: f64,
    pub recon_rate: f64,
    pub k_max: usize,
}

impl Default for DecoderTolerance {
    fn default() -> Self {
        Self { first_tol: 0.02, first_rate: 0.99, recon_tol: 0.03, recon_rate: 0.95, k_max: 100 }
    }
}

impl DecoderTolerance {
    /// Same tolerance for both decoders.
    pub fn uniform(tol: f64) -> Self {
        Self { first_tol: tol, recon_tol: tol, ..Self::default() }
    }
}

pub fn decoder_suite(n: usize, trials: u64, seed: SeedSpec, tol: DecoderTolerance) -> Result<TestReport> {
    if n < 100 {
        return Err(Error::Domain(format!("decoder suite needs n >= 100, got {n}")));
    }
    need_trials(trials)?;
    let errors = par_trials(seed, trials, |rng| {
        let x: Sample = unit_prefix_from_rng(n, rng)?;
        let t = encode(&x);
        let first = (estimate_first::<f64>(&t) - x.values()[0]).abs();
        let recon = reconstruct::<f64>(&t, tol.k_max)?
            .iter()
            .zip(x.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        Ok((first, recon))
    })?;
    let share = |ok: usize| ok as f64 / trials as f64;
    let mut r = TestReport::new("decoder", Some(seed.master_seed));
    let first_ok = errors.iter().filter(|e| e.0 <= tol.first_tol).count();
    let recon_ok = errors.iter().filter(|e| e.1 <= tol.recon_tol).count();
    r.check(
        format!("share of |m_n/n - x_1| <= {}", tol.first_tol),
        share(first_ok),
        Relation::AtLeast,
        tol.first_rate,
        trials,
    );
    r.check(
        format!("share of max reconstruction error <= {} (k_max = {})", tol.recon_tol, tol.k_max),
        share(recon_ok),
        Relation::AtLeast,
        tol.recon_rate,
        trials,
    );
    let worst = |f: fn(&(f64, f64)) -> f64| errors.iter().map(f).fold(0.0, f64::max);
    r.note("n", json!(n));
    r.note("worst_first_error", json!(worst(|e| e.0)));
    r.note("worst_reconstruction_error", json!(worst(|e| e.1)));
    Ok(r)
}

// ---------------------------------------------------------------- distinguishability

fn separation_report(outcomes: &[Separation], level_cap: usize, seed: Option<u64>) -> TestReport {
    let mut r = TestReport::new("distinguishability", seed);
    let mut histogram: BTreeMap<String, u64> = BTreeMap::new();
    let mut unseparated = 0;
    for o in outcomes {
        match *o {
            Separation::Witness { level, .. } if level <= level_cap => {
                *histogram.entry(level.to_string()).or_default() += 1;
            }
            _ => {
                unseparated += 1;
                *histogram.entry("not_separated".into()).or_default() += 1;
            }
        }
    }
    r.zero(format!("pairs not separated by level {level_cap}"), unseparated, outcomes.len() as u64);
    r.note("separation_levels", json!(histogram));
    r
}

/// Independent pairs of prefixes of length `level_cap`, each run through [`separate`].
pub fn distinguishability_suite(pairs: u64, level_cap: usize, seed: SeedSpec) -> Result<TestReport> {
    if pairs == 0 || level_cap < 2 {
        return Err(Error::Domain("need pairs >= 1 and level_cap >= 2".into()));
    }
    let outcomes = par_trials(seed, pairs, |rng| {
        let x: Sample = unit_prefix_from_rng(level_cap, rng)?;
        let y: Sample = unit_prefix_from_rng(level_cap, rng)?;
        separate(&x, &y)
    })?;
    Ok(separation_report(&outcomes, level_cap, Some(seed.master_seed)))
}

/// The same verdict on given pairs.
pub fn distinguishability_fixture(pairs: &[(Sample, Sample)], level_cap: usize) -> Result<TestReport> {
    let outcomes = pairs.iter().map(|(x, y)| separate(x, y)).collect::<Result<Vec<_>>>()?;
    Ok(separation_report(&outcomes, level_cap, None))
}

// ---------------------------------------------------------------- pushforward

pub const PUSHFORWARD_PAIRS: usize = 10;

/// [`pushforward_suite_with`] using [`encode`].
pub fn pushforward_suite(n: usize, trials: u64, seed: SeedSpec) -> Result<TestReport> {
    pushforward_suite_with(n, trials, seed, &|x: &Sample| encode(x))
}

/// Level marginals and pairwise level independence of encoded uniform prefixes.
pub fn pushforward_suite_with(
    n: usize,
    trials: u64,
    seed: SeedSpec,
    encoder: &(dyn Fn(&Sample) -> TriPath + Sync),
) -> Result<TestReport> {
    if n < 2 {
        return Err(Error::Domain(format!("pushforward suite needs n >= 2, got {n}")));
    }
    need_trials(trials)?;
    let paths = par_trials(lane(seed, 1), trials, |rng| {
        let x: Sample = unit_prefix_from_rng(n, rng)?;
        Ok(encoder(&x))
    })?;
    let mut r = TestReport::new("pushforward", Some(seed.master_seed));
    for k in 2..=n {
        let mut counts = vec![0u64; k];
        for t in &paths {
            counts[t.ranks()[k - 1] - 1] += 1;
        }
        let stat = chi_square(&counts, &vec![1.0 / k as f64; k])?;
        r.check(
            format!("level {k} marginal chi-square"),
            stat,
            Relation::Below,
            chi_square_quantile(k - 1, CHI_SQUARE_LEVEL),
            trials,
        );
    }
    let all_pairs: Vec<(usize, usize)> = (2..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    let chosen: Vec<(usize, usize)> = if all_pairs.len() <= PUSHFORWARD_PAIRS {
        all_pairs
    } else {
        let mut rng = trial_rng(lane(seed, 2), 0);
        let mut idx = sample_indices(&mut rng, all_pairs.len(), PUSHFORWARD_PAIRS).into_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| all_pairs[i]).collect()
    };
    for (a, b) in chosen {
        let mut table = vec![vec![0u64; b]; a];
        for t in &paths {
            table[t.ranks()[a - 1] - 1][t.ranks()[b - 1] - 1] += 1;
        }
        match contingency_chi_square(&table) {
            Ok((stat, df)) => {
                r.check(
                    format!("levels {a} and {b} independence"),
                    stat,
                    Relation::Below,
                    chi_square_quantile(df, CHI_SQUARE_LEVEL),
                    trials,
                );
            }
            // an empty margin is itself evidence of a broken pushforward
            Err(_) => {
                r.check(format!("levels {a} and {b} independence"), f64::INFINITY, Relation::Below, 0.0, trials);
            }
        }
    }
    Ok(r)
}

// ---------------------------------------------------------------- comparison matrix

pub fn comparison_matrix_suite(
    round_trips: u64,
    max_len: usize,
    freq_samples: u64,
    freq_n: usize,
    seed: SeedSpec,
) -> Result<TestReport> {
    if max_len < 1 || freq_n < 2 {
        return Err(Error::Domain("need max_len >= 1 and freq_n >= 2".into()));
    }
    let mut r = TestReport::new("comparison-matrix", Some(seed.master_seed));
    if round_trips > 0 {
        let outcomes = par_trials(lane(seed, 1), round_trips, |rng| {
            let len = rng.gen_range(1..=max_len);
            let x: Sample = unit_prefix_from_rng(len, rng)?;
            let m = matrix_encode(&x);
            let text_ok = m.to_string().parse::<ComparisonMatrix>().as_ref() == Ok(&m);
            Ok((matrix_decode(&m)? == iperm_of(&x), text_ok))
        })?;
        r.zero("decode of encode equals the i-permutation", outcomes.iter().filter(|o| !o.0).count() as u64, round_trips);
        r.zero("text round trip", outcomes.iter().filter(|o| !o.1).count() as u64, round_trips);
    }
    if freq_samples > 0 {
        let entries = freq_n * (freq_n - 1) / 2;
        let rows = par_trials(lane(seed, 2), freq_samples, |rng| {
            let x: Sample = unit_prefix_from_rng(freq_n, rng)?;
            Ok(matrix_encode(&x).lower().to_vec())
        })?;
        let mut plus = vec![0u64; entries];
        for row in &rows {
            for (c, &e) in plus.iter_mut().zip(row) {
                *c += u64::from(e > 0);
            }
        }
        let worst = plus.iter().map(|&h| binomial_z(h, freq_samples, 0.5)).fold(0.0, f64::max);
        r.check(
            format!("worst entry frequency z-score at n={freq_n}"),
            worst,
            Relation::AtMost,
            BINOMIAL_SIGMAS,
            freq_samples,
        );
    }
    Ok(r)
}

// ---------------------------------------------------------------- permutation maps

fn fiber_sizes<K: std::hash::Hash + Eq>(images: impl Iterator<Item = K>) -> HashMap<K, u64> {
    let mut m = HashMap::new();
    for k in images {
        *m.entry(k).or_default() += 1;
    }
    m
}

fn is_bijection(images: &[usize]) -> bool {
    let n = images.len();
    let mut seen = vec![false; n + 1];
    images.iter().all(|&v| (1..=n).contains(&v) && !std::mem::replace(&mut seen[v], true))
}

/// Worked examples plus exhaustive fiber checks of the projections `S_n → S_{n−1}`.
pub fn perm_maps_suite(n_max: usize) -> Result<TestReport> {
    let mut r = TestReport::new("perm-maps", None);
    let g = Perm::new(vec![2, 4, 1, 3])?;
    let k = IPerm::new(vec![2, 4, 1, 3])?;
    r.zero("derivative of (2,4,1,3) is (2,3,1)", u64::from(derivative_perm(&g)?.images() != [2, 3, 1]), 1);
    r.zero("smaller i-permutation of (2,4,1,3) is (2,1,3)", u64::from(shrink_iperm(&k)?.ranks() != [2, 1, 3]), 1);
    let mut census = BTreeMap::new();
    for n in 2..=n_max {
        let perms: Vec<Perm> = iperms(n).into_iter().map(|k| Perm::from_valid(k.ranks().to_vec())).collect();
        let images = perms.iter().map(delete_one).collect::<Result<Vec<_>>>()?;
        let total = perms.len() as u64;
        r.zero(
            format!("n={n} delete-one outputs are bijections"),
            images.iter().filter(|p| !is_bijection(p.images())).count() as u64,
            total,
        );
        let fibers = fiber_sizes(images.iter().map(|p| p.images().to_vec()));
        r.zero(
            format!("n={n} delete-one misses no element of S_{}", n - 1),
            factorial(n - 1) - fibers.len() as u64,
            factorial(n - 1),
        );
        r.zero(
            format!("n={n} delete-one fibers have size {n}"),
            fibers.values().filter(|&&c| c != n as u64).count() as u64,
            factorial(n - 1),
        );
        let deriv = fiber_sizes(perms.iter().map(|p| derivative_perm(p).map(|d| d.images().to_vec()).unwrap_or_default()));
        let shrink = fiber_sizes(
            perms.iter().map(|p| shrink_iperm(&IPerm::from_valid(p.images().to_vec())).map(|s| s.ranks().to_vec()).unwrap_or_default()),
        );
        let uniform = |m: &HashMap<Vec<usize>, u64>| m.len() as u64 == factorial(n - 1) && m.values().all(|&c| c == n as u64);
        census.insert(
            n.to_string(),
            json!({ "derivative_uniform": uniform(&deriv), "shrink_uniform": uniform(&shrink) }),
        );
        if n <= 6 {
            let agree = perms
                .iter()
                .filter(|p| {
                    let d = derivative_perm(p).ok().map(|d| d.images().to_vec());
                    let s = shrink_iperm(&IPerm::from_valid(p.images().to_vec())).ok().map(|s| s.ranks().to_vec());
                    d == s
                })
                .count();
            census.insert(format!("{n}_derivative_equals_shrink"), json!(agree));
        }
    }
    r.note("census", json!(census));
    Ok(r)
}

// ---------------------------------------------------------------- Young graph

fn all_syt(n: usize) -> Vec<Syt> {
    partitions(n).iter().flat_map(standard_tableaux).collect()
}

/// Hasse-rule transfer against promotion with the largest entry dropped, and
/// bijectivity of promotion.
pub fn young_transfer_suite(max_cells: usize, promotion_cells: usize) -> Result<TestReport> {
    let mut r = TestReport::new("young-transfer", None);
    for n in 2..=max_cells {
        let lattice = YoungLattice::new(n)?;
        let tableaux = all_syt(n);
        let bad = count_where(&tableaux, |t| {
            let via_rule = t
                .to_path(&lattice.graph)
                .and_then(|p| young_transfer(&lattice, &p))
                .and_then(|q| Syt::from_path(&lattice.graph, &q));
            via_rule.ok() != promotion_deletion(t).ok()
        });
        r.zero(format!("n={n} Hasse rule equals promotion deletion"), bad, tableaux.len() as u64);
    }
    for n in 1..=promotion_cells {
        let tableaux = all_syt(n);
        let images: HashSet<Syt> = tableaux.par_iter().map(promotion).collect();
        let reference: HashSet<Syt> = tableaux.iter().cloned().collect();
        let mismatches = reference.symmetric_difference(&images).count() as u64;
        r.zero(format!("n={n} promotion permutes the tableaux"), mismatches, tableaux.len() as u64);
    }
    Ok(r)
}

/// Recording tableaux intertwine the shift with the Young transfer.
pub fn young_conjugacy_suite(n_max: usize) -> Result<TestReport> {
    let mut r = TestReport::new("young-conjugacy", None);
    for n in 2..=n_max {
        let lattice = YoungLattice::new(n)?;
        let cells = iperms(n);
        let bad = count_where(&cells, |k| {
            let x = representative(k);
            let lhs = shift(&x).and_then(|s| rsk(&s).1.to_path(&lattice.graph));
            let rhs = rsk(&x).1.to_path(&lattice.graph).and_then(|p| young_transfer(&lattice, &p));
            lhs.ok() != rhs.ok()
        });
        r.zero(format!("n={n} recording tableau conjugacy"), bad, cells.len() as u64);
    }
    Ok(r)
}

/// Shape frequencies of recording tableaux against `dim(λ)² / n!`.
pub fn plancherel_suite(sizes: &[usize], samples: u64, seed: SeedSpec) -> Result<TestReport> {
    need_trials(samples)?;
    let mut r = TestReport::new("plancherel", Some(seed.master_seed));
    for (i, &n) in sizes.iter().enumerate() {
        let shapes = partitions(n);
        let fact = factorial(n) as f64;
        let found = par_trials(lane(seed, i as u64 + 1), samples, |rng| {
            let x: Sample = unit_prefix_from_rng(n, rng)?;
            Ok(rsk(&x).1.shape())
        })?;
        let counts = fiber_sizes(found.into_iter());
        let worst = shapes
            .iter()
            .map(|s| {
                let d = s.dimension().to_f64().expect("small");
                binomial_z(counts.get(s).copied().unwrap_or(0), samples, d * d / fact)
            })
            .fold(0.0, f64::max);
        r.check(format!("n={n} worst shape frequency z-score"), worst, Relation::AtMost, BINOMIAL_SIGMAS, samples);
    }
    Ok(r)
}

// ---------------------------------------------------------------- samplers

/// Uniform prefixes by DKW, path measures by chi-square.
pub fn samplers_suite(samples: u64, seed: SeedSpec) -> Result<TestReport> {
    need_trials(samples)?;
    let mut r = TestReport::new("samplers", Some(seed.master_seed));
    let mut firsts = par_trials(lane(seed, 1), samples, |rng| {
        let x: Sample = unit_prefix_from_rng(3, rng)?;
        Ok(x.values()[0])
    })?;
    firsts.sort_by(f64::total_cmp);
    let n = samples as f64;
    let dkw = firsts
        .iter()
        .enumerate()
        .map(|(i, &u)| ((i + 1) as f64 / n - u).abs().max((u - i as f64 / n).abs()))
        .fold(0.0, f64::max);
    r.check("uniform coordinate Kolmogorov distance", dkw, Relation::AtMost, 0.02, samples);

    let haar_n = 10;
    let paths = par_trials(lane(seed, 2), samples, |rng| tri_path_from_rng(haar_n, MeasureSpec::Haar, rng))?;
    for k in 2..=haar_n {
        let mut counts = vec![0u64; k];
        for t in &paths {
            counts[t.ranks()[k - 1] - 1] += 1;
        }
        let stat = chi_square(&counts, &MeasureSpec::Haar.level_distribution(k)?)?;
        r.check(format!("Haar level {k}"), stat, Relation::Below, chi_square_quantile(k - 1, CHI_SQUARE_LEVEL), samples);
    }

    let ewens = MeasureSpec::EwensLike(2.0);
    let paths = par_trials(lane(seed, 3), samples, |rng| tri_path_from_rng(3, ewens, rng))?;
    let mut counts = vec![0u64; 3];
    for t in &paths {
        counts[t.ranks()[2] - 1] += 1;
    }
    let stat = chi_square(&counts, &[0.25, 0.25, 0.5])?;
    r.check("Ewens t=2 level 3", stat, Relation::Below, chi_square_quantile(2, CHI_SQUARE_LEVEL), samples);
    Ok(r)
}

// ---------------------------------------------------------------- entropy

/// Partition sizes against tree enumeration, and the growth of `ln(q_n)/n`.
pub fn entropy_suite(tree_n_max: usize, n_lo: usize, n_hi: usize) -> Result<TestReport> {
    let mut r = TestReport::new("entropy", None);
    let curve = entropy_curve(FrameKind::Factorial, n_hi.max(tree_n_max).max(2))?;
    for n in 1..=tree_n_max {
        let tree = factorial_tree(n)?;
        let g = tree.graph();
        let leaves = BigUint::from(g.level_size(n));
        r.zero(format!("n={n} q_n equals the leaf count"), u64::from(curve.points[n - 1].q_n != leaves), 1);
        if n >= 2 {
            let off = (0..g.level_size(n - 1)).filter(|&v| g.children(n - 1, v).len() != n).count() as u64;
            r.zero(format!("n={n} branching r_n = {n}"), off, g.level_size(n - 1) as u64);
        }
    }
    let young = entropy_curve(FrameKind::Young, tree_n_max.max(2))?;
    let bad = (1..=tree_n_max)
        .filter(|&n| young.points[n - 1].q_n != all_syt(n).len().into())
        .count() as u64;
    r.zero("young q_n equals the tableau count", bad, tree_n_max as u64);
    let window: Vec<_> = curve.points.iter().filter(|p| (n_lo..=n_hi).contains(&p.n)).collect();
    let excess: Vec<f64> = window.iter().map(|p| p.ln_qn_over_n - (p.n as f64).ln()).collect();
    let lo = excess.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = excess.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    r.check(format!("min of ln(q_n)/n - ln n over {n_lo}..{n_hi}"), lo, Relation::AtLeast, -1.1, window.len() as u64);
    r.check(format!("max of ln(q_n)/n - ln n over {n_lo}..{n_hi}"), hi, Relation::Below, 0.0, window.len() as u64);
    let drops = window.windows(2).filter(|w| w[1].ln_qn_over_n <= w[0].ln_qn_over_n).count() as u64;
    r.zero("ln(q_n)/n strictly increasing", drops, window.len() as u64);
    r.note("curve", json!(curve.points.iter().map(|p| json!([p.n, p.q_n.to_string(), p.ln_qn_over_n])).collect::<Vec<_>>()));
    Ok(r)
}

// ---------------------------------------------------------------- isometry

/// Exact Gram checks for `2..=n_max`, plus a Monte Carlo census at `mc_n`.
pub fn isometry_suite(n_max: usize, mc_n: usize, mc_points: u64, seed: SeedSpec) -> Result<TestReport> {
    let mut r = TestReport::new("isometry", Some(seed.master_seed));
    for n in 2..=n_max {
        let points = if n == mc_n { mc_points } else { 0 };
        let part = isometry_check(n, points, seed)?;
        r.checks.extend(part.checks);
        r.data.extend(part.data);
    }
    Ok(r)
}

// ---------------------------------------------------------------- generalized kernel

/// Cell census and induced tree of the shifted-comparison kernel, and agreement
/// of the standard kernel with [`iperm_of`].
pub fn generalized_kernel_suite(samples: u64, census_level: usize, tree_n_max: usize, seed: SeedSpec) -> Result<TestReport> {
    need_trials(samples)?;
    let depth = census_level.max(tree_n_max);
    let kernel = ShiftedKernel;
    let labels = par_trials(lane(seed, 1), samples, |rng| {
        let states: Vec<f64> = (0..depth).map(|_| kernel.sample_state(rng)).collect();
        Ok(generalized_encode(&states, &kernel)?.into_iter().map(|c| c.iperm().clone()).collect::<Vec<IPerm>>())
    })?;
    let mut r = TestReport::new("generalized-kernel", Some(seed.master_seed));

    let cells = factorial(census_level);
    let census = fiber_sizes(labels.iter().map(|l| &l[census_level - 1]));
    r.check(format!("level {census_level} cells hit"), census.len() as f64, Relation::Equal, cells as f64, samples);
    let p = 1.0 / cells as f64;
    let worst = iperms(census_level)
        .iter()
        .map(|k| binomial_z(census.get(k).copied().unwrap_or(0), samples, p))
        .fold(0.0, f64::max);
    r.check(format!("level {census_level} worst cell z-score"), worst, Relation::AtMost, KERNEL_SIGMAS, samples);

    let bad_parent = labels
        .iter()
        .filter(|l| (1..l.len()).any(|n| l[n].prefix(n).ok().as_ref() != Some(&l[n - 1])))
        .count() as u64;
    r.zero("parent cell is the prefix i-permutation", bad_parent, samples);
    for n in 2..=tree_n_max {
        let mut children: HashMap<&IPerm, HashSet<&IPerm>> = HashMap::new();
        for l in &labels {
            children.entry(&l[n - 2]).or_default().insert(&l[n - 1]);
        }
        let off = children.values().filter(|c| c.len() != n).count() as u64 + factorial(n - 1) - children.len() as u64;
        r.zero(format!("n={n} induced branching r_n = {n}"), off, factorial(n - 1));
    }

    let standard = par_trials(lane(seed, 2), samples.min(10_000), |rng| {
        let states: Vec<f64> = (0..depth).map(|_| StandardKernel.sample_state(rng)).collect();
        let last = generalized_encode(&states, &StandardKernel)?.pop().expect("depth >= 1");
        Ok(last.iperm().clone() == iperm_of(&UnitSample::new(states)?))
    })?;
    r.zero("standard kernel agrees with the i-permutation", standard.iter().filter(|&&ok| !ok).count() as u64, standard.len() as u64);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed() -> SeedSpec {
        SeedSpec::new(2024, 0)
    }

    #[test]
    fn small_exhaustive_suites_pass() {
        for r in [
            codec_suite(5).unwrap(),
            conjugacy_suite(5, 50, 30, seed()).unwrap(),
            translation_suite(5).unwrap(),
            fibers_suite(5).unwrap(),
            perm_maps_suite(5).unwrap(),
            young_transfer_suite(5, 5).unwrap(),
            young_conjugacy_suite(5).unwrap(),
            entropy_suite(5, 5, 20).unwrap(),
            isometry_suite(3, 3, 6000, seed()).unwrap(),
        ] {
            assert!(r.passed(), "{}", r.to_jsonl());
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(pushforward_suite(10, 0, seed()), Err(Error::Domain(_))));
        assert!(matches!(decoder_suite(100, 0, seed(), DecoderTolerance::default()), Err(Error::Domain(_))));
        assert!(matches!(decoder_suite(99, 1, seed(), DecoderTolerance::default()), Err(Error::Domain(_))));
    }

    #[test]
    fn loose_decoder_smoke() {
        assert!(decoder_suite(100, 10, seed(), DecoderTolerance::uniform(0.2)).unwrap().passed());
    }

    #[test]
    fn biased_encoder_fails() {
        let biased = |x: &Sample| {
            let mut t = encode(x).ranks().to_vec();
            t[1] = 1;
            TriPath::new(t).unwrap()
        };
        assert!(pushforward_suite(4, 2000, seed()).unwrap().passed());
        assert!(!pushforward_suite_with(4, 2000, seed(), &biased).unwrap().passed());
    }

    #[test]
    fn separation_fixtures() {
        let x = UnitSample::new(vec![0.5, 0.2]).unwrap();
        let y = UnitSample::new(vec![0.2, 0.5]).unwrap();
        let r = distinguishability_fixture(&[(x.clone(), y)], 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.data["separation_levels"]["2"], 1);
        let r = distinguishability_fixture(&[(x.clone(), x)], 2).unwrap();
        assert!(!r.passed());
        assert_eq!(r.data["separation_levels"]["not_separated"], 1);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = pushforward_suite(5, 3000, seed()).unwrap();
        let b = pushforward_suite(5, 3000, seed()).unwrap();
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c = pool.install(|| pushforward_suite(5, 3000, seed()).unwrap());
        assert_eq!(a, c);
    }
}
