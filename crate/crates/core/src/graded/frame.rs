use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::graph::{GPath, GradedGraph, VertexLabel};
use crate::domain::{IPerm, TriPath};
use crate::error::{Error, Result};
use crate::transfer_tri::translate_iperm;
use crate::weyl_codec::{iperm_from_path, path_from_iperm};

/// Largest level count accepted by [`factorial_tree`].
pub const FACTORIAL_TREE_MAX: usize = 10;

/// Tree of partition elements with a translation `ω` to the previous level
/// and conditional measures on children.
#[derive(Debug, Clone)]
pub struct Frame<L> {
    graph: GradedGraph<L>,
    /// `translation[k - 2][v]` = ω of vertex `v` at level `k ≥ 2`, an index at level `k - 1`.
    translation: Vec<Vec<usize>>,
    /// `cond[k - 1][v]` = probabilities of the children of `(k, v)`, in child order.
    cond: Vec<Vec<Vec<BigRational>>>,
}

impl<L: VertexLabel> Frame<L> {
    /// No checks; see [`frame_validate`].
    pub fn new(
        graph: GradedGraph<L>,
        translation: Vec<Vec<usize>>,
        cond: Vec<Vec<Vec<BigRational>>>,
    ) -> Self {
        Self { graph, translation, cond }
    }

    /// Uniform conditional measures on the children of each vertex.
    pub fn with_uniform_measures(graph: GradedGraph<L>, translation: Vec<Vec<usize>>) -> Self {
        let cond = (1..=graph.num_levels())
            .map(|k| {
                (0..graph.level_size(k))
                    .map(|v| {
                        let d = graph.children(k, v).len();
                        vec![BigRational::new(BigInt::one(), BigInt::from(d.max(1))); d]
                    })
                    .collect()
            })
            .collect();
        Self { graph, translation, cond }
    }

    pub fn graph(&self) -> &GradedGraph<L> {
        &self.graph
    }

    /// ω of vertex `v` at `level ≥ 2`.
    pub fn omega(&self, level: usize, v: usize) -> Option<usize> {
        self.translation.get(level.checked_sub(2)?)?.get(v).copied()
    }

    pub fn cond_measure(&self, level: usize, v: usize) -> Option<&[BigRational]> {
        self.cond.get(level.checked_sub(1)?)?.get(v).map(Vec::as_slice)
    }
}

/// The tree of Weyl simplices: level `k` holds the `k!` i-permutations of
/// length `k` in lexicographic order, the parent of `b` is the i-permutation
/// of its first `k - 1` entries, and ω is [`translate_iperm`].
pub fn factorial_tree(n: usize) -> Result<Frame<IPerm>> {
    if n == 0 {
        return Err(Error::Domain("tree needs at least one level".into()));
    }
    if n > FACTORIAL_TREE_MAX {
        return Err(Error::Resource(format!(
            "factorial tree with {n} levels exceeds the cap of {FACTORIAL_TREE_MAX}"
        )));
    }
    let mut b = GradedGraph::builder();
    let mut levels: Vec<Vec<IPerm>> = Vec::with_capacity(n);
    for k in 1..=n {
        let level: Vec<IPerm> = (1..=k).permutations(k).map(IPerm::from_valid).collect();
        levels.push(level.clone());
        b = b.level(level)?;
    }
    for k in 2..=n {
        for child in &levels[k - 1] {
            b.edge_by_label(k - 1, &child.prefix(k - 1)?, child, 1)?;
        }
    }
    let graph = b.build()?;
    let translation = (2..=n)
        .map(|k| {
            levels[k - 1]
                .iter()
                .map(|b| {
                    let w = translate_iperm(b).expect("length ≥ 2");
                    graph.vertex(k - 1, &w).expect("translation stays in the tree")
                })
                .collect()
        })
        .collect();
    Ok(Frame::with_uniform_measures(graph, translation))
}

/// Tree path of the i-permutations of the prefixes of `t`.
pub fn tree_path_of(frame: &Frame<IPerm>, t: &TriPath) -> Result<GPath> {
    let leaf = iperm_from_path(t);
    let labels = (1..=t.len()).map(|k| leaf.prefix(k)).collect::<Result<Vec<_>>>()?;
    GPath::from_labels(frame.graph(), &labels)
}

/// Inverse of [`tree_path_of`]: the sequential ranks of the deepest vertex.
pub fn tri_path_of(frame: &Frame<IPerm>, p: &GPath) -> TriPath {
    let leaf = frame.graph().label(p.len(), *p.vertices().last().expect("nonempty"));
    path_from_iperm(leaf)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FrameViolation {
    /// A vertex at level ≥ 2 without exactly one simple parent edge, or more
    /// than one root.
    NotATree { level: usize, vertex: String },
    MissingTranslation { level: usize, vertex: String },
    /// `(parent, child)` is an edge but `(ω(parent), ω(child))` is not.
    BrokenTranslation { level: usize, parent: String, child: String },
    BadMeasure { level: usize, vertex: String },
}

impl fmt::Display for FrameViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotATree { level, vertex } => write!(f, "level {level}: {vertex} breaks the tree structure"),
            Self::MissingTranslation { level, vertex } => {
                write!(f, "level {level}: no translation for {vertex}")
            }
            Self::BrokenTranslation { level, parent, child } => write!(
                f,
                "levels {level}-{}: translation of edge {parent} -> {child} is not an edge",
                level + 1
            ),
            Self::BadMeasure { level, vertex } => {
                write!(f, "level {level}: conditional measure of {vertex} is not a probability vector")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FrameReport {
    pub violations: Vec<FrameViolation>,
}

impl FrameReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn frame_validate<L: VertexLabel>(frame: &Frame<L>) -> FrameReport {
    let g = frame.graph();
    let key = |k: usize, v: usize| g.label(k, v).key();
    let mut violations = Vec::new();
    if g.level_size(1) != 1 {
        for v in 0..g.level_size(1) {
            violations.push(FrameViolation::NotATree { level: 1, vertex: key(1, v) });
        }
    }
    for k in 2..=g.num_levels() {
        for v in 0..g.level_size(k) {
            let parents = g.parents(k, v);
            if parents.len() != 1 || parents[0].1 != 1 {
                violations.push(FrameViolation::NotATree { level: k, vertex: key(k, v) });
            }
            match frame.omega(k, v) {
                Some(w) if w < g.level_size(k - 1) => {}
                _ => violations.push(FrameViolation::MissingTranslation { level: k, vertex: key(k, v) }),
            }
        }
    }
    for k in 2..g.num_levels() {
        for p in 0..g.level_size(k) {
            for &(c, _) in g.children(k, p) {
                let (Some(wp), Some(wc)) = (frame.omega(k, p), frame.omega(k + 1, c)) else {
                    continue;
                };
                if wp >= g.level_size(k - 1) || wc >= g.level_size(k) {
                    continue;
                }
                if g.multiplicity(k - 1, wp, wc) == 0 {
                    violations.push(FrameViolation::BrokenTranslation {
                        level: k,
                        parent: key(k, p),
                        child: key(k + 1, c),
                    });
                }
            }
        }
    }
    for k in 1..=g.num_levels() {
        for v in 0..g.level_size(k) {
            let ok = match frame.cond_measure(k, v) {
                Some(p) => {
                    let d = g.children(k, v).len();
                    p.len() == d
                        && p.iter().all(|x| *x >= BigRational::zero())
                        && (d == 0 || p.iter().sum::<BigRational>() == BigRational::one())
                }
                None => false,
            };
            if !ok {
                violations.push(FrameViolation::BadMeasure { level: k, vertex: key(k, v) });
            }
        }
    }
    FrameReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_limits::shrink_iperm;

    #[test]
    fn factorial_level_sizes() {
        assert_eq!(factorial_tree(3).unwrap().graph().level_sizes(), vec![1, 2, 6]);
        assert_eq!(factorial_tree(1).unwrap().graph().level_sizes(), vec![1]);
        let t = factorial_tree(8).unwrap();
        assert_eq!(t.graph().total_paths(8), 40320u32.into());
        assert!(matches!(factorial_tree(11), Err(Error::Resource(_))));
    }

    #[test]
    fn factorial_tree_is_a_valid_frame() {
        assert!(frame_validate(&factorial_tree(6).unwrap()).is_valid());
        assert!(frame_validate(&factorial_tree(1).unwrap()).is_valid());
    }

    #[test]
    fn broken_translation_is_reported() {
        let t = factorial_tree(4).unwrap();
        let mut translation = t.translation.clone();
        // ω(1,2,3,4) = (1,2,3); redirect it to (2,1,3), which is not below ω(1,2,3) = (1,2)
        let g = t.graph().clone();
        let v = g.vertex(4, &IPerm::identity(4)).unwrap();
        let bad = g.vertex(3, &IPerm::new(vec![2, 1, 3]).unwrap()).unwrap();
        translation[2][v] = bad;
        let report = frame_validate(&Frame::with_uniform_measures(g, translation));
        assert_eq!(
            report.violations,
            vec![FrameViolation::BrokenTranslation {
                level: 3,
                parent: "1.2.3".into(),
                child: "1.2.3.4".into()
            }]
        );
    }

    /// Using "remove the value n" as the parent map does not give a frame
    /// for the translation of rank vectors.
    #[test]
    fn shrink_parent_is_not_compatible_with_translation() {
        let n = 4;
        let mut b = GradedGraph::builder();
        let mut levels = Vec::new();
        for k in 1..=n {
            let level: Vec<IPerm> = (1..=k).permutations(k).map(IPerm::from_valid).collect();
            levels.push(level.clone());
            b = b.level(level).unwrap();
        }
        for k in 2..=n {
            for child in &levels[k - 1] {
                b.edge_by_label(k - 1, &shrink_iperm(child).unwrap(), child, 1).unwrap();
            }
        }
        let g = b.build().unwrap();
        let translation = (2..=n)
            .map(|k| {
                levels[k - 1]
                    .iter()
                    .map(|x| g.vertex(k - 1, &translate_iperm(x).unwrap()).unwrap())
                    .collect()
            })
            .collect();
        let report = frame_validate(&Frame::with_uniform_measures(g, translation));
        assert!(report.violations.contains(&FrameViolation::BrokenTranslation {
            level: 3,
            parent: "1.3.2".into(),
            child: "4.1.3.2".into()
        }));
    }

    #[test]
    fn bad_measure_is_reported() {
        let t = factorial_tree(2).unwrap();
        let cond = vec![
            vec![vec![BigRational::new(1.into(), 3.into()); 2]],
            vec![vec![], vec![]],
        ];
        let f = Frame::new(t.graph().clone(), t.translation.clone(), cond);
        let r = frame_validate(&f);
        assert_eq!(r.violations, vec![FrameViolation::BadMeasure { level: 1, vertex: "1".into() }]);
    }

    #[test]
    fn tree_path_round_trip() {
        let f = factorial_tree(5).unwrap();
        let t = TriPath::new(vec![1, 2, 1, 3, 5]).unwrap();
        let p = tree_path_of(&f, &t).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(tri_path_of(&f, &p), t);
    }
}
