//! Transfers on path spaces of graded graphs.
//!
//! A transfer moves every edge of a path one level down. The image path is
//! built bottom-up: the image vertex at level `k` is chosen from the input
//! edge between levels `k` and `k + 1` and the image vertex already placed
//! at level `k - 1` (a virtual bottom vertex sits below level 1). Rules
//! coming from a frame translation ignore that context; the Hasse rule
//! completes the square spanned by it.

use std::collections::HashMap;

use super::frame::Frame;
use super::graph::{GPath, GradedGraph, VertexLabel};
use crate::error::{Error, Result};

pub trait TransferRule {
    /// Image vertex at `level`, given the image vertex at `level - 1`
    /// (`None` at level 1) and the input edge `lower → upper` between
    /// `level` and `level + 1`.
    fn step(&self, below: Option<usize>, level: usize, lower: usize, upper: usize) -> Result<usize>;

    /// True when `step` never looks at `below`, so that edge `k` of the image
    /// depends only on the input between levels `k` and `k + 2`.
    fn ignores_context(&self) -> bool;
}

/// Rule induced by the translation ω of a frame: the image of the edge into
/// `upper` is the edge into `ω(upper)`.
pub struct TranslationRule {
    omega: Vec<Vec<usize>>,
}

impl TranslationRule {
    pub fn from_frame<L: VertexLabel>(frame: &Frame<L>) -> Result<Self> {
        let g = frame.graph();
        let omega = (2..=g.num_levels())
            .map(|k| {
                (0..g.level_size(k))
                    .map(|v| {
                        frame.omega(k, v).ok_or_else(|| {
                            Error::Structure(format!("vertex {} at level {k} has no translation", g.label(k, v).key()))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { omega })
    }
}

impl TransferRule for TranslationRule {
    fn step(&self, _below: Option<usize>, level: usize, _lower: usize, upper: usize) -> Result<usize> {
        self.omega
            .get(level - 1)
            .and_then(|l| l.get(upper).copied())
            .ok_or_else(|| Error::RuleDomain(format!("no translation at level {}", level + 1)))
    }

    fn ignores_context(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Interval {
    One(usize),
    Two(usize, usize),
}

/// Distinguished rule of graphs whose 2-intervals contain one or two
/// intermediate vertices. In the interval from the image vertex below to
/// the top of the input edge, the input edge goes to the parallel edge
/// through the other intermediate vertex when there are two, and stays put
/// when there is one.
pub struct HasseRule {
    /// `intervals[k]`: (bottom at level k, top at level k + 2) → intermediates;
    /// level 0 is the virtual bottom with index 0.
    intervals: Vec<HashMap<(usize, usize), Interval>>,
}

impl HasseRule {
    /// Number of 2-intervals with one and with two intermediate vertices.
    pub fn census(&self) -> (usize, usize) {
        let mut one = 0;
        let mut two = 0;
        for (_, i) in self.intervals.iter().flatten() {
            match i {
                Interval::One(_) => one += 1,
                Interval::Two(..) => two += 1,
            }
        }
        (one, two)
    }
}

pub fn hasse_transfer_rule<L: VertexLabel>(graph: &GradedGraph<L>) -> Result<HasseRule> {
    let levels = graph.num_levels();
    let mut intervals = Vec::with_capacity(levels.saturating_sub(1));
    for k in 0..levels.saturating_sub(1) {
        let mut raw: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let bottoms: Vec<(usize, Vec<usize>)> = if k == 0 {
            vec![(0, (0..graph.level_size(1)).collect())]
        } else {
            (0..graph.level_size(k))
                .map(|a| {
                    let mids = graph
                        .children(k, a)
                        .iter()
                        .map(|&(b, m)| if m == 1 { Ok(b) } else { Err(multi(graph, k, a)) })
                        .collect::<Result<Vec<_>>>()?;
                    Ok((a, mids))
                })
                .collect::<Result<Vec<_>>>()?
        };
        for (a, mids) in bottoms {
            for b in mids {
                for &(c, m) in graph.children(k + 1, b) {
                    if m != 1 {
                        return Err(multi(graph, k + 1, b));
                    }
                    raw.entry((a, c)).or_default().push(b);
                }
            }
        }
        let mut table = HashMap::with_capacity(raw.len());
        let mut keys: Vec<_> = raw.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let mids = &raw[&key];
            let interval = match mids.as_slice() {
                [b] => Interval::One(*b),
                [b1, b2] => Interval::Two(*b1, *b2),
                _ => {
                    let bottom = if k == 0 { "the virtual bottom".to_string() } else { graph.label(k, key.0).key() };
                    return Err(Error::Structure(format!(
                        "2-interval from {bottom} (level {k}) to {} (level {}) has {} intermediate vertices",
                        graph.label(k + 2, key.1).key(),
                        k + 2,
                        mids.len()
                    )));
                }
            };
            table.insert(key, interval);
        }
        intervals.push(table);
    }
    Ok(HasseRule { intervals })
}

fn multi<L: VertexLabel>(graph: &GradedGraph<L>, level: usize, v: usize) -> Error {
    Error::Structure(format!(
        "vertex {} at level {level} has parallel edges; the Hasse rule needs a simple graph",
        graph.label(level, v).key()
    ))
}

impl TransferRule for HasseRule {
    fn step(&self, below: Option<usize>, level: usize, lower: usize, upper: usize) -> Result<usize> {
        let bottom = below.unwrap_or(0);
        let interval = self
            .intervals
            .get(level - 1)
            .and_then(|t| t.get(&(bottom, upper)))
            .ok_or_else(|| Error::RuleDomain(format!("no 2-interval below level {}", level + 1)))?;
        match *interval {
            Interval::One(b) if b == lower => Ok(b),
            Interval::Two(b1, b2) if b1 == lower => Ok(b2),
            Interval::Two(b1, b2) if b2 == lower => Ok(b1),
            _ => Err(Error::RuleDomain(format!(
                "input vertex at level {level} is not inside the 2-interval"
            ))),
        }
    }

    fn ignores_context(&self) -> bool {
        false
    }
}

/// Applies `rule` to `p`, producing a path one level shorter.
pub fn transfer_apply<L: VertexLabel, R: TransferRule + ?Sized>(
    graph: &GradedGraph<L>,
    rule: &R,
    p: &GPath,
) -> Result<GPath> {
    if p.len() < 2 {
        return Err(Error::Length("transfer needs a path through at least two levels".into()));
    }
    let v = p.vertices();
    let mut out: Vec<usize> = Vec::with_capacity(p.len() - 1);
    for k in 1..p.len() {
        let below = out.last().copied();
        let w = rule.step(below, k, v[k - 1], v[k])?;
        if w >= graph.level_size(k) {
            return Err(Error::RuleDomain(format!("image vertex {w} out of range at level {k}")));
        }
        if let Some(b) = below {
            if graph.multiplicity(k - 1, b, w) == 0 {
                return Err(Error::RuleDomain(format!(
                    "image vertices at levels {} and {k} are not adjacent",
                    k - 1
                )));
            }
        }
        out.push(w);
    }
    let slots = vec![0; out.len() - 1];
    Ok(GPath::from_parts(out, slots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::graph::{chain_graph, w_graph};

    #[test]
    fn chain_rule_shortens() {
        let g = chain_graph(5).unwrap();
        let rule = hasse_transfer_rule(&g).unwrap();
        let p = GPath::new(&g, vec![0; 5]).unwrap();
        let q = transfer_apply(&g, &rule, &p).unwrap();
        assert_eq!(q, GPath::new(&g, vec![0; 4]).unwrap());
        // every 2-interval of a chain has one intermediate vertex
        assert_eq!(rule.census(), (4, 0));
    }

    #[test]
    fn w_graph_intervals() {
        // level-1 → level-3 intervals have the two intermediates {1, 2}
        let rule = hasse_transfer_rule(&w_graph(3).unwrap()).unwrap();
        assert_eq!(rule.census(), (2, 3));
        // from level 2 upward the complete bipartite graph has 3 intermediates
        assert!(matches!(hasse_transfer_rule(&w_graph(4).unwrap()), Err(Error::Structure(_))));
    }

    #[test]
    fn w_graph_transfer_is_a_path() {
        let g = w_graph(3).unwrap();
        let rule = hasse_transfer_rule(&g).unwrap();
        for p in g.paths(3) {
            let q = transfer_apply(&g, &rule, &p).unwrap();
            assert_eq!(q.len(), 2);
            // the middle vertex is swapped inside {1, 2}
            assert_eq!(q.vertices()[1], 1 - p.vertices()[1]);
        }
    }

    #[test]
    fn too_short() {
        let g = chain_graph(2).unwrap();
        let rule = hasse_transfer_rule(&g).unwrap();
        let p = GPath::new(&g, vec![0]).unwrap();
        assert!(matches!(transfer_apply(&g, &rule, &p), Err(Error::Length(_))));
    }

    #[test]
    fn multigraph_rejected() {
        let mut b = GradedGraph::builder().level(vec![1usize]).unwrap().level(vec![1]).unwrap().level(vec![1]).unwrap();
        b.edge(1, 0, 0, 2).unwrap();
        b.edge(2, 0, 0, 1).unwrap();
        assert!(matches!(hasse_transfer_rule(&b.build().unwrap()), Err(Error::Structure(_))));
    }
}
