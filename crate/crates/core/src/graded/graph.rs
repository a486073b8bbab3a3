use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::domain::IPerm;
use crate::error::{Error, Result};

/// Vertex label of a graded graph. `key` is a compact, comma-free rendering
/// used in exports and path lists.
pub trait VertexLabel: Clone + Eq + Hash + Ord + Debug + Send + Sync {
    fn key(&self) -> String;
}

impl VertexLabel for usize {
    fn key(&self) -> String {
        self.to_string()
    }
}

impl VertexLabel for IPerm {
    fn key(&self) -> String {
        join_dots(self.ranks())
    }
}

pub(crate) fn join_dots(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
}

#[derive(Debug, Clone)]
struct Level<L> {
    labels: Vec<L>,
    index: HashMap<L, usize>,
    /// Edges to the next level: (target, multiplicity).
    up: Vec<Vec<(usize, u32)>>,
    /// Edges from the previous level.
    down: Vec<Vec<(usize, u32)>>,
}

/// Locally finite ℕ-graded multigraph with levels `1..=num_levels()`.
/// Vertices are addressed by `(level, index)` with indices into the
/// level's canonically ordered labels.
#[derive(Debug, Clone)]
pub struct GradedGraph<L> {
    levels: Vec<Level<L>>,
}

pub struct GradedGraphBuilder<L> {
    levels: Vec<Level<L>>,
}

impl<L: VertexLabel> GradedGraphBuilder<L> {
    /// Appends the next level; labels must be distinct.
    pub fn level(mut self, labels: Vec<L>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Structure(format!("duplicate vertex {}", l.key())));
            }
        }
        let n = labels.len();
        self.levels.push(Level { labels, index, up: vec![Vec::new(); n], down: vec![Vec::new(); n] });
        Ok(self)
    }

    /// Adds `mult` parallel edges from vertex `from` at `level` to vertex
    /// `to` at `level + 1`.
    pub fn edge(&mut self, level: usize, from: usize, to: usize, mult: u32) -> Result<()> {
        if level == 0 || level >= self.levels.len() {
            return Err(Error::Structure(format!("no level pair ({level}, {})", level + 1)));
        }
        if from >= self.levels[level - 1].labels.len() || to >= self.levels[level].labels.len() {
            return Err(Error::Structure(format!("edge endpoint out of range at level {level}")));
        }
        if mult == 0 {
            return Ok(());
        }
        let up = &mut self.levels[level - 1].up[from];
        match up.iter_mut().find(|(t, _)| *t == to) {
            Some((_, m)) => *m += mult,
            None => up.push((to, mult)),
        }
        let down = &mut self.levels[level].down[to];
        match down.iter_mut().find(|(f, _)| *f == from) {
            Some((_, m)) => *m += mult,
            None => down.push((from, mult)),
        }
        Ok(())
    }

    pub fn edge_by_label(&mut self, level: usize, from: &L, to: &L, mult: u32) -> Result<()> {
        let f = self.lookup(level, from)?;
        let t = self.lookup(level + 1, to)?;
        self.edge(level, f, t, mult)
    }

    fn lookup(&self, level: usize, label: &L) -> Result<usize> {
        self.levels
            .get(level.wrapping_sub(1))
            .and_then(|l| l.index.get(label).copied())
            .ok_or_else(|| Error::Structure(format!("no vertex {} at level {level}", label.key())))
    }

    pub fn build(mut self) -> Result<GradedGraph<L>> {
        if self.levels.is_empty() {
            return Err(Error::Structure("graph without levels".into()));
        }
        for (k, level) in self.levels.iter_mut().enumerate().skip(1) {
            if let Some(v) = level.down.iter().position(Vec::is_empty) {
                return Err(Error::Structure(format!(
                    "vertex {} at level {} has no incoming edge",
                    level.labels[v].key(),
                    k + 1
                )));
            }
        }
        for level in &mut self.levels {
            for e in level.up.iter_mut().chain(level.down.iter_mut()) {
                e.sort_unstable();
            }
        }
        Ok(GradedGraph { levels: self.levels })
    }
}

impl<L: VertexLabel> GradedGraph<L> {
    pub fn builder() -> GradedGraphBuilder<L> {
        GradedGraphBuilder { levels: Vec::new() }
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    fn lvl(&self, level: usize) -> &Level<L> {
        assert!(level >= 1 && level <= self.levels.len(), "level {level} out of range");
        &self.levels[level - 1]
    }

    pub fn level_size(&self, level: usize) -> usize {
        self.lvl(level).labels.len()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.labels.len()).collect()
    }

    pub fn labels(&self, level: usize) -> &[L] {
        &self.lvl(level).labels
    }

    pub fn label(&self, level: usize, v: usize) -> &L {
        &self.lvl(level).labels[v]
    }

    pub fn vertex(&self, level: usize, label: &L) -> Option<usize> {
        self.levels.get(level.wrapping_sub(1))?.index.get(label).copied()
    }

    /// Edges from `(level, v)` to `level + 1`, sorted by target.
    pub fn children(&self, level: usize, v: usize) -> &[(usize, u32)] {
        &self.lvl(level).up[v]
    }

    /// Edges into `(level, v)` from `level - 1`, sorted by source.
    pub fn parents(&self, level: usize, v: usize) -> &[(usize, u32)] {
        &self.lvl(level).down[v]
    }

    pub fn multiplicity(&self, level: usize, from: usize, to: usize) -> u32 {
        if level == 0 || level >= self.levels.len() {
            return 0;
        }
        self.children(level, from)
            .binary_search_by_key(&to, |&(t, _)| t)
            .map(|i| self.children(level, from)[i].1)
            .unwrap_or(0)
    }

    /// Total number of edges, parallel edges counted separately.
    pub fn edge_count(&self) -> u64 {
        self.levels
            .iter()
            .flat_map(|l| l.up.iter().flatten())
            .map(|&(_, m)| u64::from(m))
            .sum()
    }

    /// Number of paths from level 1 to each vertex of `level`.
    pub fn path_counts(&self, level: usize) -> Vec<BigUint> {
        let mut counts = vec![BigUint::one(); self.level_size(1)];
        for k in 1..level {
            let mut next = vec![BigUint::zero(); self.level_size(k + 1)];
            for (v, c) in counts.iter().enumerate() {
                for &(t, m) in self.children(k, v) {
                    next[t] += c * m;
                }
            }
            counts = next;
        }
        counts
    }

    /// Number of paths from level 1 to level `level`.
    pub fn total_paths(&self, level: usize) -> BigUint {
        self.path_counts(level).into_iter().sum()
    }

    /// Every path from level 1 to level `n`, in lexicographic order of
    /// (vertex, slot) sequences.
    pub fn paths(&self, n: usize) -> Vec<GPath> {
        assert!(n >= 1 && n <= self.num_levels(), "path length {n} out of range");
        let mut out = Vec::new();
        let mut stack = GPath { vertices: Vec::with_capacity(n), slots: Vec::with_capacity(n) };
        for v in 0..self.level_size(1) {
            stack.vertices.push(v);
            self.extend_paths(n, &mut stack, &mut out);
            stack.vertices.pop();
        }
        out
    }

    fn extend_paths(&self, n: usize, cur: &mut GPath, out: &mut Vec<GPath>) {
        let level = cur.vertices.len();
        if level == n {
            out.push(cur.clone());
            return;
        }
        let v = *cur.vertices.last().unwrap();
        for &(t, m) in self.children(level, v) {
            for slot in 0..m {
                cur.vertices.push(t);
                cur.slots.push(slot);
                self.extend_paths(n, cur, out);
                cur.vertices.pop();
                cur.slots.pop();
            }
        }
    }
}

/// Finite path from level 1 to level `len()`: one vertex per level plus,
/// for each step, which of the parallel edges is taken.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GPath {
    vertices: Vec<usize>,
    slots: Vec<u32>,
}

impl GPath {
    /// Path through the given vertex indices, taking the first parallel edge
    /// at every step.
    pub fn new<L: VertexLabel>(graph: &GradedGraph<L>, vertices: Vec<usize>) -> Result<Self> {
        let slots = vec![0; vertices.len().saturating_sub(1)];
        Self::with_slots(graph, vertices, slots)
    }

    pub fn with_slots<L: VertexLabel>(
        graph: &GradedGraph<L>,
        vertices: Vec<usize>,
        slots: Vec<u32>,
    ) -> Result<Self> {
        if vertices.is_empty() || vertices.len() > graph.num_levels() {
            return Err(Error::InvalidPath(format!(
                "path of {} levels in a graph of {}",
                vertices.len(),
                graph.num_levels()
            )));
        }
        if slots.len() + 1 != vertices.len() {
            return Err(Error::InvalidPath("one edge slot per step required".into()));
        }
        if vertices[0] >= graph.level_size(1) {
            return Err(Error::InvalidPath("start vertex out of range".into()));
        }
        for k in 1..vertices.len() {
            let m = graph.multiplicity(k, vertices[k - 1], vertices[k]);
            if slots[k - 1] >= m {
                return Err(Error::InvalidPath(format!(
                    "no edge {} from level {k} to {}",
                    slots[k - 1],
                    k + 1
                )));
            }
        }
        Ok(Self { vertices, slots })
    }

    pub fn from_labels<L: VertexLabel>(graph: &GradedGraph<L>, labels: &[L]) -> Result<Self> {
        let vertices = labels
            .iter()
            .enumerate()
            .map(|(k, l)| {
                graph
                    .vertex(k + 1, l)
                    .ok_or_else(|| Error::InvalidPath(format!("no vertex {} at level {}", l.key(), k + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, vertices)
    }

    /// Number of levels visited.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex index at each level, starting with level 1.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn slots(&self) -> &[u32] {
        &self.slots
    }

    pub fn labels<'g, L: VertexLabel>(&self, graph: &'g GradedGraph<L>) -> Vec<&'g L> {
        self.vertices.iter().enumerate().map(|(k, &v)| graph.label(k + 1, v)).collect()
    }

    pub fn truncate(&self, n: usize) -> GPath {
        assert!(n >= 1 && n <= self.len());
        GPath { vertices: self.vertices[..n].to_vec(), slots: self.slots[..n - 1].to_vec() }
    }

    pub(crate) fn from_parts(vertices: Vec<usize>, slots: Vec<u32>) -> Self {
        Self { vertices, slots }
    }
}

/// Levels `1..=n` with level `k = {1..k}` and every consecutive pair joined.
pub fn w_graph(n: usize) -> Result<GradedGraph<usize>> {
    if n == 0 {
        return Err(Error::Domain("graph needs at least one level".into()));
    }
    let mut b = GradedGraph::builder();
    for k in 1..=n {
        b = b.level((1..=k).collect())?;
    }
    for k in 1..n {
        for a in 0..k {
            for c in 0..=k {
                b.edge(k, a, c, 1)?;
            }
        }
    }
    b.build()
}

/// One vertex per level.
pub fn chain_graph(n: usize) -> Result<GradedGraph<usize>> {
    if n == 0 {
        return Err(Error::Domain("graph needs at least one level".into()));
    }
    let mut b = GradedGraph::builder();
    for k in 1..=n {
        b = b.level(vec![k])?;
    }
    for k in 1..n {
        b.edge(k, 0, 0, 1)?;
    }
    b.build()
}
