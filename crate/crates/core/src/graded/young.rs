//! Young diagrams, standard tableaux, promotion and RSK, and the Young graph.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::graph::{join_dots, GPath, GradedGraph, VertexLabel};
use super::rule::{hasse_transfer_rule, transfer_apply, HasseRule};
use crate::domain::{SeedSpec, UnitSample};
use crate::error::{Error, Result};
use crate::sampling::sample_unit_prefix;
use crate::scalar::Scalar;

/// Weakly decreasing positive row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YoungDiagram(Vec<usize>);

impl YoungDiagram {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Structure(format!("{parts:?} is not a partition")));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Rows whose last cell can be removed.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&r| r + 1 == self.0.len() || self.0[r + 1] < self.0[r])
            .collect()
    }

    /// Rows (including a new bottom row) that accept one more cell.
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.0.len())
            .filter(|&r| r == 0 || r == self.0.len() || self.0[r - 1] > self.0[r])
            .collect()
    }

    pub fn remove_from_row(&self, r: usize) -> YoungDiagram {
        let mut p = self.0.clone();
        p[r] -= 1;
        if p[r] == 0 {
            p.pop();
        }
        YoungDiagram(p)
    }

    pub fn add_to_row(&self, r: usize) -> YoungDiagram {
        let mut p = self.0.clone();
        if r == p.len() {
            p.push(1);
        } else {
            p[r] += 1;
        }
        YoungDiagram(p)
    }

    /// Number of standard tableaux of this shape, by the hook-length formula.
    pub fn dimension(&self) -> BigUint {
        let n = self.size();
        let conj = self.conjugate();
        let mut hooks = BigUint::one();
        for (r, &len) in self.0.iter().enumerate() {
            for (c, &height) in conj.iter().enumerate().take(len) {
                hooks *= (len - c - 1) + (height - r - 1) + 1;
            }
        }
        let fact: BigUint = (1..=n).map(BigUint::from).product();
        fact / hooks
    }

    pub fn conjugate(&self) -> Vec<usize> {
        let cols = self.0.first().copied().unwrap_or(0);
        (0..cols).map(|c| self.0.iter().filter(|&&l| l > c).count()).collect()
    }
}

impl VertexLabel for YoungDiagram {
    fn key(&self) -> String {
        join_dots(&self.0)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Partitions of `n` in lexicographic order of their parts.
pub fn partitions(n: usize) -> Vec<YoungDiagram> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if rest == 0 {
            out.push(YoungDiagram(cur.clone()));
            return;
        }
        for p in 1..=rest.min(max) {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Standard Young tableau: rows of labels `1..=n` increasing along rows and
/// down columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syt {
    rows: Vec<Vec<usize>>,
}

impl Syt {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = YoungDiagram::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.size();
        let mut seen = vec![false; n];
        for row in &rows {
            for &e in row {
                if e == 0 || e > n || std::mem::replace(&mut seen[e - 1], true) {
                    return Err(Error::Structure(format!("tableau entries must be 1..={n} once each")));
                }
            }
        }
        for (r, row) in rows.iter().enumerate() {
            for c in 0..row.len() {
                if c > 0 && row[c - 1] >= row[c] {
                    return Err(Error::Structure(format!("row {} is not increasing", r + 1)));
                }
                if r > 0 && rows[r - 1][c] >= row[c] {
                    return Err(Error::Structure(format!("column {} is not increasing", c + 1)));
                }
            }
        }
        if n == 0 {
            return Err(Error::Structure("empty tableau".into()));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> YoungDiagram {
        YoungDiagram(self.rows.iter().map(Vec::len).collect())
    }

    /// Shapes of the subtableaux with entries `≤ k`, for `k = 1..=n`.
    pub fn shapes(&self) -> Vec<YoungDiagram> {
        let n = self.size();
        let mut row_of = vec![0; n + 1];
        for (r, row) in self.rows.iter().enumerate() {
            for &e in row {
                row_of[e] = r;
            }
        }
        let mut cur = YoungDiagram(Vec::new());
        (1..=n)
            .map(|e| {
                cur = cur.add_to_row(row_of[e]);
                cur.clone()
            })
            .collect()
    }

    /// Tableau whose subtableau of entries `≤ k` has shape `shapes[k-1]`.
    pub fn from_shapes(shapes: &[YoungDiagram]) -> Result<Self> {
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut prev = YoungDiagram(Vec::new());
        for (k, s) in shapes.iter().enumerate() {
            let grown = (0..s.0.len())
                .filter(|&r| s.0[r] != prev.0.get(r).copied().unwrap_or(0))
                .collect::<Vec<_>>();
            if s.size() != k + 1 || grown.len() != 1 || prev.add_to_row(grown[0]) != *s {
                return Err(Error::InvalidPath(format!("shape {} does not add one cell", s.key())));
            }
            let r = grown[0];
            if r == rows.len() {
                rows.push(Vec::new());
            }
            rows[r].push(k + 1);
            prev = s.clone();
        }
        Self::new(rows)
    }

    /// Entries `≤ k` only.
    pub fn restrict(&self, k: usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = self
            .rows
            .iter()
            .map(|row| row.iter().copied().filter(|&e| e <= k).collect::<Vec<_>>())
            .filter(|row| !row.is_empty())
            .collect();
        Self::new(rows)
    }

    pub fn to_path(&self, graph: &GradedGraph<YoungDiagram>) -> Result<GPath> {
        GPath::from_labels(graph, &self.shapes())
    }

    pub fn from_path(graph: &GradedGraph<YoungDiagram>, p: &GPath) -> Result<Self> {
        let shapes: Vec<YoungDiagram> = p.labels(graph).into_iter().cloned().collect();
        Self::from_shapes(&shapes)
    }
}

impl fmt::Display for Syt {
    /// Rows separated by `/`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join("/"))
    }
}

impl std::str::FromStr for Syt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .trim()
            .split('/')
            .map(crate::domain::parse_csv_ints)
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

/// Every standard tableau of shape `shape`, sorted.
pub fn standard_tableaux(shape: &YoungDiagram) -> Vec<Syt> {
    fn go(shape: &YoungDiagram, out: &mut Vec<Vec<YoungDiagram>>, suffix: &mut Vec<YoungDiagram>) {
        if shape.size() == 0 {
            let mut chain = suffix.clone();
            chain.reverse();
            out.push(chain);
            return;
        }
        for r in shape.removable_rows() {
            suffix.push(shape.clone());
            go(&shape.remove_from_row(r), out, suffix);
            suffix.pop();
        }
    }
    let mut chains = Vec::new();
    go(shape, &mut chains, &mut Vec::new());
    let mut out: Vec<Syt> = chains
        .iter()
        .map(|c| Syt::from_shapes(c).expect("chains of added cells are tableaux"))
        .collect();
    out.sort();
    out
}

/// Removes entry 1 and slides the hole outward, always pulling in the
/// smaller of the right and lower neighbours. Returns the rows with the
/// final hole removed, and that hole's row.
fn slide_out_min(t: &Syt) -> (Vec<Vec<usize>>, usize) {
    let mut rows = t.rows.clone();
    let (mut r, mut c) = (0, 0);
    loop {
        let right = rows[r].get(c + 1).copied();
        let below = rows.get(r + 1).and_then(|row| row.get(c)).copied();
        match (right, below) {
            (None, None) => break,
            (Some(x), Some(y)) if y < x => {
                rows[r][c] = y;
                r += 1;
            }
            (Some(x), _) => {
                rows[r][c] = x;
                c += 1;
            }
            (None, Some(y)) => {
                rows[r][c] = y;
                r += 1;
            }
        }
    }
    rows[r].pop();
    if rows[r].is_empty() {
        rows.pop();
    }
    (rows, r)
}

/// Schützenberger promotion: delete 1, slide, decrement all entries, and put
/// `n` into the vacated cell. Preserves the shape.
pub fn promotion(t: &Syt) -> Syt {
    let n = t.size();
    let (mut rows, hole_row) = slide_out_min(t);
    for row in rows.iter_mut() {
        for e in row.iter_mut() {
            *e -= 1;
        }
    }
    if hole_row == rows.len() {
        rows.push(Vec::new());
    }
    rows[hole_row].push(n);
    Syt { rows }
}

/// Tableau with `n - 1` cells left by promotion once `n` is dropped.
pub fn promotion_deletion(t: &Syt) -> Result<Syt> {
    if t.size() < 2 {
        return Err(Error::Length("deletion needs at least two cells".into()));
    }
    promotion(t).restrict(t.size() - 1)
}

/// Row insertion of `x_1..x_n`: insertion tableau `P` and recording tableau `Q`.
pub fn rsk<T: Scalar>(x: &UnitSample<T>) -> (Vec<Vec<T>>, Syt) {
    let mut p: Vec<Vec<T>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (k, v) in x.values().iter().enumerate() {
        let mut v = v.clone();
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![v]);
                q.push(vec![k + 1]);
                break;
            }
            let pos = p[r].partition_point(|e| *e < v);
            if pos == p[r].len() {
                p[r].push(v);
                q[r].push(k + 1);
                break;
            }
            v = std::mem::replace(&mut p[r][pos], v);
            r += 1;
        }
    }
    (p, Syt { rows: q })
}

/// Recording tableau of a uniform prefix: a Plancherel-distributed tableau.
pub fn plancherel_sample(n: usize, seed: SeedSpec) -> Result<Syt> {
    let x: UnitSample<f64> = sample_unit_prefix(n, seed)?;
    Ok(rsk(&x).1)
}

/// Levels `1..=n`, level `k` the partitions of `k`, edges adding one cell.
pub fn young_graph(n: usize) -> Result<GradedGraph<YoungDiagram>> {
    if n == 0 {
        return Err(Error::Domain("graph needs at least one level".into()));
    }
    let mut b = GradedGraph::builder();
    let levels: Vec<Vec<YoungDiagram>> = (1..=n).map(partitions).collect();
    for level in &levels {
        b = b.level(level.clone())?;
    }
    for (k, level) in levels.iter().enumerate().skip(1) {
        for lam in level {
            for r in lam.removable_rows() {
                b.edge_by_label(k, &lam.remove_from_row(r), lam, 1)?;
            }
        }
    }
    b.build()
}

/// Young graph truncated at `n` levels together with its Hasse rule.
pub struct YoungLattice {
    pub graph: GradedGraph<YoungDiagram>,
    pub rule: HasseRule,
}

impl YoungLattice {
    pub fn new(n: usize) -> Result<Self> {
        let graph = young_graph(n)?;
        let rule = hasse_transfer_rule(&graph)?;
        Ok(Self { graph, rule })
    }
}

/// The Hasse-rule transfer on a path of the Young graph.
pub fn young_transfer(lattice: &YoungLattice, p: &GPath) -> Result<GPath> {
    transfer_apply(&lattice.graph, &lattice.rule, p)
}
