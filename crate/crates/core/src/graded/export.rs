//! DOT rendering and path-list text.

use std::fmt::Write;

use super::frame::Frame;
use super::graph::{GPath, GradedGraph, VertexLabel};
use crate::error::{Error, Result};

fn node_id<L: VertexLabel>(g: &GradedGraph<L>, level: usize, v: usize) -> String {
    format!("\"{}:{}\"", level, g.label(level, v).key())
}

fn write_nodes_and_edges<L: VertexLabel>(g: &GradedGraph<L>, out: &mut String) {
    for k in 1..=g.num_levels() {
        let _ = writeln!(out, "  subgraph level_{k} {{");
        let _ = writeln!(out, "    rank=same;");
        for v in 0..g.level_size(k) {
            let _ = writeln!(out, "    {} [label=\"{}\"];", node_id(g, k, v), g.label(k, v).key());
        }
        let _ = writeln!(out, "  }}");
    }
    for k in 1..g.num_levels() {
        for v in 0..g.level_size(k) {
            for &(c, m) in g.children(k, v) {
                for _ in 0..m {
                    let _ = writeln!(out, "  {} -> {};", node_id(g, k, v), node_id(g, k + 1, c));
                }
            }
        }
    }
}

/// DOT text with one node per vertex and one edge line per (parallel) edge.
pub fn export_graph<L: VertexLabel>(g: &GradedGraph<L>) -> String {
    let mut out = String::from("digraph graded {\n  rankdir=BT;\n  node [shape=box];\n");
    write_nodes_and_edges(g, &mut out);
    out.push_str("}\n");
    out
}

/// Like [`export_graph`], plus dashed translation edges `v -> ω(v)`.
pub fn export_frame<L: VertexLabel>(f: &Frame<L>) -> String {
    let g = f.graph();
    let mut out = String::from("digraph frame {\n  rankdir=BT;\n  node [shape=box];\n");
    write_nodes_and_edges(g, &mut out);
    for k in 2..=g.num_levels() {
        for v in 0..g.level_size(k) {
            if let Some(w) = f.omega(k, v) {
                let _ = writeln!(
                    out,
                    "  {} -> {} [style=dashed, color=red, constraint=false];",
                    node_id(g, k, v),
                    node_id(g, k - 1, w)
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

/// One path per line, vertex keys separated by commas.
pub fn write_path_list<L: VertexLabel>(g: &GradedGraph<L>, paths: &[GPath]) -> String {
    let mut out = String::new();
    for p in paths {
        let keys: Vec<String> = p.labels(g).into_iter().map(VertexLabel::key).collect();
        out.push_str(&keys.join(","));
        out.push('\n');
    }
    out
}

/// Inverse of [`write_path_list`] for simple graphs.
pub fn read_path_list<L: VertexLabel>(g: &GradedGraph<L>, text: &str) -> Result<Vec<GPath>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let vertices = line
                .split(',')
                .enumerate()
                .map(|(k, key)| {
                    let level = k + 1;
                    if level > g.num_levels() {
                        return Err(Error::Parse(format!("path longer than the graph: {line}")));
                    }
                    (0..g.level_size(level))
                        .find(|&v| g.label(level, v).key() == key.trim())
                        .ok_or_else(|| Error::Parse(format!("no vertex {key:?} at level {level}")))
                })
                .collect::<Result<Vec<_>>>()?;
            GPath::new(g, vertices)
        })
        .collect()
}
