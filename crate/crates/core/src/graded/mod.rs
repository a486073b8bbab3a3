//! Graded graphs, frames, transfers, and the Young graph.

mod export;
mod frame;
mod graph;
mod rule;
mod young;

pub use export::{export_frame, export_graph, read_path_list, write_path_list};
pub use frame::{
    factorial_tree, frame_validate, tree_path_of, tri_path_of, Frame, FrameReport, FrameViolation,
    FACTORIAL_TREE_MAX,
};
pub use graph::{chain_graph, w_graph, GPath, GradedGraph, GradedGraphBuilder, VertexLabel};
pub use rule::{hasse_transfer_rule, transfer_apply, HasseRule, TransferRule, TranslationRule};
pub use young::{
    partitions, plancherel_sample, promotion, promotion_deletion, rsk, standard_tableaux,
    young_graph, young_transfer, Syt, YoungDiagram, YoungLattice,
};
