//! Dependency graphs, cumulant bounds, Taylor models of `f_{G,k}` and
//! convergence diagnostics along graph sequences.

mod dependency;
mod fmn;
mod sequence;
mod taylor;

pub use dependency::{dependency_graph, DependencyGraph, Node};
pub use fmn::{
    contribution_bound, direction_cumulants, exact_statistic_weights, fmn_bound, ln_fmn_bound, spanning_tree_cumulant_check, DirectionCumulants,
    EdgeIndicator, TreeCheck, MAX_DIRECTION_ORDER,
};
pub use sequence::{sequence_report, Cell, SequenceConfig, SequenceReport, SequenceRow, SkippedRow};
pub use taylor::{
    edge_block_crosscheck, majorant_radius, radius, tail_majorant, taylor_eval, taylor_model, TaylorModel,
    TaylorValue,
};
