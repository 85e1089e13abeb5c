//! Graph algorithms used by the condition checkers.

pub mod disjoint_sets;
pub mod flow_tree;
pub mod maxflow;
pub mod mincut;

pub use disjoint_sets::{connected_components, groups_from_labels, DisjointSets};
pub use flow_tree::{pairwise_min_cuts, PairwiseCuts};
pub use maxflow::{max_flow_min_cut, FlowNetwork, MinCut};
pub use mincut::{global_min_cut, WeightedGraph};
