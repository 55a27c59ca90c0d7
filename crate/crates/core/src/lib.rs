// SPDX-License-Identifier: Apache-2.0

//! Alphabetic minimax trees.
//!
//! Given weights `w_1, ..., w_n`, an alphabetic minimax tree is an ordered
//! strictly binary tree with `n` leaves minimizing `max_i (w_i + l_i)`,
//! where `l_i` is the depth of the `i`-th leaf. This crate provides
//!
//! * a linear-time solver for integer weights ([`alpha_int_fast`]),
//! * a dynamic level tree supporting `set`, `undo` and `cost` ([`LevelTree`]),
//! * real-weight solvers built on both ([`alpha_real`]),
//! * alphabetic prefix codes built from a sample distribution ([`coder`]),
//! * exhaustive oracles for small inputs.

pub mod bench;
pub mod coder;
pub mod error;
pub mod level_tree;
pub mod minimax;
pub mod parse;
pub mod realweight;
pub mod select;
pub mod union_find;

pub use coder::{build_code, redundancy_bound, CodeBook, CodeReport, Distribution, Smoothing};
pub use error::{Error, Result};
pub use level_tree::{LevelTree, NodeKind, TreeCounters};
pub use minimax::{
    alpha_int_fast, alpha_int_oracle, check_profile, depths_to_tree, tree_cost, tree_cost_real, DepthProfile,
    IntMinimax, OrderedTree,
};
pub use realweight::{
    alpha_real, alpha_real_new, alpha_real_oracle, alpha_real_sorted, choose_strategy, AlgoChoice, Algorithm,
    RealCostResult, SearchStats, WeightSeq,
};
pub use select::{select_kth, SelectStrategy};
pub use union_find::UnionFind;
