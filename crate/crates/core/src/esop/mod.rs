//! ESOP covers and the ternary-tree minimizer. Knows nothing about images
//! or circuits.

mod cover;
mod cube;
mod tree;

pub use cover::EsopCover;
pub use cube::{Cube, Trit, MAX_VARS};
pub use tree::{
    append_all, build_tree, merge_leaves, merge_trees, minimize, minimize_with_stats, rotate, traverse, MinimizeStats,
    TernaryNode, TernaryTree,
};
