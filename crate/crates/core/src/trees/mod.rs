//! Infinite binary trees: regular trees, Büchi tree automata and their
//! closure properties, membership and emptiness through Büchi games, and the
//! strong Choquet game on trees.

mod bta;
pub mod choquet;
mod decide;
pub mod game;
mod tree;

pub use bta::{
    bta_intersection, bta_intersection_all, bta_product, bta_product_with, bta_projection, bta_union, clopen_bta,
    exists_path, singleton_bta, tinf_bta, tree_lift, universal_bta, Bta,
};
pub use decide::{
    bta_empty, bta_member, bta_trim, bta_witness, productive_states, run_annotation, tree_witness, RunStrategy,
};
pub use tree::{
    has_ones_on_every_path, min_depth_for_level, o_level_check, tree_prefix, FiniteTreePrefix, Node, RegularTree,
};
