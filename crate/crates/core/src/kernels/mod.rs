//! Combinatorial building blocks shared by the solvers.

pub mod blossom;
pub mod cpp;
pub mod euler;
pub mod matching;
pub mod trees;
pub mod tsp;
