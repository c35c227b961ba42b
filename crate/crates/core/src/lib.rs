//! δ-tours on continuous graphs: exact validation, exact search at small
//! scale, and per-regime approximation algorithms with lower bounds.

#![allow(clippy::needless_range_loop)]

pub mod coverage;
pub mod discrete;
pub mod graph;
pub mod kernels;
pub mod large_delta;
pub mod lp;
pub mod rational;
pub mod regimes;
pub mod tour;
pub mod fixtures;
pub mod generators;
pub mod io;
