//! The cut LP whose optimum bounds every 1-tour from below, and vertex cover tours.

pub mod maxflow;
pub mod simplex;
pub mod tour_lp;

pub use tour_lp::{
    cut_edges, enumerate_family, one_tour_lower_bound, separation_oracle, solve_tour_lp, vertex_cover_tour,
    TourLp,
};
