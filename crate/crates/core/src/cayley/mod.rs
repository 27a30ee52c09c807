//! Cayley balls, rooted local isomorphism, and convergence in the space of
//! marked groups.

mod ball;
mod convergence;
mod dot;
mod iso;

pub use ball::{
    enumerate_ball, enumerate_ball_with_cap, CayleyBall, Edge, ElementBall, DEFAULT_VERTEX_CAP,
};
pub use convergence::{convergence_profile, ConvergenceRow};
pub use dot::export_dot;
pub use iso::{ball_isomorphic, common_radius_of_balls, max_common_radius, CommonRadius};
