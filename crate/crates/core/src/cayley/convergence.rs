//! Convergence of `F/N_i → F/N` in the space of marked groups, measured by
//! the radius up to which Cayley balls agree.

use rayon::prelude::*;

use super::ball::enumerate_ball_with_cap;
use super::iso::common_radius_of_balls;
use crate::error::Result;
use crate::hnn::HnnGroup;
use crate::limit::LimitGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub index: usize,
    /// Largest radius at which `G` with marking `{t, λ^i(a_j)}` and `Ḡ`
    /// with marking `{t, a_j}` have isomorphic balls (capped at `R_max`).
    pub radius: Option<usize>,
    pub vertices: usize,
    pub edges: usize,
}

/// `r*(i)` for each `i` in `indices`, comparing against `Ḡ`.
///
/// Rows are returned in the order of `indices`; the `|V|` and `|E|` columns
/// describe the radius-`R_max` ball of the `i`-th marking.
pub fn convergence_profile(
    group: &HnnGroup,
    limit: &LimitGroup,
    indices: &[usize],
    r_max: usize,
    cap: usize,
) -> Result<Vec<ConvergenceRow>> {
    let limit_ball = enumerate_ball_with_cap(limit, r_max, cap)?.graph;
    indices
        .par_iter()
        .map(|&i| {
            let marked = group.marking_at(i);
            let ball = enumerate_ball_with_cap(&marked, r_max, cap)?.graph;
            let common = common_radius_of_balls(&ball, &limit_ball)?;
            Ok(ConvergenceRow {
                index: i,
                radius: common.radius,
                vertices: ball.len(),
                edges: ball.edges.len(),
            })
        })
        .collect()
}
