//! Upper bounds on the displacement constant
//! `α(G, S) = inf_{‖v‖=1} max_{s∈S} ‖sv − v‖` of the left regular
//! representation, and random-walk return probabilities.
//!
//! Every bound here comes from an explicit finitely supported vector, so it
//! is an upper bound regardless of how good the vector is.

mod form;
mod walk;
mod witness;

use rayon::prelude::*;

use crate::cayley::{common_radius_of_balls, enumerate_ball_with_cap, CayleyBall, DEFAULT_VERTEX_CAP};
use crate::error::{Error, Result};
use crate::hnn::HnnGroup;
use crate::limit::LimitGroup;
use crate::oracle::MarkedGroup;

pub use form::{graph_displacements, smallest_eigenpair, DisplacementForm, EigenPair};
pub use walk::{return_probabilities, return_probability, ReturnProbability};
pub use witness::{displacement, folner_search, pushdown_witness, DisplacementWitness};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub vertex_cap: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tolerance: 1e-10,
            max_iterations: 100_000,
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub radius: usize,
    pub vertices: usize,
    /// Smallest eigenvalue of `Σ_s ‖sv − v‖²` on vectors supported in `B(r)`.
    pub lambda_min: f64,
    pub residual: f64,
    pub iterations: usize,
    /// `sqrt(λ_min)`, since `max_s ≤ sqrt(Σ_s)`.
    pub bound_sqrt: f64,
    /// `max_s ‖sv − v‖` at the minimizer.
    pub bound_refined: f64,
    /// Minimizer `x` indexed by ball vertex; the witness is `v(g) = x(g⁻¹)`.
    pub minimizer: Vec<f64>,
}

/// The restricted form on `ball`, assembled in canonical order so that
/// isomorphic balls give bit-identical results.
pub fn report_for_ball(ball: &CayleyBall, options: &SolverOptions) -> Result<SpectralReport> {
    if ball.radius == 0 {
        return Err(Error::InvalidInput("spectral bounds need radius ≥ 1".into()));
    }
    let order = ball.canonical_order();
    let form = DisplacementForm::new(ball, &order);
    let pair = smallest_eigenpair(&form, options.tolerance, options.max_iterations)?;
    let mut minimizer = vec![0.0; ball.len()];
    for (k, &v) in order.iter().enumerate() {
        minimizer[v] = pair.vector[k];
    }
    let bound_refined = graph_displacements(ball, &minimizer)
        .into_iter()
        .fold(0.0, f64::max);
    Ok(SpectralReport {
        radius: ball.radius,
        vertices: ball.len(),
        lambda_min: pair.value,
        residual: pair.residual,
        iterations: pair.iterations,
        bound_sqrt: pair.value.max(0.0).sqrt(),
        bound_refined,
        minimizer,
    })
}

pub fn alpha_upper_bound<O: MarkedGroup>(oracle: &O, radius: usize) -> Result<SpectralReport> {
    alpha_upper_bound_with(oracle, radius, &SolverOptions::default())
}

pub fn alpha_upper_bound_with<O: MarkedGroup>(
    oracle: &O,
    radius: usize,
    options: &SolverOptions,
) -> Result<SpectralReport> {
    let ball = enumerate_ball_with_cap(oracle, radius, options.vertex_cap)?.graph;
    report_for_ball(&ball, options)
}

/// The spectral report together with its minimizer as an explicit witness,
/// re-evaluated by [`displacement`].
pub fn spectral_witness<O: MarkedGroup>(
    oracle: &O,
    radius: usize,
    options: &SolverOptions,
) -> Result<(SpectralReport, DisplacementWitness<O::Element>)> {
    let eb = enumerate_ball_with_cap(oracle, radius, options.vertex_cap)?;
    let report = report_for_ball(&eb.graph, options)?;
    let support: Vec<(O::Element, f64)> = eb
        .elements
        .iter()
        .zip(&report.minimizer)
        .map(|(g, &c)| (oracle.invert(g), c))
        .collect();
    let witness = displacement(oracle, &support)?;
    Ok((report, witness))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SequenceRow {
    pub index: usize,
    /// Radius of agreement with `Ḡ`, compared up to `r + 1`.
    pub common_radius: Option<usize>,
    pub report: SpectralReport,
    /// `λ_min` is bit-identical to the limit's.
    pub equals_limit: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlphaSequence {
    pub radius: usize,
    pub limit: SpectralReport,
    pub rows: Vec<SequenceRow>,
}

impl AlphaSequence {
    /// The last refined bound is no larger than the first.
    pub fn ends_no_higher(&self) -> bool {
        match (self.rows.first(), self.rows.last()) {
            (Some(a), Some(b)) => b.report.bound_refined <= a.report.bound_refined,
            _ => true,
        }
    }
}

/// Spectral reports for `G` with markings `{t, λ^i(a_j)}`, `i ∈ indices`,
/// next to the report for `Ḡ`.
///
/// Whenever the `(r+1)`-balls of the `i`-th marking and of `Ḡ` agree the two
/// operators coincide, and their `λ_min` must match bit for bit.
pub fn alpha_sequence(
    group: &HnnGroup,
    indices: &[usize],
    radius: usize,
    options: &SolverOptions,
) -> Result<AlphaSequence> {
    let limit = LimitGroup::new(group);
    let limit_ball = enumerate_ball_with_cap(&limit, radius + 1, options.vertex_cap)?.graph;
    let limit_report = report_for_ball(&limit_ball.restrict(radius), options)?;
    let rows = indices
        .par_iter()
        .map(|&i| {
            let marked = group.marking_at(i);
            let ball = enumerate_ball_with_cap(&marked, radius + 1, options.vertex_cap)?.graph;
            let common = common_radius_of_balls(&ball, &limit_ball)?.radius;
            let report = report_for_ball(&ball.restrict(radius), options)?;
            let equals_limit = report.lambda_min.to_bits() == limit_report.lambda_min.to_bits();
            if common.is_some_and(|c| c >= radius + 1) && !equals_limit {
                return Err(Error::SpectralMismatch { index: i });
            }
            Ok(SequenceRow {
                index: i,
                common_radius: common,
                report,
                equals_limit,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlphaSequence {
        radius,
        limit: limit_report,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::enumerate_ball;
    use crate::oracle::{CyclicGroup, FreeGroup};
    use std::f64::consts::PI;

    #[test]
    fn path_closed_form() {
        let z = CyclicGroup::new(0);
        for r in 1..=12 {
            let rep = alpha_upper_bound(&z, r).unwrap();
            let exact = 2.0 * (1.0 - (PI / (2 * r + 2) as f64).cos());
            assert!((rep.lambda_min - exact).abs() < 1e-9, "r={r}");
            assert!(rep.bound_refined <= rep.bound_sqrt + 1e-9);
        }
        let rep = alpha_upper_bound(&z, 1).unwrap();
        assert!((rep.bound_sqrt - (2.0 - 2f64.sqrt()).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn radius_zero_is_rejected() {
        assert!(alpha_upper_bound(&FreeGroup::new(2), 0).is_err());
    }

    #[test]
    fn witness_reproduces_graph_bound() {
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let (rep, w) = spectral_witness(&g, 3, &SolverOptions::default()).unwrap();
        assert!((rep.bound_refined - w.bound).abs() < 1e-12);
        assert!((w.norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn monotone_in_radius() {
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let mut last = f64::INFINITY;
        for r in 1..5 {
            let rep = alpha_upper_bound(&g, r).unwrap();
            assert!(rep.lambda_min <= last + 1e-12);
            last = rep.lambda_min;
        }
    }

    #[test]
    fn free_and_bs_agree_below_girth() {
        // B(2) balls agree, so the radius-1 operators coincide
        let f = enumerate_ball(&FreeGroup::new(2), 1).unwrap();
        let g = enumerate_ball(&HnnGroup::baumslag_solitar(2, 3).unwrap(), 1).unwrap();
        let opts = SolverOptions::default();
        let a = report_for_ball(&f, &opts).unwrap();
        let b = report_for_ball(&g, &opts).unwrap();
        assert_eq!(a.lambda_min.to_bits(), b.lambda_min.to_bits());
    }

    #[test]
    fn sequence_zero_is_plain_bound() {
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let seq = alpha_sequence(&g, &[0, 1], 2, &SolverOptions::default()).unwrap();
        let plain = alpha_upper_bound(&g, 2).unwrap();
        assert_eq!(seq.rows[0].report.lambda_min.to_bits(), plain.lambda_min.to_bits());
        assert_eq!(seq.rows.len(), 2);
    }
}
