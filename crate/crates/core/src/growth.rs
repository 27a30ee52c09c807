//! Growth functions `γ(n) = |B(n)|` and Fekete upper bounds on the
//! exponential growth rate.

use crate::cayley::enumerate_ball_with_cap;
use crate::error::{Error, Result};
use crate::oracle::MarkedGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthTable {
    pub marking: Vec<String>,
    /// `gamma[n] = γ(n)` for `n = 0..=n_max`.
    pub gamma: Vec<u64>,
}

impl GrowthTable {
    pub fn n_max(&self) -> usize {
        self.gamma.len() - 1
    }

    /// `γ(n)^{1/n}` for `n ≥ 1`.
    pub fn root(&self, n: usize) -> f64 {
        assert!(n >= 1);
        (self.gamma[n] as f64).powf(1.0 / n as f64)
    }

    /// `min_{1≤k≤n} γ(k)^{1/k}`.
    pub fn fekete_bound(&self, n: usize) -> f64 {
        (1..=n).map(|k| self.root(k)).fold(f64::INFINITY, f64::min)
    }

    /// `γ(n)/γ(n−1)`. Not a certified bound in either direction.
    pub fn heuristic_ratio(&self, n: usize) -> f64 {
        assert!(n >= 1);
        self.gamma[n] as f64 / self.gamma[n - 1] as f64
    }

    /// Checks `γ(m+n) ≤ γ(m)γ(n)` for all `m + n ≤ n_max`.
    pub fn check_submultiplicative(&self) -> Result<()> {
        for m in 1..=self.n_max() {
            for n in 1..=self.n_max() - m {
                if self.gamma[m + n] as u128 > self.gamma[m] as u128 * self.gamma[n] as u128 {
                    return Err(Error::NotSubmultiplicative { m, n });
                }
            }
        }
        Ok(())
    }
}

/// Ball sizes up to `n_max`, with submultiplicativity verified.
pub fn growth_table<O: MarkedGroup>(oracle: &O, n_max: usize, cap: usize) -> Result<GrowthTable> {
    let ball = enumerate_ball_with_cap(oracle, n_max, cap)?.graph;
    let gamma = (0..=n_max).map(|n| ball.count_within(n) as u64).collect();
    let table = GrowthTable {
        marking: oracle.marking().to_vec(),
        gamma,
    };
    table.check_submultiplicative()?;
    Ok(table)
}

/// `min_n γ(n)^{1/n}`, an upper bound on `ω(G, X)` because `γ` is
/// submultiplicative.
pub fn omega_upper(table: &GrowthTable) -> Result<f64> {
    if table.gamma.len() < 2 {
        return Err(Error::InvalidInput("growth table needs n_max ≥ 1".into()));
    }
    Ok(table.fekete_bound(table.n_max()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGrowthRow {
    pub n: usize,
    pub gamma_source: u64,
    pub gamma_quotient: u64,
    pub holds: bool,
}

/// Compares `γ_P(n) ≤ γ_G(n)` for a marking-compatible quotient `G → P`.
pub fn quotient_growth_check<G: MarkedGroup, P: MarkedGroup>(
    source: &G,
    quotient: &P,
    n_max: usize,
    cap: usize,
) -> Result<Vec<QuotientGrowthRow>> {
    if source.rank() != quotient.rank() {
        return Err(Error::IncomparableBalls(format!(
            "marking sizes {} and {}",
            source.rank(),
            quotient.rank()
        )));
    }
    let a = growth_table(source, n_max, cap)?;
    let b = growth_table(quotient, n_max, cap)?;
    Ok((0..=n_max)
        .map(|n| QuotientGrowthRow {
            n,
            gamma_source: a.gamma[n],
            gamma_quotient: b.gamma[n],
            holds: b.gamma[n] <= a.gamma[n],
        })
        .collect())
}
